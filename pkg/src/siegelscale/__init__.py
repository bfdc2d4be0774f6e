"""siegelscale: scaling ratios of quadratic Siegel disks.

Exact continued-fraction arithmetic for quadratic-irrational rotation
numbers, the distortion special functions and extended-range constants
behind explicit scaling-ratio bounds, a high-precision orbit engine for
the boundary geometry, and the Blaschke circle model with its cross-ratio
inequality.
"""

from .contfrac import (
    Convergent,
    QuadraticIrrational,
    Surd,
    parse_rotation_number,
    tail_growth_floor,
    tail_growth_rate,
    tail_product,
)
from .towers import TowerReal
from .specfun import (
    agm,
    circular_distortion_bound,
    ellip_k,
    ellip_k_prime,
    mu,
    mu_inv,
    phi_distortion,
    quasisymmetry_modulus_bound,
)
from .bounds import (
    BoundsReport,
    ConstantsLedger,
    EnvelopeConstants,
    constants_ledger,
    cylinder_modulus,
    max_sector_angle,
    period_envelope_constants,
    qc_angle_lower_bound,
    qs_interval_bounds,
    rengel_lower_bound,
    scaling_ratio_bounds,
    scaling_ratio_window,
    select_case,
    triangle_criterion,
)
from .dynamics import (
    AngleReport,
    ReturnSequence,
    ScalingEstimate,
    StripReport,
    backward_returns,
    converged_scaling,
    empirical_qs_constant,
    iterate_returns,
    return_angles,
    returns_to_csv,
    rotation_control_returns,
    scaling_sequence,
    strip_heights,
    verify_precision,
)
from .blaschke import (
    CircleLift,
    RigidLift,
    chi_modulus,
    commensurability_check,
    cross_ratio,
    crossratio_product_bound,
    intersection_number,
    rotation_number,
    sample_allowable_configuration,
    solve_t,
    xratio_inequality_check,
)

__version__ = "0.1.0"
