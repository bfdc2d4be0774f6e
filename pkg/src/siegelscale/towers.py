"""Extended-range reals for doubly-exponential constants.

A TowerReal stores sign, level and a float magnitude:

  level 0:  |x| = mag                  (ordinary float range)
  level 1:  |x| = exp(mag)             (mag of either sign)
  level 2:  ln|x| = sgn(mag)*exp(|mag|)  (doubly large or doubly small)

Multiplication and powers act on the log layer; addition collapses to the
dominant operand once magnitudes differ by more than DOMINANCE_GAP in the
shared log layer, and the result's ``exact`` flag records that collapse.
"""

from __future__ import annotations

import math

__all__ = ["TowerReal", "DOMINANCE_GAP"]

DOMINANCE_GAP = 40.0  # e^40 ~ 2.4e17 exceeds double precision resolution
_LEVEL0_LN_MAX = 700.0  # stay level 0 while |ln x| <= this
_LN_FLOAT_MAX = math.log(1.6e308)


class TowerReal:
    __slots__ = ("sign", "level", "mag", "exact")

    def __init__(self, value: float | int = 0.0):
        self.exact = True
        v = float(value)
        if v == 0.0:
            self.sign, self.level, self.mag = 0, 0, 0.0
            return
        if math.isinf(v) or math.isnan(v):
            raise ValueError(f"cannot represent {v!r}")
        self.sign = 1 if v > 0 else -1
        self.level, self.mag = 0, abs(v)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def _raw(cls, sign: int, level: int, mag: float, exact: bool) -> "TowerReal":
        t = cls.__new__(cls)
        t.sign, t.level, t.mag, t.exact = sign, level, mag, exact
        return t

    @classmethod
    def zero(cls, exact: bool = True) -> "TowerReal":
        return cls._raw(0, 0, 0.0, exact)

    @classmethod
    def from_ln(cls, ln_value, sign: int = 1, exact: bool = True) -> "TowerReal":
        """Value sign * exp(ln_value); ln_value is a float or a TowerReal."""
        if sign == 0:
            return cls.zero(exact)
        if isinstance(ln_value, TowerReal):
            ln_value = ln_value._as_exponent()
            if isinstance(ln_value, TowerReal):  # still level >= 1 after demotion
                if ln_value.level >= 2:
                    raise OverflowError("tower level 3 not representable")
                # ln|x| = s * exp(m) beyond float range -> level 2
                exact = exact and ln_value.exact
                return cls._raw(sign, 2, ln_value.sign * ln_value.mag, exact)
        lf = float(ln_value)
        if abs(lf) <= _LEVEL0_LN_MAX:
            return cls._raw(sign, 0, math.exp(lf), exact)
        return cls._raw(sign, 1, lf, exact)

    def _as_exponent(self):
        """Return self as a float when possible, else self (for exponent use)."""
        if self.level == 0:
            return self.sign * self.mag
        if self.level == 1 and abs(self.mag) <= _LN_FLOAT_MAX:
            return self.sign * math.exp(self.mag)
        return self

    # -- log layer ------------------------------------------------------------

    def lnabs(self) -> "TowerReal":
        """ln|x| as a TowerReal of level <= 1 (requires x != 0)."""
        if self.sign == 0:
            raise ValueError("ln of zero")
        if self.level == 0:
            return TowerReal._raw(*_signed_float(math.log(self.mag)), self.exact)
        if self.level == 1:
            return TowerReal._raw(*_signed_float(self.mag), self.exact)
        # level 2: ln|x| = sgn(mag) * exp(|mag|)
        s = 1 if self.mag > 0 else -1
        return TowerReal.from_ln(abs(self.mag), sign=s, exact=self.exact)

    def ln(self) -> "TowerReal":
        if self.sign <= 0:
            raise ValueError("ln requires a positive value")
        return self.lnabs()

    def exp(self) -> "TowerReal":
        return TowerReal.from_ln(self._as_exponent(), sign=1, exact=self.exact)

    # -- arithmetic -------------------------------------------------------------

    def __neg__(self):
        return TowerReal._raw(-self.sign, self.level, self.mag, self.exact)

    def __abs__(self):
        return TowerReal._raw(abs(self.sign), self.level, self.mag, self.exact)

    @staticmethod
    def _coerce(x) -> "TowerReal":
        return x if isinstance(x, TowerReal) else TowerReal(x)

    def __add__(self, other):
        other = self._coerce(other)
        if self.sign == 0:
            return TowerReal._raw(other.sign, other.level, other.mag,
                                  other.exact and self.exact)
        if other.sign == 0:
            return TowerReal._raw(self.sign, self.level, self.mag,
                                  self.exact and other.exact)
        if self.level == 0 and other.level == 0:
            v = self.sign * self.mag + other.sign * other.mag
            if 0.0 < abs(v) < 1.6e308:
                t = TowerReal(v)
                t.exact = self.exact and other.exact
                return t
            if v == 0.0:
                return TowerReal.zero(self.exact and other.exact)
        return _log_layer_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __mul__(self, other):
        other = self._coerce(other)
        s = self.sign * other.sign
        if s == 0:
            return TowerReal.zero(self.exact and other.exact)
        if self.level == 0 and other.level == 0:
            v = self.mag * other.mag
            if 0.0 < v < 1.6e308:
                t = TowerReal._raw(s, 0, v, self.exact and other.exact)
                return t
        ln_r = self.lnabs() + other.lnabs()
        return TowerReal.from_ln(ln_r, sign=s,
                                 exact=self.exact and other.exact and ln_r.exact)

    __rmul__ = __mul__

    def reciprocal(self) -> "TowerReal":
        if self.sign == 0:
            raise ZeroDivisionError("tower reciprocal of zero")
        return TowerReal.from_ln(-self.lnabs(), sign=self.sign, exact=self.exact)

    def __truediv__(self, other):
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, p):
        if self.sign == 0:
            if isinstance(p, TowerReal):
                p = float(p.sign)
            if p <= 0:
                raise ZeroDivisionError("0 ** nonpositive power")
            return TowerReal.zero(self.exact)
        if self.sign < 0:
            if isinstance(p, int) or (isinstance(p, float) and p.is_integer()):
                sign = -1 if int(p) % 2 else 1
            else:
                raise ValueError("negative base with non-integer power")
        else:
            sign = 1
        p_t = self._coerce(p)
        if p_t.sign == 0:
            return TowerReal._raw(sign, 0, 1.0, self.exact)
        ln_r = self.lnabs() * p_t
        return TowerReal.from_ln(ln_r, sign=sign,
                                 exact=self.exact and p_t.exact and ln_r.exact)

    # -- order ----------------------------------------------------------------

    def _cmp(self, other) -> int:
        other = self._coerce(other)
        if self.sign != other.sign:
            return 1 if self.sign > other.sign else -1
        if self.sign == 0:
            return 0
        c = _cmp_lnabs(self.lnabs(), other.lnabs())
        return c * self.sign

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if not isinstance(other, (TowerReal, int, float)):
            return NotImplemented
        return self._cmp(other) == 0

    def __hash__(self):
        return hash((self.sign, self.level, self.mag))

    # -- conversion -------------------------------------------------------------

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        if self.level == 0:
            return self.sign * self.mag
        if self.level == 1:
            if self.mag <= _LN_FLOAT_MAX:
                return self.sign * math.exp(self.mag)
            raise OverflowError("tower value exceeds float range")
        if self.mag < 0:
            return self.sign * 0.0
        raise OverflowError("tower value exceeds float range")

    @property
    def is_float_representable(self) -> bool:
        return self.level == 0 or (self.level == 1 and self.mag <= _LN_FLOAT_MAX)

    def log10_magnitude(self) -> float:
        """log10|x| as a float when it fits, else +/-inf (level-2 overflow)."""
        if self.sign == 0:
            return -math.inf
        ln = self.lnabs()
        if ln.level == 0:
            return ln.sign * ln.mag / math.log(10)
        return math.inf if ln.sign > 0 else -math.inf

    def to_json(self) -> dict:
        return {"sign": self.sign, "level": self.level, "mag": self.mag}

    @classmethod
    def from_json(cls, d: dict) -> "TowerReal":
        return cls._raw(int(d["sign"]), int(d["level"]), float(d["mag"]), True)

    def readable(self) -> str:
        """Order-of-magnitude rendering, e.g. '-10^(10^(8.1e+07))'."""
        if self.sign == 0:
            return "0"
        pre = "-" if self.sign < 0 else ""
        if self.level == 0:
            return f"{pre}{self.mag:.6g}"
        if self.level == 1:
            return f"{pre}10^({self.mag / math.log(10):.6g})"
        inner = (self.mag if self.mag > 0 else -self.mag) - math.log(math.log(10))
        inner /= math.log(10)
        s = "" if self.mag > 0 else "-"
        return f"{pre}10^({s}10^({inner:.9g}))"

    def __repr__(self):
        flag = "" if self.exact else ", inexact"
        return f"TowerReal({self.readable()}{flag})"


def _signed_float(v: float) -> tuple[int, int, float]:
    if v == 0.0:
        return 0, 0, 0.0
    return (1 if v > 0 else -1), 0, abs(v)


def _cmp_lnabs(a: TowerReal, b: TowerReal) -> int:
    """Compare two log-layer values (each of level <= 1, either sign)."""
    av = a.sign * a.mag if a.level == 0 else None
    bv = b.sign * b.mag if b.level == 0 else None
    if av is not None and bv is not None:
        return (av > bv) - (av < bv)
    if av is not None:  # b at level 1 dominates any level-0 float
        return -b.sign
    if bv is not None:
        return a.sign
    if a.sign != b.sign:
        return 1 if a.sign > b.sign else -1
    c = (a.mag > b.mag) - (a.mag < b.mag)
    return c * a.sign


def _log_layer_add(a: TowerReal, b: TowerReal) -> TowerReal:
    la, lb = a.lnabs(), b.lnabs()
    c = _cmp_lnabs(la, lb)
    if c == 0:
        if a.sign != b.sign:
            return TowerReal.zero(a.exact and b.exact)
        ln_r = la + TowerReal(math.log(2.0))
        return TowerReal.from_ln(ln_r, sign=a.sign,
                                 exact=a.exact and b.exact and ln_r.exact)
    hi, lo = (a, b) if c > 0 else (b, a)
    lh, ll = hi.lnabs(), lo.lnabs()
    if lh.level == 0 and ll.level == 0:
        gap = lh.sign * lh.mag - ll.sign * ll.mag
        if gap <= DOMINANCE_GAP:
            t = math.exp(-gap)
            adj = math.log1p(t) if hi.sign == lo.sign else math.log1p(-t)
            if math.isinf(adj):  # full cancellation at float resolution
                return TowerReal.zero(False)
            return TowerReal.from_ln(lh.sign * lh.mag + adj, sign=hi.sign,
                                     exact=hi.exact and lo.exact)
    # magnitudes differ beyond native resolution: dominant operand wins
    return TowerReal._raw(hi.sign, hi.level, hi.mag, False)
