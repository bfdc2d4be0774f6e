"""Exact continued-fraction arithmetic."""

import math
import random

import mpmath as mp
import pytest

from siegelscale.contfrac import (
    QuadraticIrrational,
    Surd,
    parse_rotation_number,
    tail_growth_floor,
    tail_growth_rate,
    tail_product,
)


GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def test_parser_roundtrip():
    for text, pre, per in ((";1", (), (1,)), ("2;1", (2,), (1,)),
                           ("1,2;3,4", (1, 2), (3, 4))):
        cf = parse_rotation_number(text)
        assert cf.preperiod == pre and cf.period == per


def test_parser_rejects_bad_input():
    for text in ("", "1", ";", ";0", "0;1", ";-2", "1.5;2", ";1,0"):
        with pytest.raises(ValueError):
            parse_rotation_number(text)


def test_empty_period_rejected():
    with pytest.raises(ValueError):
        QuadraticIrrational((), ())


def test_golden_value():
    g = parse_rotation_number(";1")
    v = g.value()
    assert v == Surd(-1, 1, 2, 5)
    assert abs(float(v) - GOLDEN) < 1e-15


def test_two_bar_value():
    v = parse_rotation_number(";2").value()
    assert v == Surd(-1, 1, 1, 2)


def test_preperiodic_value():
    # [2,1,1,1,...] = 1/(2 + golden tail)
    v = parse_rotation_number("2;1").value()
    golden = Surd(-1, 1, 2, 5)
    assert v == (golden + 2).inverse()


def test_value_matches_truncated_float():
    for text in (";1", ";2", "2;1", "1,3;2,5", ";1,2"):
        cf = parse_rotation_number(text)
        # slowest convergence is all-ones: error ~ phi^(-2*depth) ~ 1e-33
        with mp.workprec(260):
            x = mp.mpf(0)
            for i in reversed(range(1, 81)):
                x = 1 / (cf.quotient(i) + x)
            assert abs(float(cf.value().to_mpf(260) - x)) < 1e-25


def test_convergents_golden():
    g = parse_rotation_number(";1")
    pq = [(c.p, c.q) for c in g.convergents(5)]
    assert pq == [(1, 1), (1, 2), (2, 3), (3, 5), (5, 8)]


def test_convergents_two_bar():
    pq = [(c.p, c.q) for c in parse_rotation_number(";2").convergents(3)]
    assert pq == [(1, 2), (2, 5), (5, 12)]


def test_first_convergent_is_1_over_a1():
    for text in (";3", "4;1", "7;2,5"):
        cf = parse_rotation_number(text)
        c = cf.convergents(1)[0]
        assert (c.p, c.q) == (1, cf.quotient(1))


def test_convergent_invariants():
    rng = random.Random(1)
    for _ in range(20):
        pre = tuple(rng.randint(1, 6) for _ in range(rng.randint(0, 3)))
        per = tuple(rng.randint(1, 6) for _ in range(rng.randint(1, 4)))
        cf = QuadraticIrrational(pre, per)
        convs = cf.convergents(12)
        theta = cf.value()
        errs = [abs(theta * c.q - c.p) for c in convs]
        for i in range(len(errs) - 1):
            assert errs[i + 1] < errs[i]
        for i, c in enumerate(convs):
            assert math.gcd(c.p, c.q) == 1
            # p_1/q_1 = 1/a_1 >= theta, and the sign alternates from there
            sign = (Surd.from_rational(c.p) / c.q - theta).sign()
            assert sign == (1 if (i + 1) % 2 == 1 else -1)
        qs = [c.q for c in convs]
        assert all(qs[i + 1] > qs[i] for i in range(1, len(qs) - 1))


def test_tail_product_golden_and_two_bar():
    g = parse_rotation_number(";1")
    assert tail_product(g) == g.value()
    t = parse_rotation_number(";2")
    assert tail_product(t) == t.value()


def test_tail_product_period_12():
    cf = parse_rotation_number(";1,2")
    t1, t2 = cf.tail(1), cf.tail(2)
    assert t1 == Surd(-1, 1, 1, 3)           # [1,2,1,2,...] = sqrt(3) - 1
    assert t2 == (t1 + 2).inverse()          # [2,1,2,...] = 1/(2 + t1)
    assert tail_product(cf) == t1 * t2


def test_tail_product_float_crosscheck():
    # against the product of tails of the truncated fraction at depth >= 60
    for text in (";1,2", "2;3,1", ";4"):
        cf = parse_rotation_number(text)
        with mp.workprec(300):
            depth = 60 + cf.N + cf.s
            tails = []
            for start in range(cf.N + 1, cf.N + cf.s + 1):
                x = mp.mpf(0)
                for i in reversed(range(start, start + depth)):
                    x = 1 / (cf.quotient(i) + x)
                tails.append(x)
            prod = mp.mpf(1)
            for t in tails:
                prod *= t
            assert abs(float(tail_product(cf).to_mpf(300) - prod)) < 1e-12


def test_growth_rate_closed_forms():
    assert tail_growth_floor(1) == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-15)
    assert tail_growth_floor(2) == pytest.approx((math.sqrt(12) + 2) / 4, abs=1e-15)
    g = parse_rotation_number(";1")
    assert tail_growth_rate(g) == pytest.approx(2 / (math.sqrt(5) - 1), abs=1e-14)
    floors = [tail_growth_floor(b) for b in range(1, 12)]
    assert all(floors[i + 1] < floors[i] for i in range(len(floors) - 1))


def test_growth_rate_dominates_floor():
    rng = random.Random(2)
    for _ in range(25):
        pre = tuple(rng.randint(1, 5) for _ in range(rng.randint(0, 2)))
        per = tuple(rng.randint(1, 5) for _ in range(rng.randint(1, 4)))
        cf = QuadraticIrrational(pre, per)
        assert tail_growth_rate(cf) >= tail_growth_floor(cf.max_quotient) - 1e-12


def test_closest_return_identity_exact():
    # q_{n+s} theta - p_{n+s} = (-1)^s alpha (q_n theta - p_n) for n >= N
    for text in (";1", ";2", "2;1", ";1,2", "1;2,3"):
        cf = parse_rotation_number(text)
        alpha = tail_product(cf)
        sign = -1 if cf.s % 2 else 1
        for n in range(max(cf.N, 1), max(cf.N, 1) + 4):
            lhs = cf.signed_remainder(n + cf.s)
            rhs = alpha * cf.signed_remainder(n) * sign
            assert lhs == rhs


def test_surd_field_operations():
    rng = random.Random(3)
    for _ in range(50):
        a = Surd(rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(1, 9), 7)
        b = Surd(rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(1, 9), 7)
        fa, fb = float(a), float(b)
        assert float(a + b) == pytest.approx(fa + fb, rel=1e-12, abs=1e-12)
        assert float(a - b) == pytest.approx(fa - fb, rel=1e-12, abs=1e-12)
        assert float(a * b) == pytest.approx(fa * fb, rel=1e-12, abs=1e-12)
        if not b.is_zero():
            assert float(a / b) == pytest.approx(fa / fb, rel=1e-10, abs=1e-10)
            assert a / b * b == a
        assert (a < b) == (fa < fb) or abs(fa - fb) < 1e-12


def test_surd_normalization():
    assert Surd(2, 0, 4, 5) == Surd(1, 0, 2, 0)
    assert Surd(0, 1, 1, 8) == Surd(0, 2, 1, 2)      # sqrt(8) = 2 sqrt(2)
    assert Surd(0, 1, 1, 9) == Surd(3, 0, 1, 0)      # sqrt(9) = 3
    assert Surd(1, 1, -2, 5).c > 0
    with pytest.raises(ZeroDivisionError):
        Surd(1, 1, 0, 5)
    with pytest.raises(ValueError):
        Surd(1, 1, 1, 5) + Surd(1, 1, 1, 7)


def test_surd_conjugate_norm():
    s = Surd(3, 2, 5, 11)
    n = s * s.conjugate()
    assert n.is_rational()
    assert float(n) == pytest.approx((9 - 4 * 11) / 25, abs=1e-12)
