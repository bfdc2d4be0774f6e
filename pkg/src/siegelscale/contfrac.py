"""Exact arithmetic for preperiodic continued fractions.

A rotation number theta in (0,1) with an eventually periodic continued
fraction [a_1, a_2, ...] is a quadratic irrational.  Everything derived
from it here -- the value, the tails theta_i = [a_i, a_{i+1}, ...], the
product of the periodic tails, and the signed remainders q_n*theta - p_n
-- is computed exactly in the real quadratic field Q(sqrt(D)).
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import NamedTuple

import mpmath as mp

__all__ = [
    "Surd",
    "QuadraticIrrational",
    "Convergent",
    "parse_rotation_number",
    "tail_product",
    "tail_growth_rate",
    "tail_growth_floor",
]


_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def _squarefree_split(d: int) -> tuple[int, int]:
    """Return (k, d0) with d = k^2 * d0 and d0 free of small square factors."""
    if d <= 0:
        raise ValueError("radicand must be positive")
    r = isqrt(d)
    if r * r == d:
        return r, 1
    k = 1
    for p in _SMALL_PRIMES:
        p2 = p * p
        while d % p2 == 0:
            d //= p2
            k *= p
    return k, d


class Surd:
    """Exact element (a + b*sqrt(d))/c of a real quadratic field.

    a, b, c are integers with c > 0 and gcd(a, b, c) = 1; d is a positive
    non-square integer kept with no small square factors.  Rational values
    carry b = 0 and d = 0.  Arithmetic is closed within a fixed field.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int, c: int, d: int):
        if c == 0:
            raise ZeroDivisionError("surd denominator is zero")
        if b != 0:
            k, d0 = _squarefree_split(d)
            if d0 == 1:
                a, b, d = a + b * k, 0, 0
            else:
                b, d = b * k, d0
        else:
            d = 0
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(abs(a), abs(b)), c)
        if g > 1:
            a, b, c = a // g, b // g, c // g
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def from_rational(cls, q, den: int = 1) -> "Surd":
        if isinstance(q, Fraction):
            return cls(q.numerator, 0, q.denominator * den, 0)
        return cls(int(q), 0, den, 0)

    def _coerce(self, other) -> "Surd":
        if isinstance(other, Surd):
            return other
        if isinstance(other, (int, Fraction)):
            return Surd.from_rational(other)
        return NotImplemented

    def _common_d(self, other: "Surd") -> int:
        if self.d == other.d:
            return self.d
        if self.b == 0:
            return other.d
        if other.b == 0:
            return self.d
        raise ValueError(f"incompatible radicands {self.d} and {other.d}")

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._common_d(other)
        return Surd(
            self.a * other.c + other.a * self.c,
            self.b * other.c + other.b * self.c,
            self.c * other.c,
            d,
        )

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.c, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._common_d(other)
        a = self.a * other.a + self.b * other.b * d
        b = self.a * other.b + self.b * other.a
        return Surd(a, b, self.c * other.c, d)

    __rmul__ = __mul__

    def inverse(self) -> "Surd":
        # c / (a + b sqrt(d)) = c (a - b sqrt(d)) / (a^2 - b^2 d)
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("surd is zero")
        return Surd(self.c * self.a, -self.c * self.b, norm, self.d)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def conjugate(self) -> "Surd":
        return Surd(self.a, -self.b, self.c, self.d)

    # -- order and conversion -----------------------------------------------

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 d
        lhs, rhs = a * a, b * b * self.d
        if a > 0:  # b < 0
            return 1 if lhs > rhs else (-1 if lhs < rhs else 0)
        return 1 if rhs > lhs else (-1 if rhs < lhs else 0)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.d))

    def __lt__(self, other):
        other = self._coerce(other)
        return (self - other).sign() < 0

    def __le__(self, other):
        other = self._coerce(other)
        return (self - other).sign() <= 0

    def __gt__(self, other):
        other = self._coerce(other)
        return (self - other).sign() > 0

    def __ge__(self, other):
        other = self._coerce(other)
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def to_mpf(self, prec: int = 113) -> mp.mpf:
        with mp.workprec(prec + 16):
            val = (self.a + self.b * mp.sqrt(self.d)) / self.c
        return val

    def __float__(self) -> float:
        return float(self.to_mpf(80))

    def __repr__(self):
        if self.b == 0:
            return f"Surd({self.a}/{self.c})"
        return f"Surd(({self.a} + {self.b}*sqrt({self.d}))/{self.c})"


class Convergent(NamedTuple):
    n: int
    p: int
    q: int


@dataclass(frozen=True)
class QuadraticIrrational:
    """Rotation number with continued fraction preperiod + period.

    ``preperiod`` may be empty; ``period`` must not be.  All partial
    quotients are >= 1, so the value lies in (0, 1).
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")
        for a in (*self.preperiod, *self.period):
            if not isinstance(a, int) or a < 1:
                raise ValueError(f"partial quotients must be integers >= 1, got {a!r}")

    # -- structure ------------------------------------------------------------

    @property
    def s(self) -> int:
        """Period length."""
        return len(self.period)

    @property
    def N(self) -> int:
        """Preperiod length."""
        return len(self.preperiod)

    @property
    def max_quotient(self) -> int:
        return max(max(self.period), max(self.preperiod, default=1))

    def quotient(self, i: int) -> int:
        """Partial quotient a_i, 1-indexed, continued periodically."""
        if i < 1:
            raise IndexError("quotients are 1-indexed")
        if i <= self.N:
            return self.preperiod[i - 1]
        return self.period[(i - self.N - 1) % self.s]

    def __str__(self):
        pre = ",".join(map(str, self.preperiod))
        per = ",".join(map(str, self.period))
        return f"{pre};{per}"

    # -- exact values -----------------------------------------------------------

    def tail(self, i: int) -> Surd:
        """Exact value of the tail [a_i, a_{i+1}, ...]."""
        if i < 1:
            raise IndexError("tails are 1-indexed")
        if i > self.N:
            i = self.N + 1 + (i - self.N - 1) % self.s
        return _tails(self)[i - 1]

    def value(self) -> Surd:
        """Exact value of the full fraction, in (0, 1)."""
        return _tails(self)[0]

    def convergents(self, n_max: int) -> list[Convergent]:
        """Best rational approximants p_n/q_n for n = 1..n_max."""
        if n_max < 1:
            raise ValueError("n_max must be >= 1")
        out = []
        p_prev, q_prev = 1, 0  # formal (p_0, q_0) = 1/0 seed
        p, q = 0, 1
        for n in range(1, n_max + 1):
            a = self.quotient(n)
            p, p_prev = a * p + p_prev, p
            q, q_prev = a * q + q_prev, q
            out.append(Convergent(n, p, q))
        return out

    def return_times(self, n_max: int) -> list[int]:
        """Denominators q_1..q_{n_max} (the closest-return times)."""
        return [c.q for c in self.convergents(n_max)]

    def signed_remainder(self, n: int) -> Surd:
        """Exact q_n*theta - p_n; sign alternates with n, |.| decreasing."""
        c = self.convergents(n)[-1]
        return self.value() * c.q - c.p

    def to_mpf(self, prec: int) -> mp.mpf:
        return self.value().to_mpf(prec)


@functools.lru_cache(maxsize=256)
def _tails(cf: QuadraticIrrational) -> tuple[Surd, ...]:
    """Tails theta_1..theta_{N+s}; theta_{N+1} solves the period quadratic."""
    m00, m01, m10, m11 = 1, 0, 0, 1
    for a in cf.period:
        # compose on the right with y -> 1/(a + y), matrix [[0,1],[1,a]]
        m00, m01, m10, m11 = m01, m00 + a * m01, m11, m10 + a * m11
    # x = (m00 x + m01)/(m10 x + m11)  =>  m10 x^2 + (m11 - m00) x - m01 = 0
    bq, cq = m11 - m00, -m01
    disc = bq * bq - 4 * m10 * cq
    root = Surd(-bq, 1, 2 * m10, disc)
    if not (Surd.from_rational(0) < root < Surd.from_rational(1)):
        root = Surd(-bq, -1, 2 * m10, disc)
    tails_periodic = [root]
    for a in cf.period[:-1]:
        nxt = tails_periodic[-1].inverse() - a
        tails_periodic.append(nxt)
    tails = tails_periodic[:]
    for a in reversed(cf.preperiod):
        tails.insert(0, (tails[0] + a).inverse())
    return tuple(tails)


def tail_product(cf: QuadraticIrrational) -> Surd:
    """Exact product of the s periodic tails; the per-period rotation scale."""
    prod = Surd.from_rational(1)
    for j in range(cf.s):
        prod = prod * cf.tail(cf.N + 1 + j)
    return prod


def tail_growth_rate(cf: QuadraticIrrational) -> float:
    """(tail product)^(-1/s) > 1: per-quotient growth of return times."""
    alpha = tail_product(cf).to_mpf(113)
    return float(mp.power(alpha, mp.mpf(-1) / cf.s))


def tail_growth_floor(B: int) -> float:
    """Least possible growth rate when all partial quotients are <= B.

    Closed form (sqrt(B^2 + 4B) + B) / (2B), the reciprocal of the value of
    the alternating fraction [1, B, 1, B, ...]; decreasing in B.
    """
    if B < 1:
        raise ValueError("B must be >= 1")
    return (math.sqrt(B * B + 4 * B) + B) / (2 * B)


_CF_RE = re.compile(r"^\s*([0-9,\s]*);([0-9,\s]+)\s*$")


def parse_rotation_number(text: str) -> QuadraticIrrational:
    """Parse "preperiod;period" notation, e.g. "2;1" or ";1" (golden mean)."""
    m = _CF_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse rotation number {text!r}; expected 'pre;per'")

    def ints(part: str) -> tuple[int, ...]:
        part = part.strip()
        if not part:
            return ()
        try:
            vals = tuple(int(tok) for tok in part.split(","))
        except ValueError as exc:
            raise ValueError(f"bad integer in {text!r}") from exc
        return vals

    pre, per = ints(m.group(1)), ints(m.group(2))
    if not per:
        raise ValueError(f"empty period in {text!r}")
    return QuadraticIrrational(pre, per)
