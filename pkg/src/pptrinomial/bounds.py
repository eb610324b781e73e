"""Certified threshold checks for the surface point-count argument.

Everything here is exact integer / rational arithmetic.  The applicability
gate is q > 2(r+1) * delta^2.  The decisive inequality is

    q^r - (delta-1)(delta-2) q^(r-1/2) - 5 delta^(13/3) q^(r-1) > threshold

at q = 2^m.  The irrational pieces (2^(1/2) when m(2r-1) is odd, and
delta^(13/3) whenever delta is not a cube) are bracketed by dyadic
rationals certified through integer square/cube roots, and the bracket is
tightened until the comparison is decided -- no floating point anywhere.
The comparison always terminates because the left-hand side can never
equal the integer threshold: for even m(2r-1) the remaining cube-root
term is irrational, and for odd exponents the sqrt(2) term is.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

__all__ = [
    "BoundQuery", "lang_weil_applicable", "main_bound_holds", "minimal_m",
    "bound_enclosure", "icbrt", "lower_bound_coefficient",
]


@dataclass(frozen=True)
class BoundQuery:
    """Inputs of the threshold computation.

    r: variety dimension (2 for the surface argument)
    delta: degree bound on the component (12 here)
    intersection_budget: points allowed on the three excluded planes (36)
    m: exponent of q = 2^m
    """

    r: int = 2
    delta: int = 12
    intersection_budget: int = 36
    m: int = 1

    def __post_init__(self):
        if self.r < 1 or self.delta < 1 or self.m < 1:
            raise ValueError("r, delta and m must all be >= 1")


def lang_weil_applicable(bq: BoundQuery) -> bool:
    """Exact check of the applicability condition q > 2(r+1) delta^2."""
    return (1 << bq.m) > 2 * (bq.r + 1) * bq.delta ** 2


def lower_bound_coefficient(delta: int) -> int:
    """(delta-1)(delta-2), the q^(r-1/2) coefficient of the lower bound."""
    return (delta - 1) * (delta - 2)


def icbrt(n: int) -> int:
    """Integer cube root: largest c with c^3 <= n."""
    if n < 0:
        raise ValueError("negative argument")
    if n == 0:
        return 0
    c = 1 << ((n.bit_length() + 2) // 3)
    while True:
        nc = (2 * c + n // (c * c)) // 3
        if nc >= c:
            break
        c = nc
    while c * c * c > n:
        c -= 1
    return c


def _cbrt_enclosure(n: int, scale_bits: int) -> tuple[Fraction, Fraction]:
    """lo <= n^(1/3) <= hi with hi - lo <= 2^-scale_bits, certified by cubes."""
    s = 1 << scale_bits
    k = icbrt(n * s ** 3)
    return Fraction(k, s), Fraction(k + 1, s)


def _sqrt2_pow_enclosure(t: int, scale_bits: int) -> tuple[Fraction, Fraction]:
    """Enclosure of 2^(t/2) for integer t >= 0."""
    if t % 2 == 0:
        v = Fraction(1 << (t // 2))
        return v, v
    base = 1 << ((t - 1) // 2)
    s = 1 << scale_bits
    k = isqrt(2 * s * s)
    return base * Fraction(k, s), base * Fraction(k + 1, s)


def bound_enclosure(bq: BoundQuery, scale_bits: int = 16) -> tuple[Fraction, Fraction]:
    """Certified enclosure of q^r - (d-1)(d-2) q^(r-1/2) - 5 d^(13/3) q^(r-1)."""
    q = 1 << bq.m
    main = Fraction(q ** bq.r)
    coeff = lower_bound_coefficient(bq.delta)
    half_lo, half_hi = _sqrt2_pow_enclosure(bq.m * (2 * bq.r - 1), scale_bits)
    d13_lo, d13_hi = _cbrt_enclosure(bq.delta ** 13, scale_bits)
    qe = q ** (bq.r - 1)
    lo = main - coeff * half_hi - 5 * d13_hi * qe
    hi = main - coeff * half_lo - 5 * d13_lo * qe
    return lo, hi


def main_bound_holds(m: int, r: int = 2, delta: int = 12,
                     threshold: int = 36) -> bool:
    """Exact verdict on the threshold inequality at q = 2^m."""
    bq = BoundQuery(r=r, delta=delta, intersection_budget=threshold, m=m)
    scale = 16
    while scale <= 4096:
        lo, hi = bound_enclosure(bq, scale)
        if lo > threshold:
            return True
        if hi <= threshold:
            return False
        scale *= 2
    raise RuntimeError("enclosure failed to separate; the comparison should "
                       "always be decidable")  # pragma: no cover


def minimal_m(r: int = 2, delta: int = 12, threshold: int = 36,
              limit: int = 10000) -> int:
    """Least m with main_bound_holds(m)."""
    for m in range(1, limit + 1):
        if main_bound_holds(m, r=r, delta=delta, threshold=threshold):
            return m
    raise RuntimeError("no exponent up to %d satisfies the bound" % limit)
