"""Bounds on the moduli of the roots of an integer polynomial."""
from __future__ import annotations

from fractions import Fraction

from ..errors import ZeroConstantTerm


def _trim(coeffs) -> list:
    """Coefficients as integers, highest degree first, leading zeros removed."""
    c = [int(a) for a in coeffs]
    while c and c[0] == 0:
        c.pop(0)
    if not c:
        raise ValueError("the zero polynomial has no root bounds")
    return c


def root_magnitude_bounds(coeffs) -> tuple:
    """(upper, lower) for a polynomial given highest-degree coefficient first.

    For a nonzero integer coefficient a_n at the top, a root x with |x| > 1
    satisfies |a_n| |x|^n <= sum_{k<n} |a_k| |x|^k <= (sum_{k<n} |a_k|) |x|^(n-1),
    so |x| <= sum_{k<n} |a_k| / |a_n| <= sum |a_k|, and that sum is at least
    1, which covers roots with |x| <= 1.  The reversed
    polynomial has the roots 1/x, which gives the lower bound for nonzero
    roots.  Both bounds are returned as exact Fractions.
    """
    c = _trim(coeffs)
    upper = Fraction(sum(abs(a) for a in c))
    if c[-1] == 0:
        raise ZeroConstantTerm("constant term is zero, so 0 is a root and no lower bound exists")
    lower = Fraction(1, sum(abs(a) for a in c))
    return upper, lower
