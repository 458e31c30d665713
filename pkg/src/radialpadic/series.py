"""Closed forms for sums of the shape sum_{g=lo}^{hi} g^k * r^g with r > 0.

These sums are what every shell decomposition in this package reduces to: a
radial power-log term evaluated on shell g contributes c * g^k * r^g with
ratio r = p^(beta + n) (or p^beta for plain shell sums).  Finite ranges are
summed directly; infinite tails use the Stirling-number closed form of the
polylogarithm-like series T_t(x) = sum_{j>=0} j^t x^j, which is a rational
function of x.  Exactness is preserved whenever r is rational.

A tail toward -inf converges iff r > 1; toward +inf iff r < 1.  r == 1 with a
nonzero coefficient always diverges.  Divergent results are returned as
signed-infinite ExtendedValues, never raised.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from math import comb

from .numeric import ExtendedValue, Number, fpow, is_exact

#: ranges longer than this are summed by differencing two closed-form tails
_DIRECT_SUM_LIMIT = 4096


@lru_cache(maxsize=None)
def stirling2(t: int, i: int) -> int:
    """Stirling number of the second kind S(t, i)."""
    if t == i:
        return 1
    if i == 0 or i > t:
        return 0
    return i * stirling2(t - 1, i) + stirling2(t - 1, i - 1)


def _rpow(r: Number, e: int) -> Number:
    """r**e for integer e, exact for Fractions, saturating for floats."""
    if is_exact(r):
        return Fraction(r) ** e
    return fpow(float(r), float(e))


def t_series(t: int, x: Number) -> Number:
    """T_t(x) = sum_{j>=0} j^t x^j for 0 <= x < 1, exact when x is."""
    one = Fraction(1) if is_exact(x) else 1.0
    total = one * 0
    for i in range(t + 1):
        s2 = stirling2(t, i)
        if s2 == 0:
            continue
        total += s2 * math.factorial(i) * _rpow(x, i) / _rpow(one - x, i + 1)
    return total


def tail_to_plus_inf(r: Number, k: int, lo: int) -> Number:
    """sum_{g=lo}^{+inf} g^k r^g, requires 0 < r < 1."""
    if not 0 < r < 1:
        raise ValueError("tail to +inf needs 0 < r < 1")
    # substitute g = lo + j and expand (lo + j)^k binomially
    scale = _rpow(r, lo)
    acc = 0
    for t in range(k + 1):
        acc += comb(k, t) * (lo ** (k - t) if k != t else 1) * t_series(t, r)
    return scale * acc


def tail_to_minus_inf(r: Number, k: int, hi: int) -> Number:
    """sum_{g=-inf}^{hi} g^k r^g, requires r > 1."""
    if not r > 1:
        raise ValueError("tail to -inf needs r > 1")
    inv = Fraction(1) / Fraction(r) if is_exact(r) else 1.0 / float(r)
    # substitute g -> -g: sum_{g'>=-hi} (-g')^k inv^g'
    sign = -1 if k % 2 else 1
    return sign * tail_to_plus_inf(inv, k, -hi)


def _direct(r: Number, k: int, lo: int, hi: int) -> Number:
    vals = [(g ** k if k else 1) * _rpow(r, g) for g in range(lo, hi + 1)]
    if any(isinstance(v, float) for v in vals):
        return math.fsum(float(v) for v in vals)
    return sum(vals)


def power_log_sum(r: Number, k: int, lo: int | None, hi: int | None) -> ExtendedValue:
    """sum_{g=lo}^{hi} g^k r^g as an ExtendedValue; endpoints None mean +-inf.

    Divergent sums come back as signed infinities; the sign is that of the
    dominant end (g^k is eventually positive toward +inf and has sign (-1)^k
    toward -inf).  A doubly-infinite divergent sum with k odd has no single
    sign and raises ArithmeticError.
    """
    if r <= 0:
        raise ValueError("ratio must be positive")
    if lo is not None and hi is not None:
        if lo > hi:
            return ExtendedValue.finite(0)
        if hi - lo <= _DIRECT_SUM_LIMIT:
            return ExtendedValue.finite(_direct(r, k, lo, hi))
        if r < 1:
            return ExtendedValue.finite(
                tail_to_plus_inf(r, k, lo) - tail_to_plus_inf(r, k, hi + 1)
            )
        if r > 1:
            return ExtendedValue.finite(
                tail_to_minus_inf(r, k, hi) - tail_to_minus_inf(r, k, lo - 1)
            )
        # r == 1: Faulhaber via direct chunking is pointless; sum of g^k
        return ExtendedValue.finite(sum(g ** k if k else 1 for g in range(lo, hi + 1)))
    if lo is None and hi is None:
        if k % 2 == 0:
            return ExtendedValue.infinite(+1)
        raise ArithmeticError("doubly infinite sum with odd log power has no signed limit")
    if lo is None:
        if r > 1:
            return ExtendedValue.finite(tail_to_minus_inf(r, k, hi))
        return ExtendedValue.infinite(+1 if k % 2 == 0 else -1)
    if r < 1:
        return ExtendedValue.finite(tail_to_plus_inf(r, k, lo))
    return ExtendedValue.infinite(+1)
