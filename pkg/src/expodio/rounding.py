"""Directed-rounded logarithm endpoints, frozen into exact rationals.

Every certified bound in this package is built from natural logarithms of
integers or positive rationals.  Those are the only inexact quantities
anywhere in the pipeline, so they get explicit one-sided treatment here: the
mpmath value (correct to within a couple of ulps at the working precision) is
widened by a precision-dependent enclosure factor and a fixed multiplicative
safety margin, then converted to an exact Fraction.  All downstream
arithmetic (sums, products, quotients, ceilings) happens in Q and is exact.

Two consequences the rest of the package relies on:

* an ``*_up`` value is >= the true logarithm and an ``*_dn`` value is <= it;
* raising the working precision strictly shrinks the enclosure factor, so a
  recomputation at higher precision never moves an endpoint outward.

Arguments that are exact powers of the relevant base short-circuit to exact
integers, so quantities like log2(32) never touch floating point at all.
"""

from __future__ import annotations

import mpmath
from fractions import Fraction

DEFAULT_PRECISION = 53

# Fixed safety margin; dominates mpmath's representation error by ~5 orders
# of magnitude at 53-bit precision.
_SAFETY_UP = Fraction(10**9 + 1, 10**9)
_SAFETY_DN = Fraction(10**9 - 1, 10**9)


def _to_fraction(x) -> Fraction:
    p, q = mpmath.libmp.to_rational(x._mpf_)
    return Fraction(int(p), int(q))  # plain ints even under the gmpy backend


def _ln_raw(value: Fraction, precision: int) -> Fraction:
    with mpmath.workprec(precision):
        y = mpmath.ln(mpmath.fdiv(value.numerator, value.denominator))
        return _to_fraction(y)


def _enclosure(precision: int) -> Fraction:
    # 64 ulps of slack per endpoint; mpmath's ln is good to 1-2 ulps.
    return Fraction(1, 2 ** (precision - 6))


def ln_up(value, precision: int = DEFAULT_PRECISION) -> Fraction:
    """Exact rational >= ln(value), for value >= 1."""
    value = Fraction(value)
    if value < 1:
        raise ValueError("ln_up requires value >= 1")
    if value == 1:
        return Fraction(0)
    raw = _ln_raw(value, precision)
    return raw * (1 + _enclosure(precision)) * _SAFETY_UP


def ln_dn(value, precision: int = DEFAULT_PRECISION) -> Fraction:
    """Exact rational <= ln(value), for value >= 1."""
    value = Fraction(value)
    if value < 1:
        raise ValueError("ln_dn requires value >= 1")
    if value == 1:
        return Fraction(0)
    raw = _ln_raw(value, precision)
    return raw * (1 - _enclosure(precision)) * _SAFETY_DN


def log2_up(n: int, precision: int = DEFAULT_PRECISION) -> Fraction:
    """Exact rational >= log2(n) for an integer n >= 1; exact on powers of 2."""
    if n < 1:
        raise ValueError("log2_up requires n >= 1")
    if n & (n - 1) == 0:
        return Fraction(n.bit_length() - 1)
    return ln_up(n, precision) / ln_dn(2, precision)


_POWER_SCAN_CAP = 4096


def log_ratio_up(value, ratio, precision: int = DEFAULT_PRECISION) -> Fraction:
    """Exact rational >= log base ``ratio`` of ``value`` (both > 1, value >= 1).

    Detects exact integer powers (value == ratio**j) so that quantities like
    log base 2 of 8 come out as exact integers independent of precision.
    """
    value = Fraction(value)
    ratio = Fraction(ratio)
    if ratio <= 1:
        raise ValueError("log_ratio_up requires ratio > 1")
    if value < 1:
        raise ValueError("log_ratio_up requires value >= 1")
    if value == 1:
        return Fraction(0)
    acc = Fraction(1)
    for j in range(1, _POWER_SCAN_CAP + 1):
        acc *= ratio
        if acc == value:
            return Fraction(j)
        if acc > value:
            break
    return ln_up(value, precision) / ln_dn(ratio, precision)
