"""Certified solution bounds.

Everything here emits integers that are provably on the safe side of the
true quantity: separation constants are rounded up, the decoupling rate
``kappa`` is rounded down, and every transcendental endpoint comes from the
directed-rounding helpers, so recomputing at higher precision can only
tighten a bound.  Soundness of the final search box: whenever the system has
any integer solution, it has one inside [0, box_limit]^k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import IsRootOfUnity, ValidationError
from .model import ExpEquation, ExpSystem
from .rounding import DEFAULT_PRECISION, ln_dn, ln_up, log2_up, log_ratio_up

# ---------------------------------------------------------------------------
# Decoupling constants
# ---------------------------------------------------------------------------


def kappa(d: int, precision: int = DEFAULT_PRECISION) -> Fraction:
    """Rounded-down decoupling rate for a degree-d base: ln 2 when d = 1,
    2 / (d * ln(3d)**3) for d >= 2.  Quotients by kappa are overestimates."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    if d == 1:
        return ln_dn(2, precision)
    return Fraction(2) / (d * ln_up(3 * d, precision) ** 3)


def c_constant(field, s: int, precision: int = DEFAULT_PRECISION) -> int:
    """Least separation of exponent groups guaranteeing that a sum of s
    powers of alpha determines its exponents uniquely:
    ceil(3 (ln 2 + 2 ln s) / kappa(d)), rounded toward larger values.

    For d = 1 the quotient collapses to 3 + 6 log2(s) exactly, so instances
    with s a power of two get the exact integer.
    """
    if field.rou_order is not None:
        raise IsRootOfUnity("c_constant requires a base that is not a root of unity")
    if s < 1:
        raise ValueError("s must be >= 1")
    d = field.degree
    if d == 1:
        value = 3 + 6 * log2_up(s, precision)
    else:
        value = 3 * (ln_up(2, precision) + 2 * ln_up(s, precision)) / kappa(d, precision)
    return math.ceil(value)


# ---------------------------------------------------------------------------
# Per-equation bounds
# ---------------------------------------------------------------------------


def _require_bound_input(eq: ExpEquation):
    field = eq.field()
    if not eq.is_homogeneous():
        raise ValueError("bound requires a homogeneous equation")
    for c in eq.coeffs:
        if any(x.denominator != 1 for x in c.coords):
            raise ValueError("bound requires integer coefficient coordinates")
    if field.rou_order is not None:
        raise IsRootOfUnity("bound requires a base that is not a root of unity")
    return field


def gap_bound(eq: ExpEquation, precision: int = DEFAULT_PRECISION) -> int:
    """Upper bound on the least exponent separation beyond which any split of
    a solution's indices separates into independently vanishing groups:

        d + (ln k + ln d + sum ln(|r| + 1)) / kappa(d)

    over all integer coordinates r of the equation's coefficients.  For d = 1
    the 1/kappa factor is exactly 1/ln 2, so the formula is evaluated in
    exact base-2 logarithms.
    """
    field = _require_bound_input(eq)
    d = field.degree
    k = len(eq.coeffs)
    if d == 1:
        total = log2_up(k, precision)
        for c in eq.coeffs:
            total += log2_up(abs(c.coords[0].numerator) + 1, precision)
        return math.ceil(1 + total)
    total = ln_up(k, precision) + ln_up(d, precision)
    for c in eq.coeffs:
        for x in c.coords:
            total += ln_up(abs(x.numerator) + 1, precision)
    return math.ceil(d + total / kappa(d, precision))


def mspn_bound_equation(eq: ExpEquation, precision: int = DEFAULT_PRECISION) -> int:
    """Upper bound on the spread (max - min) of exponents inside any
    minimal vanishing group of any solution of the equation.

    Rational bases get the sharp per-coefficient bound
    ceil(sum |log_|alpha|(|q_j| + 1)|); other bases fall back to
    (k - 1) * gap_bound.
    """
    field = _require_bound_input(eq)
    if field.degree > 1:
        return (len(eq.coeffs) - 1) * gap_bound(eq, precision)
    alpha = -field.monic_tail[0]
    p, q = abs(alpha.numerator), alpha.denominator
    ratio = Fraction(max(p, q), min(p, q))
    total = Fraction(0)
    for c in eq.coeffs:
        total += log_ratio_up(abs(c.coords[0].numerator) + 1, ratio, precision)
    return math.ceil(total)


# ---------------------------------------------------------------------------
# System-level box
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    """Certified bounds for one homogeneous integer-coordinate system.

    Entries of the per-equation lists are 0 for root-of-unity equations,
    which do not contribute to the span part of the box.
    """

    per_equation_gap: tuple
    per_equation_mspn: tuple
    system_mspn: int
    modulus: int  # lcm of root-of-unity orders; 1 if there are none
    box_limit: int

    def to_json_dict(self) -> dict:
        return {
            "per_equation_gap": [str(g) for g in self.per_equation_gap],
            "per_equation_mspn": [str(m) for m in self.per_equation_mspn],
            "system_mspn": str(self.system_mspn),
            "N": str(self.modulus),
            "box_limit": str(self.box_limit),
        }


def system_box(system: ExpSystem, precision: int = DEFAULT_PRECISION) -> BoundReport:
    """Search box for a homogeneous integer-coordinate system.

    Equations split into the root-of-unity part (contributing the modulus N,
    the lcm of the orders) and the rest (contributing t * k * max per-equation
    span bound).  If a solution exists, one lies in [0, N + span]^k.
    """
    if not system.is_homogeneous():
        raise ValidationError("not-homogeneous")
    if not system.has_integer_coords():
        raise ValidationError("non-integer-coordinates")
    gaps = []
    mspns = []
    orders = []
    for eq in system.equations:
        order = system.fields[eq.base_index].rou_order
        if order is not None:
            orders.append(order)
            gaps.append(0)
            mspns.append(0)
        else:
            gaps.append(gap_bound(eq, precision))
            mspns.append(mspn_bound_equation(eq, precision))
    modulus = math.lcm(*orders) if orders else 1
    t = len(system.equations) - len(orders)
    if t:
        system_mspn = t * system.num_vars * max(
            m
            for eq, m in zip(system.equations, mspns)
            if system.fields[eq.base_index].rou_order is None
        )
    else:
        system_mspn = 0
    return BoundReport(
        per_equation_gap=tuple(gaps),
        per_equation_mspn=tuple(mspns),
        system_mspn=system_mspn,
        modulus=modulus,
        box_limit=modulus + system_mspn,
    )
