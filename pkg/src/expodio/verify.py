"""Exact candidate-solution verification.

``verify`` decides, equation by equation, whether the coordinate sum
sum_j q_j alpha^(x_j) - rhs vanishes exactly in Q(alpha).  Exponent entries
are arbitrary-precision integers, and the cost scales with their bit length,
not their magnitude:

* root-of-unity bases reduce every exponent modulo the order of alpha;
* for other bases the equation's terms are collected into an integer sparse
  polynomial in alpha and split wherever consecutive exponents are separated
  by more than a certified threshold -- wide-apart groups of terms can only
  sum to zero if each group vanishes on its own, so each group is shifted to
  exponent zero and evaluated directly.

``verify_report`` materializes the per-equation residuals instead (useful as
a diagnostic at moderate exponent sizes; residual coordinates grow with
alpha^max|x|).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import field_pow
from .bounds import kappa
from .errors import ParseError
from .model import ExpSystem
from .rounding import DEFAULT_PRECISION, ln_up, log2_up


@dataclass(frozen=True)
class SolutionVector:
    """Candidate integer assignment; entry j is the value of x_(j+1) (or of
    the auxiliary x_0 at position 0 for homogenized systems)."""

    entries: tuple

    @classmethod
    def coerce(cls, obj) -> "SolutionVector":
        if isinstance(obj, SolutionVector):
            return obj
        return cls(tuple(int(x) for x in obj))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def to_json(self) -> str:
        return json.dumps({"x": [str(x) for x in self.entries]}) + "\n"


def parse_solution(text: str) -> SolutionVector:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("x"), list):
        raise ParseError('solution must be an object {"x": [...]}')
    try:
        return SolutionVector(tuple(int(t) for t in doc["x"]))
    except (TypeError, ValueError):
        raise ParseError("solution entries must be integers") from None


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

# Evaluate directly whenever the exponent spread is at most this; the split
# threshold is only worth computing beyond it.
_DIRECT_SPREAD = 1 << 12


def verify(system: ExpSystem, candidate) -> bool:
    """True iff the candidate solves every equation exactly."""
    xs = SolutionVector.coerce(candidate).entries
    if len(xs) != system.num_vars:
        raise ValueError("candidate length does not match variable count")
    return all(_equation_holds(eq, xs) for eq in system.equations)


def verify_report(system: ExpSystem, candidate) -> list:
    """Per-equation residuals sum_j q_j alpha^(x_j) - rhs as field elements;
    the candidate is a solution iff all residuals are zero."""
    xs = SolutionVector.coerce(candidate).entries
    if len(xs) != system.num_vars:
        raise ValueError("candidate length does not match variable count")
    residuals = []
    for eq in system.equations:
        field = eq.field()
        alpha = field.alpha()
        total = -eq.rhs
        for c, x in zip(eq.coeffs, xs):
            if not c.is_zero():
                total = total + c * field_pow(alpha, x)
        residuals.append(total)
    return residuals


def _equation_holds(eq, xs) -> bool:
    field = eq.field()
    terms = [(c, x) for c, x in zip(eq.coeffs, xs) if not c.is_zero()]
    if not eq.rhs.is_zero():
        terms.append((-eq.rhs, 0))
    if not terms:
        return True

    order = field.rou_order
    if order is not None:
        alpha = field.alpha()
        total = field.zero()
        for c, x in terms:
            total = total + c * field_pow(alpha, x % order)
        return total.is_zero()

    # Collect into an integer sparse polynomial in alpha: exponent -> coeff.
    scale = math.lcm(*(x.denominator for c, _ in terms for x in c.coords))
    mono: dict = {}
    for c, x in terms:
        for h, r in enumerate(c.coords):
            v = r * scale
            if v:
                e = x + h
                w = mono.get(e, 0) + v.numerator
                if w:
                    mono[e] = w
                else:
                    del mono[e]
    if not mono:
        return True
    exps = sorted(mono)
    if len(exps) == 1:
        return False
    spread = exps[-1] - exps[0]
    if spread <= _DIRECT_SPREAD:
        return _group_vanishes(field, mono, exps)

    gap = _split_gap(field.degree, len(exps), max(abs(v) for v in mono.values()))
    group = [exps[0]]
    for e in exps[1:]:
        if e - group[-1] > gap:
            if not _group_vanishes(field, mono, group):
                return False
            group = [e]
        else:
            group.append(e)
    return _group_vanishes(field, mono, group)


def _group_vanishes(field, mono, exps) -> bool:
    base = exps[0]
    alpha = field.alpha()
    total = field.zero()
    for e in exps:
        total = total + field.from_int(mono[e]) * field_pow(alpha, e - base)
    return total.is_zero()


def _split_gap(d: int, num_monomials: int, height: int) -> Fraction:
    """Exponent separation beyond which a sparse integer polynomial can
    vanish at alpha only if both sides of the split vanish (alpha not a root
    of unity).  Rounded up, which only makes splits more conservative."""
    if d == 1:
        return log2_up(num_monomials - 1) + log2_up(height)
    prec = DEFAULT_PRECISION
    return (ln_up(num_monomials - 1, prec) + ln_up(height, prec)) / kappa(d, prec)
