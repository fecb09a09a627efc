"""Instance representation: systems of equations with algebraic bases and
integer exponent unknowns, their JSON wire format, size accounting,
denominator clearing, and homogenization.

The instance document is a JSON object

    {
      "vars": k,
      "bases": [ { "min_poly": [c0, c1, ..., cd] }, ... ],
      "equations": [ { "base": i,
                       "coeffs": [ [ "a/b", ... d_i entries ], ... k entries ],
                       "rhs": [ "a/b", ... d_i entries ] }, ... ]
    }

with rationals written "a/b" or "a" (lowest terms, positive denominators on
output) and min_poly entries as JSON integers or decimal strings.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import FieldElement, IntPolynomial, NumberField, field_reduce
from .errors import ParseError, ValidationError

# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExpEquation:
    """One row: sum_j coeffs[j] * alpha^(x_(j+1)) = rhs, over the base at
    ``base_index`` in the owning system's field list."""

    base_index: int
    coeffs: tuple
    rhs: FieldElement

    def field(self) -> NumberField:
        return self.rhs.field

    def is_homogeneous(self) -> bool:
        return self.rhs.is_zero()


@dataclass(frozen=True)
class ExpSystem:
    fields: tuple
    equations: tuple
    num_vars: int

    def is_homogeneous(self) -> bool:
        return all(eq.rhs.is_zero() for eq in self.equations)

    def has_integer_coords(self) -> bool:
        for eq in self.equations:
            for c in eq.coeffs + (eq.rhs,):
                if any(x.denominator != 1 for x in c.coords):
                    return False
        return True


@dataclass(frozen=True)
class HomogenizedSystem:
    """Result of homogenization.  When the source was already homogeneous no
    auxiliary variable is added and ``inner`` is the source itself."""

    inner: ExpSystem
    origin: ExpSystem
    has_aux: bool

    def dehomogenize(self, candidate: Sequence[int]) -> tuple:
        entries = tuple(candidate)
        if not self.has_aux:
            return entries
        x0 = entries[0]
        return tuple(x - x0 for x in entries[1:])


# ---------------------------------------------------------------------------
# Construction and validation
# ---------------------------------------------------------------------------


def make_system(fields, equations, num_vars: int) -> ExpSystem:
    """Build an ExpSystem, enforcing its invariants."""
    system = ExpSystem(tuple(fields), tuple(equations), num_vars)
    _validate(system)
    return system


def _validate(system: ExpSystem):
    if system.num_vars < 1:
        raise ValidationError("no-variables")
    for eq in system.equations:
        if not 0 <= eq.base_index < len(system.fields):
            raise ParseError("equation base index out of range")
        field = system.fields[eq.base_index]
        if len(eq.coeffs) != system.num_vars:
            raise ValidationError("coefficient-length mismatch")
        for c in eq.coeffs + (eq.rhs,):
            if c.field != field or len(c.coords) != field.degree:
                raise ValidationError("coefficient-length mismatch")
    for j in range(system.num_vars):
        if not any(not eq.coeffs[j].is_zero() for eq in system.equations):
            raise ValidationError(f"all-zero-column {j + 1}")


_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_INT_RE = re.compile(r"^[+-]?\d+$")


def _parse_rational(tok) -> Fraction:
    if isinstance(tok, int) and not isinstance(tok, bool):
        return Fraction(tok)
    if isinstance(tok, str) and _RATIONAL_RE.match(tok):
        try:
            return Fraction(tok)
        except ZeroDivisionError:
            raise ValidationError("zero-denominator") from None
    raise ParseError(f"malformed rational: {tok!r}")


def _parse_int(tok) -> int:
    if isinstance(tok, int) and not isinstance(tok, bool):
        return tok
    if isinstance(tok, str) and _INT_RE.match(tok):
        return int(tok)
    raise ParseError(f"malformed integer: {tok!r}")


def parse_system(text: str) -> ExpSystem:
    """Parse and validate an instance document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object")
    for key in ("vars", "bases", "equations"):
        if key not in doc:
            raise ParseError(f"missing key: {key}")
    num_vars = _parse_int(doc["vars"])
    if num_vars < 1:
        raise ParseError("vars must be >= 1")
    if not isinstance(doc["bases"], list) or not doc["bases"]:
        raise ParseError("bases must be a nonempty list")
    fields = []
    for entry in doc["bases"]:
        if not isinstance(entry, dict) or "min_poly" not in entry:
            raise ParseError("each base must be an object with a min_poly")
        coeffs = entry["min_poly"]
        if not isinstance(coeffs, list) or len(coeffs) < 2:
            raise ParseError("min_poly must list at least two coefficients")
        poly = IntPolynomial.of([_parse_int(c) for c in coeffs])
        if poly.degree < 1:
            raise ParseError("min_poly must have degree >= 1")
        fields.append(NumberField(poly))
    if not isinstance(doc["equations"], list):
        raise ParseError("equations must be a list")
    equations = []
    for eq in doc["equations"]:
        if not isinstance(eq, dict):
            raise ParseError("each equation must be an object")
        idx = _parse_int(eq.get("base", None))
        if not 0 <= idx < len(fields):
            raise ParseError("equation base index out of range")
        field = fields[idx]
        coeffs_doc = eq.get("coeffs")
        rhs_doc = eq.get("rhs")
        if not isinstance(coeffs_doc, list) or not isinstance(rhs_doc, list):
            raise ParseError("equation needs coeffs and rhs lists")
        if len(coeffs_doc) != num_vars:
            raise ValidationError("coefficient-length mismatch")
        coeffs = []
        for vec in coeffs_doc + [rhs_doc]:
            if not isinstance(vec, list) or len(vec) != field.degree:
                raise ValidationError("coefficient-length mismatch")
            coeffs.append(field_reduce([_parse_rational(t) for t in vec], field))
        equations.append(ExpEquation(idx, tuple(coeffs[:-1]), coeffs[-1]))
    return make_system(fields, equations, num_vars)


def _rational_str(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def serialize_system(system: ExpSystem) -> str:
    """Canonical JSON for an instance; parse(serialize(s)) == s."""
    doc = {
        "vars": system.num_vars,
        "bases": [{"min_poly": list(f.min_poly.coeffs)} for f in system.fields],
        "equations": [
            {
                "base": eq.base_index,
                "coeffs": [[_rational_str(x) for x in c.coords] for c in eq.coeffs],
                "rhs": [_rational_str(x) for x in eq.rhs.coords],
            }
            for eq in system.equations
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Size accounting
# ---------------------------------------------------------------------------


def _bitlen(n: int) -> int:
    return n.bit_length() if n else 1


def size_of(system: ExpSystem) -> int:
    """Bit-length surrogate for the instance size: every coefficient
    coordinate contributes the bit lengths of its numerator and denominator,
    and every minimal-polynomial coefficient of every equation's base
    contributes bitlen(|c| + 1)."""
    total = 0
    for eq in system.equations:
        for c in eq.coeffs:
            for x in c.coords:
                total += _bitlen(abs(x.numerator)) + _bitlen(x.denominator)
        for c in system.fields[eq.base_index].min_poly.coeffs:
            total += _bitlen(abs(c) + 1)
    return total


# ---------------------------------------------------------------------------
# Transformations
# ---------------------------------------------------------------------------


def clear_denominators(system: ExpSystem) -> ExpSystem:
    """Scale each equation by the lcm of its denominators so that every
    coefficient and rhs has integer coordinates; solution set unchanged."""
    new_eqs = []
    for eq in system.equations:
        denoms = [x.denominator for c in eq.coeffs + (eq.rhs,) for x in c.coords]
        scale = math.lcm(*denoms)
        if scale == 1:
            new_eqs.append(eq)
            continue
        factor = Fraction(scale)
        new_eqs.append(
            ExpEquation(
                eq.base_index,
                tuple(c * factor for c in eq.coeffs),
                eq.rhs * factor,
            )
        )
    return ExpSystem(system.fields, tuple(new_eqs), system.num_vars)


def homogenize(system: ExpSystem) -> HomogenizedSystem:
    """Attach an auxiliary exponent variable x_0 carrying -rhs so that every
    right-hand side becomes zero.  Already-homogeneous systems pass through
    unchanged (an all-zero auxiliary column would be invalid)."""
    if system.is_homogeneous():
        return HomogenizedSystem(system, system, False)
    new_eqs = []
    for eq in system.equations:
        field = eq.field()
        new_eqs.append(
            ExpEquation(
                eq.base_index,
                (-eq.rhs,) + eq.coeffs,
                field.zero(),
            )
        )
    inner = make_system(system.fields, new_eqs, system.num_vars + 1)
    return HomogenizedSystem(inner, system, True)
