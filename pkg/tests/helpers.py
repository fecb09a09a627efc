"""Shared construction helpers for the test suite."""

from expodio import ExpEquation, NumberField, make_system


def field_for(min_poly) -> NumberField:
    return NumberField(min_poly)


def system_over(field, rows, rhs=None, num_vars=None):
    """System over a single base: ``rows`` is a list of integer coefficient
    lists (one per equation), ``rhs`` an optional list of integer right-hand
    sides (defaults to homogeneous)."""
    k = num_vars or len(rows[0])
    eqs = []
    for i, row in enumerate(rows):
        coeffs = tuple(field.from_int(c) for c in row)
        r = field.from_int(rhs[i]) if rhs else field.zero()
        eqs.append(ExpEquation(0, coeffs, r))
    return make_system([field], eqs, k)


def multi_base_system(fields, entries, num_vars):
    """System over several bases: ``entries`` is a list of
    (base_index, coeff_ints, rhs_int) triples."""
    eqs = []
    for base_index, row, r in entries:
        f = fields[base_index]
        eqs.append(
            ExpEquation(
                base_index,
                tuple(f.from_int(c) for c in row),
                f.from_int(r),
            )
        )
    return make_system(fields, eqs, num_vars)


# Frequently used bases (minimal polynomials, integer coefficients low-to-high)
P_TWO = [-2, 1]          # alpha = 2
P_THREE = [-3, 1]        # alpha = 3
P_MINUS_TWO = [2, 1]     # alpha = -2
P_THREE_HALVES = [-3, 2]  # alpha = 3/2
P_MINUS_ONE = [1, 1]     # alpha = -1
P_I = [1, 0, 1]          # alpha = i
P_SQRT2 = [-2, 0, 1]     # alpha = sqrt(2)
P_GOLDEN = [-1, -1, 1]   # alpha = (1+sqrt5)/2
P_CUBIC = [-1, -1, 0, 1]  # alpha root of x^3 - x - 1
