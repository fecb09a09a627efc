"""Certified bounds: decoupling constants, per-equation gap and span bounds,
and the system-level search box.

Reference values are recomputed in-test with mpmath at 200 bits, independent
of the package's directed-rounding helpers.
"""

import math
import random
from fractions import Fraction

import mpmath
import pytest

from expodio import (
    IsRootOfUnity,
    NumberField,
    c_constant,
    gap_bound,
    kappa,
    mspn_bound_equation,
    oracle_search,
    system_box,
)
from expodio.solve import SearchLimits
from helpers import (
    P_I,
    P_MINUS_ONE,
    P_SQRT2,
    P_THREE_HALVES,
    P_TWO,
    multi_base_system,
    system_over,
)

TWO = NumberField(P_TWO)
SQRT2 = NumberField(P_SQRT2)


def ref(expr_fn) -> float:
    with mpmath.workprec(200):
        return float(expr_fn())


# ---------------------------------------------------------------------------
# kappa and c
# ---------------------------------------------------------------------------


def test_kappa_d1():
    true = ref(lambda: mpmath.ln(2))
    k = kappa(1)
    assert float(k) <= true
    assert abs(float(k) - true) < 1e-6


def test_kappa_d2():
    true = ref(lambda: 2 / (2 * mpmath.ln(6) ** 3))
    k = kappa(2)
    assert float(k) <= true
    assert abs(float(k) - true) < 1e-6


def test_kappa_decreasing():
    values = [kappa(d) for d in range(2, 12)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_c_constant_exact_powers_of_two():
    # 3 (ln 2 + 2 ln s) / ln 2 == 3 + 6 log2(s): exact integers for s = 2^m
    assert c_constant(TWO, 1) == 3
    assert c_constant(TWO, 4) == 15
    assert c_constant(TWO, 32) == 33


def test_c_constant_d2():
    true = ref(lambda: 3 * (mpmath.ln(2) + 2 * mpmath.ln(2)) / (1 / mpmath.ln(6) ** 3))
    got = c_constant(SQRT2, 2)
    assert got == 36
    assert got >= true
    assert got - true < 1.0 + 1e-6  # a ceiling, not a loose bound


def test_c_constant_root_of_unity_rejected():
    with pytest.raises(IsRootOfUnity):
        c_constant(NumberField(P_MINUS_ONE), 3)


# ---------------------------------------------------------------------------
# gap and span bounds
# ---------------------------------------------------------------------------


def eq_over(field, row):
    return system_over(field, [row]).equations[0]


def test_gap_bound_example():
    # 1 + (ln 3 + 3 ln 2)/ln 2 = 5.585...; reference recomputed independently
    true = ref(lambda: 1 + (mpmath.ln(3) + 3 * mpmath.ln(2)) / mpmath.ln(2))
    got = gap_bound(eq_over(TWO, [1, 1, -1]))
    assert got == 6
    assert got >= true


def test_gap_bound_monotone_in_coefficients():
    small = gap_bound(eq_over(TWO, [1, 1, -1]))
    scaled = gap_bound(eq_over(TWO, [2, 2, -2]))
    assert scaled > small


def test_gap_bound_rejects_non_homogeneous():
    field = NumberField(P_TWO)
    eq = system_over(field, [[1, 1]], rhs=[4]).equations[0]
    with pytest.raises(ValueError):
        gap_bound(eq)


def test_gap_bound_rejects_root_of_unity():
    with pytest.raises(IsRootOfUnity):
        gap_bound(eq_over(NumberField(P_I), [1, -1]))


def test_gap_covers_observed_blocks():
    # every pair of indices inside a minimal vanishing subset of an observed
    # solution differs by at most the gap bound
    field = NumberField(P_TWO)
    for row in ([1, 1, -1], [1, -1], [3, -2, -1]):
        system = system_over(field, [row])
        bound = gap_bound(system.equations[0])
        k = len(row)
        for sol in oracle_search(system, -6, 6, SearchLimits(max_candidates=10**6)):
            xs = sol.entries
            for mask in range(1, 1 << k):
                members = [j for j in range(k) if mask >> j & 1]
                total = sum(
                    Fraction(row[j]) * Fraction(2) ** xs[j] for j in members
                )
                if total == 0:
                    lo = min(xs[j] for j in members)
                    hi = max(xs[j] for j in members)
                    assert hi - lo <= bound


def test_mspn_rational_path_example():
    assert mspn_bound_equation(eq_over(TWO, [1, 1, -1])) == 3


def test_mspn_general_path_consistency():
    eq = eq_over(TWO, [1, 1, -1])
    general = (3 - 1) * gap_bound(eq)
    assert general == 12
    assert mspn_bound_equation(eq) <= general


def test_mspn_attainable_span_within_bound():
    # solutions of 2^x1 + 2^x2 - 2^x3 = 0 are (a, a, a+1): span 1 <= 3
    field = NumberField(P_TWO)
    system = system_over(field, [[1, 1, -1]])
    bound = mspn_bound_equation(system.equations[0])
    for sol in oracle_search(system, -4, 4, SearchLimits(max_candidates=10**6)):
        assert max(sol.entries) - min(sol.entries) <= bound


def test_mspn_single_variable_defined():
    # 5 * alpha^x = 0 has no solutions; the bound is still well-defined
    eq = system_over(TWO, [[5]], num_vars=1).equations[0]
    assert mspn_bound_equation(eq) >= 0


def test_mspn_sqrt2_uses_general_path():
    eq = eq_over(SQRT2, [1, -1])
    assert mspn_bound_equation(eq) == gap_bound(eq)


def test_rational_path_never_exceeds_general():
    # provable for |alpha| >= 2; bases between 1 and 2 in absolute value can
    # invert the comparison (log base |alpha| inflates each term)
    rng = random.Random(21)
    for field in (TWO, NumberField([-3, 1]), NumberField([2, 1])):
        for _ in range(20):
            k = rng.randint(2, 4)
            row = [rng.choice([c for c in range(-6, 7) if c]) for _ in range(k)]
            eq = eq_over(field, row)
            assert mspn_bound_equation(eq) <= (k - 1) * gap_bound(eq)


# ---------------------------------------------------------------------------
# system box
# ---------------------------------------------------------------------------


def test_system_box_single_rational_equation():
    report = system_box(system_over(TWO, [[1, -2]]))
    assert report.per_equation_mspn == (3,)
    assert report.system_mspn == 6
    assert report.modulus == 1
    assert report.box_limit == 7


def test_system_box_all_roots_of_unity():
    fields = [NumberField(P_MINUS_ONE), NumberField(P_I)]
    system = multi_base_system(
        fields, [(0, [1, 1], 0), (1, [1, -1], 0)], 2
    )
    report = system_box(system)
    assert report.modulus == 4
    assert report.system_mspn == 0
    assert report.box_limit == 4
    assert report.per_equation_gap == (0, 0)


def test_system_box_mixed():
    fields = [NumberField(P_MINUS_ONE), NumberField(P_TWO)]
    system = multi_base_system(
        fields, [(0, [1, 1], 0), (1, [1, -2], 0)], 2
    )
    report = system_box(system)
    assert report.modulus == 2
    assert report.system_mspn == 1 * 2 * 3
    assert report.box_limit == 2 + 6


def test_system_mspn_covers_attainable_cluster_spans():
    from expodio import find_cluster_structures

    rng = random.Random(29)
    fields_pool = [TWO, NumberField(P_MINUS_ONE), SQRT2]
    tried = 0
    while tried < 15:
        field = rng.choice(fields_pool)
        k = rng.randint(2, 3)
        row = [rng.choice([c for c in range(-3, 4) if c]) for _ in range(k)]
        system = system_over(field, [row])
        try:
            report = system_box(system)
        except Exception:
            continue
        sols = oracle_search(system, -8, 8, SearchLimits(max_candidates=10**7))
        if not sols:
            continue
        for sol in sols[:20]:
            for structure in find_cluster_structures(system, sol):
                for cluster in structure.clusters:
                    span = max(sol.entries[j] for j in cluster) - min(
                        sol.entries[j] for j in cluster
                    )
                    assert span <= report.system_mspn
        tried += 1


def test_box_report_json_uses_decimal_strings():
    report = system_box(system_over(TWO, [[1, -2]]))
    doc = report.to_json_dict()
    assert doc["box_limit"] == "7"
    assert doc["N"] == "1"
    assert doc["per_equation_mspn"] == ["3"]


# ---------------------------------------------------------------------------
# directed rounding
# ---------------------------------------------------------------------------


def test_higher_precision_never_loosens():
    rng = random.Random(17)
    fields = [TWO, NumberField(P_THREE_HALVES), SQRT2]
    assert kappa(1, 106) >= kappa(1, 53)
    assert kappa(5, 106) >= kappa(5, 53)
    for _ in range(30):
        field = rng.choice(fields)
        k = rng.randint(1, 4)
        row = [rng.choice([c for c in range(-9, 10) if c]) for _ in range(k)]
        system = system_over(field, [row])
        eq = system.equations[0]
        assert gap_bound(eq, 106) <= gap_bound(eq, 53)
        assert mspn_bound_equation(eq, 106) <= mspn_bound_equation(eq, 53)
        assert system_box(system, 106).box_limit <= system_box(system, 53).box_limit
        assert c_constant(field, k + 1, 106) <= c_constant(field, k + 1, 53)


def test_bounds_monotone_under_growth():
    rng = random.Random(23)
    for _ in range(30):
        field = rng.choice([TWO, SQRT2])
        k = rng.randint(2, 4)
        row = [rng.choice([c for c in range(-5, 6) if c]) for _ in range(k)]
        grown = [c * rng.randint(2, 4) for c in row]
        wider = row + [rng.choice([1, -1, 3])]
        eq, eq_grown = eq_over(field, row), eq_over(field, grown)
        eq_wider = eq_over(field, wider)
        assert gap_bound(eq_grown) >= gap_bound(eq)
        assert gap_bound(eq_wider) >= gap_bound(eq)
        assert mspn_bound_equation(eq_grown) >= mspn_bound_equation(eq)
