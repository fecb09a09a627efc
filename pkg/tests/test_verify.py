"""Candidate verification: exactness, scaling in the exponent bit length,
agreement with the naive evaluator, shift covariance, residual reports."""

import json
import random
import time
from fractions import Fraction

import pytest

from expodio import (
    NumberField,
    parse_solution,
    parse_system,
    verify,
    verify_report,
)
from expodio.solve import naive_residuals
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

POW_EQ = json.dumps(
    {
        "vars": 1,
        "bases": [{"min_poly": [-2, 1]}],
        "equations": [{"base": 0, "coeffs": [["1"]], "rhs": ["4"]}],
    }
)


def test_verify_simple():
    system = parse_system(POW_EQ)
    assert verify(system, (2,))
    assert not verify(system, (3,))


def test_verify_three_powers():
    system = system_over(TWO, [[1, 1, -1]])
    assert verify(system, (7, 7, 8))
    assert not verify(system, (7, 6, 8))


def test_verify_length_mismatch():
    system = parse_system(POW_EQ)
    with pytest.raises(ValueError):
        verify(system, (1, 2))


def test_verify_negative_exponents():
    doc = {
        "vars": 1,
        "bases": [{"min_poly": [-2, 1]}],
        "equations": [{"base": 0, "coeffs": [["1"]], "rhs": ["1/4"]}],
    }
    system = parse_system(json.dumps(doc))
    assert verify(system, (-2,))
    assert not verify(system, (2,))


def test_verify_root_of_unity_bases():
    system = system_over(NumberField(P_I), [[1, 1]])
    # i^x1 + i^x2 = 0 iff x1 and x2 differ by 2 mod 4
    for x1 in range(-5, 6):
        for x2 in range(-5, 6):
            assert verify(system, (x1, x2)) == ((x1 - x2) % 4 == 2)


def test_verify_mixed_system():
    fields = [NumberField(P_MINUS_ONE), NumberField(P_TWO)]
    system = multi_base_system(fields, [(0, [1, 1], 0), (1, [2, -1], 0)], 2)
    # second equation forces x2 = x1 + 1, first forces opposite parity
    assert verify(system, (0, 1))
    assert verify(system, (2, 3))
    assert not verify(system, (1, 3))


def test_verify_zero_coefficient_terms_ignored():
    fields = [NumberField(P_TWO), NumberField(P_TWO)]
    system = multi_base_system(fields, [(0, [1, 0], 2), (1, [0, 1], 4)], 2)
    assert verify(system, (1, 2))
    assert not verify(system, (2, 1))


def test_agreement_with_naive_evaluator():
    rng = random.Random(31)
    systems = [
        system_over(TWO, [[1, -2]]),
        system_over(NumberField(P_SQRT2), [[1, 2], [3, -1]], rhs=[2, 0]),
        system_over(NumberField(P_THREE_HALVES), [[2, -3]], rhs=[1]),
        system_over(NumberField(P_I), [[1, 1]]),
    ]
    for system in systems:
        k = system.num_vars
        for _ in range(40):
            cand = tuple(rng.randint(-60, 60) for _ in range(k))
            naive = all(r.is_zero() for r in naive_residuals(system, cand))
            assert verify(system, cand) == naive
    # a handful of larger exponents, still within naive reach
    system = system_over(TWO, [[1, -2]])
    for _ in range(6):
        x2 = rng.randint(0, 2**12 - 1)
        assert verify(system, (x2 + 1, x2))
        naive = all(r.is_zero() for r in naive_residuals(system, (x2 + 1, x2)))
        assert naive


def test_shift_covariance():
    rng = random.Random(41)
    system = system_over(NumberField(P_SQRT2), [[1, 2, -3]])
    for _ in range(40):
        cand = tuple(rng.randint(-10, 10) for _ in range(3))
        shift = rng.randint(-8, 8)
        shifted = tuple(x + shift for x in cand)
        assert verify(system, cand) == verify(system, shifted)


def test_huge_exponent_pair_is_fast():
    system = system_over(TWO, [[1, -2]])
    start = time.perf_counter()
    assert verify(system, (2**64 + 1, 2**64))
    assert not verify(system, (2**64 + 2, 2**64))
    assert time.perf_counter() - start < 1.0


def test_huge_spread_rejected_fast():
    system = parse_system(POW_EQ)
    start = time.perf_counter()
    assert not verify(system, (2**64,))
    assert time.perf_counter() - start < 1.0


def test_huge_exponents_root_of_unity():
    system = system_over(NumberField(P_I), [[1, 1]])
    assert verify(system, (2**80 + 2, 2**80))
    assert not verify(system, (2**80 + 1, 2**80))


def test_split_path_satisfied_two_groups():
    # two far-apart groups, each vanishing on its own
    system = system_over(TWO, [[1, -2, 1, -2]])
    assert verify(system, (10001, 10000, 1, 0))
    assert not verify(system, (10001, 10000, 1, 1))
    assert not verify(system, (10001, 9999, 1, 0))


def test_split_path_matches_direct_evaluation():
    # spreads beyond the direct-evaluation cutoff but still small enough to
    # materialize residuals: the split path must agree with them exactly
    rng = random.Random(71)
    systems = [
        system_over(TWO, [[1, -2, 1, -2]]),
        system_over(TWO, [[3, -1, 2]]),
        system_over(NumberField(P_THREE_HALVES), [[2, -3, 2, -3]]),
        system_over(NumberField(P_SQRT2), [[1, -1, 2, -2]]),
    ]
    for system in systems:
        k = system.num_vars
        for trial in range(30):
            if trial % 3 == 0 and k % 2 == 0:
                # first half shifted far from the second: two-group shape
                half = tuple(rng.randint(0, 4) for _ in range(k // 2))
                far = rng.randint(4200, 9000)
                cand = tuple(v + far for v in half) + half
            else:
                cand = tuple(
                    rng.choice([rng.randint(0, 8), rng.randint(4200, 9000)])
                    for _ in range(k)
                )
            direct = all(r.is_zero() for r in verify_report(system, cand))
            assert verify(system, cand) == direct


# ---------------------------------------------------------------------------
# verify_report
# ---------------------------------------------------------------------------


def test_report_zero_residual_on_solution():
    system = parse_system(POW_EQ)
    (res,) = verify_report(system, (2,))
    assert res.is_zero()


def test_report_value():
    system = parse_system(POW_EQ)
    (res,) = verify_report(system, (3,))
    assert res.coords == (Fraction(4),)


def test_report_linearity_under_scaling():
    base = system_over(TWO, [[1, 3]], rhs=[5])
    scaled = system_over(TWO, [[4, 12]], rhs=[20])
    rng = random.Random(51)
    for _ in range(25):
        cand = (rng.randint(-5, 5), rng.randint(-5, 5))
        (r1,) = verify_report(base, cand)
        (r2,) = verify_report(scaled, cand)
        assert r2 == r1 * 4


def test_report_matches_verify():
    rng = random.Random(61)
    system = system_over(NumberField(P_SQRT2), [[1, -1], [2, -2]])
    for _ in range(30):
        cand = (rng.randint(-6, 6), rng.randint(-6, 6))
        residuals = verify_report(system, cand)
        assert verify(system, cand) == all(r.is_zero() for r in residuals)


def test_parse_solution_round_trip():
    sol = parse_solution('{"x": ["5", "-3"]}')
    assert sol.entries == (5, -3)
    assert parse_solution(sol.to_json()) == sol
