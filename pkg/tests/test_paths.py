import random
from fractions import Fraction

import pytest

from quasi3 import _pypaths, paths
from quasi3.arith import binom
from quasi3.paths import (
    BudgetExceeded,
    FamilyProblem,
    PathProblem,
    block_instance_params,
    count_families_bruteforce,
    count_paths_dp,
    count_paths_formula,
    count_paths_free,
    final_block_instance_params,
    formula_applicable,
    sample_thm1_instances,
    single_path_formula,
    thm1_applicable,
    thm1_endpoints,
    thm1_inner_params,
    thm2_endpoints,
    thm2_grid,
    thm2_instance_applicable,
    verify_thm1,
    verify_thm2,
)

try:
    from quasi3 import _speedups
except ImportError:
    _speedups = None


def brute_force_count(x0, y0, x1, y1, barrier):
    """Recursive reference counter, independent of the kernels."""
    if barrier is not None and x0 + y0 == barrier:
        return 0
    if (x0, y0) == (x1, y1):
        return 1
    total = 0
    if y0 < y1:
        total += brute_force_count(x0, y0 + 1, x1, y1, barrier)
    if x0 > x1:
        total += brute_force_count(x0 - 1, y0, x1, y1, barrier)
    return total


def test_dp_matches_brute_force():
    for x0 in range(0, 5):
        for y1 in range(0, 6):
            for barrier in [None] + list(range(-1, 11)):
                got = _pypaths.dp_count(x0, 0, 0, y1, barrier)
                want = brute_force_count(x0, 0, 0, y1, barrier)
                assert got == want


def test_dp_free_count_is_binomial():
    for s in range(0, 7):
        for h in range(s, 10):
            problem = PathProblem(start=(s, s), end=(0, h))
            assert count_paths_dp(problem) == binom(h, s)
            assert count_paths_free(problem) == binom(h, s)


def test_dp_unreachable_is_zero():
    assert _pypaths.dp_count(0, 5, 0, 2, None) == 0
    assert _pypaths.dp_count(2, 0, 3, 1, None) == 0


def test_barrier_blocks_endpoints():
    # barrier through the start or the end kills every path
    assert _pypaths.dp_count(2, 2, 0, 6, 4) == 0
    assert _pypaths.dp_count(2, 2, 0, 6, 6) == 0


def test_barrier_out_of_reach_is_free():
    # line sums along any path stay within [s .. s + h]
    s, h = 3, 7
    free = binom(h, s)
    assert _pypaths.dp_count(s, s, 0, h, s + h + 1) == free
    assert _pypaths.dp_count(s, s, 0, h, s - 1) == free
    # sums below 2s are still reachable (walk west first), so a barrier
    # there does cut paths off
    assert _pypaths.dp_count(s, s, 0, h, 2 * s - 1) < free


@pytest.mark.skipif(_speedups is None, reason="compiled kernel not built")
def test_compiled_dp_matches_pure():
    for x0 in range(0, 8):
        for y0 in range(0, 4):
            for y1 in range(y0, 10):
                for barrier in [None] + list(range(0, 14, 3)):
                    pure = _pypaths.dp_count(x0, y0, 0, y1, barrier)
                    fast = _speedups.dp_count(x0, y0, 0, y1, barrier)
                    assert pure == fast


@pytest.mark.skipif(_speedups is None, reason="compiled kernel not built")
def test_compiled_family_matches_pure():
    rng = random.Random(8)
    checked = 0
    for _ in range(60):
        k = rng.randint(1, 3)
        starts = tuple(sorted({(v, v) for v in rng.sample(range(4), k)}))
        ends = tuple(
            sorted({(0, rng.randint(4, 9)) for _ in range(len(starts))})
        )
        if len(ends) != len(starts):
            continue
        barrier = rng.choice([None, 7, 9, 11, 13])
        pure = _pypaths.family_count(starts, ends, barrier, 10**7)
        fast = _speedups.family_count(starts, ends, barrier, 10**7)
        assert pure == fast
        checked += 1
    assert checked >= 30


def test_formula_matches_dp_where_applicable():
    mismatches = []
    for s in range(0, 9):
        for h in range(s, 12):
            for L in list(range(-2, 24)) + [None]:
                applicable = formula_applicable(s, h, L)
                formula = single_path_formula(s, h, L)
                true = _pypaths.dp_count(s, s, 0, h, L)
                if applicable and formula != true:
                    mismatches.append((s, h, L))
    assert mismatches == []


def test_formula_applicable_edges():
    assert formula_applicable(2, 6, None)
    assert formula_applicable(2, 6, 4)  # endpoint sums themselves allowed
    assert formula_applicable(2, 6, 6)
    assert not formula_applicable(2, 6, 5)  # strictly between 4 and 6
    assert not formula_applicable(-1, 5, None)
    assert not formula_applicable(3, 2, None)


def test_count_paths_formula_is_matrix_entry():
    a, b, c, d, e = 4, 1, 1, 1, 6
    for i in (1, 2):
        for j in (1, 2):
            expected = binom(a + b * i, c + d * j) - binom(a + b * i, e - d * j)
            assert count_paths_formula(a, b, c, d, e, i, j) == expected


def test_path_problem_validation():
    with pytest.raises(ValueError):
        PathProblem(start=(-1, 0), end=(0, 0))
    with pytest.raises(ValueError):
        PathProblem(start=(0, 0), end=(1, 1))  # east of start
    with pytest.raises(ValueError):
        PathProblem(start=(1, 3), end=(0, 2))  # south of start
    with pytest.raises(ValueError):
        PathProblem(start=(0, 0), end=(0, 0), barrier="x")


def test_family_problem_validation():
    with pytest.raises(ValueError):
        FamilyProblem(starts=((1, 2),), ends=((0, 5),))  # off diagonal
    with pytest.raises(ValueError):
        FamilyProblem(starts=((1, 1),), ends=((1, 5),))  # off axis
    with pytest.raises(ValueError):
        FamilyProblem(starts=((1, 1), (2, 2)), ends=((0, 5),))


def test_single_family_equals_single_path():
    for s in range(0, 4):
        for h in range(s, 8):
            problem = FamilyProblem(starts=((s, s),), ends=((0, h),), barrier=11)
            single = PathProblem(start=(s, s), end=(0, h), barrier=11)
            assert count_families_bruteforce(problem) == count_paths_dp(single)


def test_crossing_pairing_counts_zero():
    # end of the second path sits on every route of the first
    problem = FamilyProblem(starts=((0, 0), (1, 1)), ends=((0, 5), (0, 3)))
    assert count_families_bruteforce(problem) == 0
    swapped = FamilyProblem(starts=((0, 0), (1, 1)), ends=((0, 3), (0, 5)))
    assert count_families_bruteforce(swapped) > 0


def test_budget_exceeded_is_distinct_from_zero():
    problem = FamilyProblem(starts=((4, 4),), ends=((0, 12),))
    with pytest.raises(BudgetExceeded) as info:
        count_families_bruteforce(problem, budget=3)
    assert info.value.product == binom(12, 4)
    assert info.value.budget == 3
    # an impossible family returns plain zero no matter how small the budget
    blocked = FamilyProblem(starts=((4, 4),), ends=((0, 12),), barrier=8)
    assert count_families_bruteforce(blocked, budget=3) == 0


@pytest.mark.skipif(_speedups is None, reason="compiled kernel not built")
def test_budget_exceeded_compiled_matches_pure():
    starts, ends = ((4, 4),), ((0, 12),)
    with pytest.raises(BudgetExceeded):
        _speedups.family_count(starts, ends, None, 3)
    assert _speedups.family_count(starts, ends, 8, 3) == 0


def test_empty_family_counts_one():
    assert _pypaths.family_count((), (), None, 10) == 1


def test_thm2_endpoints_and_applicability():
    starts, ends, L = thm2_endpoints(4, 1, 1, 1, 6, 2)
    assert starts == ((2, 2), (3, 3))
    assert ends == ((0, 5), (0, 6))
    assert L == 7
    assert thm2_instance_applicable(4, 1, 1, 1, 6, 2)
    assert not thm2_instance_applicable(4, 0, 1, 1, 6, 2)  # b must be >= 1
    assert not thm2_instance_applicable(4, 1, 1, 1, 6, 0)


def test_verify_thm2_small_instances():
    for params in ((4, 1, 1, 1, 6, 2), (5, 1, 0, 1, 9, 3), (3, 2, 1, 1, 8, 1)):
        report = verify_thm2(*params)
        assert report.checked
        assert report.equal
        assert report.det == report.family_count


def test_verify_thm2_budget_note():
    report = verify_thm2(4, 1, 1, 1, 6, 2, budget=1)
    assert not report.checked
    assert report.family_count is None
    assert "budget" in report.note


def test_thm1_inner_params_give_the_family_instance():
    C, D, E, alpha, beta, k = 10, -1, 7, -1, -2, 2
    a, b, c, d, e = thm1_inner_params(C, D, E, alpha, beta, k)
    assert (a, b, c, d, e) == (8, -2, 2, -1, 7)
    inner = verify_thm2(a, b, c, d, e, k)
    outer = verify_thm1(C, D, E, alpha, beta, k)
    # the substituted matrix drops the prefactor: its det is the family count
    assert inner.det == outer.family_count
    assert inner.family_count == outer.family_count
    assert set(inner.starts) == set(outer.starts)
    assert set(inner.ends) == set(outer.ends)
    assert inner.barrier == outer.barrier


def test_verify_thm1_golden_instance():
    report = verify_thm1(10, -1, 7, -1, -2, 2)
    assert report.det == 2352
    assert report.prefactor == Fraction(1176)
    assert report.family_count == 2
    assert report.starts == ((1, 1), (0, 0))
    assert report.ends == ((0, 6), (0, 4))
    assert report.barrier == 9
    assert report.checked and report.equal and report.applicable


def test_thm1_applicability_rejects_mixed_signs():
    assert not thm1_applicable(10, -1, 7, -1, 2, 2)
    assert not thm1_applicable(10, -1, 7, 1, -2, 2)


def test_thm1_endpoints_printed_order():
    starts, ends, L = thm1_endpoints(10, -1, 7, -1, -2, 2)
    assert starts == ((1, 1), (0, 0))  # t = k .. 1
    assert ends == ((0, 6), (0, 4))
    assert L == 9


def test_block_instances_reproduce_block_determinants():
    from quasi3.linsys import det_exact, extract_blocks

    for m in (1, 2, 3):
        for d in (3 * m + 1, 3 * m + 2):
            blocks = extract_blocks(m, d)
            for f in range(1, m + 1):
                params = block_instance_params(m, f, d)
                report = verify_thm1(*params)
                assert report.det == det_exact(blocks.leading[f - 1])
                if report.checked:
                    assert report.equal
            params = final_block_instance_params(m, d)
            report = verify_thm1(*params)
            assert report.det == det_exact(blocks.final)
            if report.checked:
                assert report.equal


def test_block_instance_param_validation():
    with pytest.raises(ValueError):
        block_instance_params(2, 0, 7)
    with pytest.raises(ValueError):
        block_instance_params(2, 3, 7)
    with pytest.raises(ValueError):
        block_instance_params(2, 1, 9)
    with pytest.raises(ValueError):
        final_block_instance_params(0, 1)


def test_thm2_grid_is_deterministic_and_applicable():
    first = list(thm2_grid(coord_bound=6, nmax=2))
    second = list(thm2_grid(coord_bound=6, nmax=2))
    assert first == second
    assert len(first) > 50
    for inst in first[:25]:
        assert thm2_instance_applicable(*inst)
        report = verify_thm2(*inst)
        assert report.checked and report.equal


def test_sample_thm1_instances_deterministic():
    a = sample_thm1_instances(random.Random(3), 5)
    b = sample_thm1_instances(random.Random(3), 5)
    assert a == b
    for inst in a:
        report = verify_thm1(*inst)
        assert report.checked and report.equal


def test_enumeration_budget_env(monkeypatch):
    monkeypatch.delenv("QUASI3_BUDGET", raising=False)
    assert paths.enumeration_budget() == paths.DEFAULT_BUDGET
    monkeypatch.setenv("QUASI3_BUDGET", "123")
    assert paths.enumeration_budget() == 123
    monkeypatch.setenv("QUASI3_BUDGET", "0")
    with pytest.raises(ValueError):
        paths.enumeration_budget()
