"""The package's acceptance checks, shared by pytest and `quasi3 selftest`.

Each criterion function returns a CriterionResult with an exact verdict
(nothing is compared with tolerances; every number is an integer or a
Fraction) and the elapsed wall time, which the callers compare against
the stated limits.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import basis, group_ops, linsys, paths, quasi
from .poly import Polynomial, S12, parse_poly, vandermonde_power

GOLDEN_A1_M1 = "x1^4 - 2*x1^3*x2 - 2*x1^3*x3 + 6*x1^2*x2*x3"
GOLDEN_A2_M1 = "x1^5 - 5/3*x1^4*x2 - 5/3*x1^4*x3 + 10/3*x1^3*x2*x3"
GOLDEN_A1_M2 = (
    "x1^7 - 7/2*x1^6*x2 - 7/2*x1^6*x3 + 14*x1^5*x2*x3"
    " + 7/2*x1^5*x2^2 + 7/2*x1^5*x3^2"
    " - 35/2*x1^4*x2^2*x3 - 35/2*x1^4*x2*x3^2 + 35*x1^3*x2^2*x3^2"
)
GOLDEN_A2_M2 = (
    "x1^8 - 16/5*x1^7*x2 - 16/5*x1^7*x3 + 56/5*x1^6*x2*x3"
    " + 14/5*x1^6*x2^2 + 14/5*x1^6*x3^2"
    " - 56/5*x1^5*x2^2*x3 - 56/5*x1^5*x2*x3^2 + 14*x1^4*x2^2*x3^2"
)

GOLDEN_MATRIX_M3 = (
    (252, 378, 126, 308, 182, 56, 273, 147, 75),
    (0, 126, 56, 252, 133, 42, 378, 174, 75),
    (0, 84, 56, 168, 147, 68, 252, 184, 125),
    (0, 0, 0, 56, 21, 6, 168, 63, 19),
    (0, 0, 0, 56, 35, 20, 168, 105, 66),
    (0, 0, 0, 8, 6, 4, 21, 15, 11),
    (0, 0, 0, 0, 0, 0, 21, 6, 1),
    (0, 0, 0, 0, 0, 0, 35, 20, 10),
    (0, 0, 0, 0, 0, 0, 7, 5, 3),
)
GOLDEN_ROWS_M3 = ((0, 5), (1, 5), (1, 3), (2, 5), (2, 3), (2, 1), (3, 5), (3, 3), (3, 1))
GOLDEN_COLS_M3 = ((0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2))
GOLDEN_BLOCKS_M3 = (
    ((252,),),
    ((126, 56), (84, 56)),
    ((56, 21, 6), (56, 35, 20), (8, 6, 4)),
)
GOLDEN_FINAL_M3 = ((21, 6, 1), (35, 20, 10), (7, 5, 3))

GOLDEN_DIMS_M1 = [1, 1, 2, 3, 6, 9, 13, 18, 24, 31]


@dataclass(frozen=True)
class CriterionResult:
    index: int
    title: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    @property
    def within_limit(self) -> bool:
        return self.seconds < self.limit


def _run(index, title, limit, fn) -> CriterionResult:
    start = time.perf_counter()
    passed, detail = fn()
    elapsed = time.perf_counter() - start
    return CriterionResult(
        index=index,
        title=title,
        passed=passed,
        detail=detail,
        seconds=elapsed,
        limit=limit,
    )


def criterion_1() -> CriterionResult:
    """Constructed quasiinvariants match the frozen m=1 and m=2 forms."""

    def check():
        want = {
            (1, 3, 1): parse_poly(GOLDEN_A1_M1),
            (1, 3, 2): parse_poly(GOLDEN_A2_M1),
            (2, 3, 1): parse_poly(GOLDEN_A1_M2),
            (2, 3, 2): parse_poly(GOLDEN_A2_M2),
        }
        got = {
            (1, 3, 1): basis.build_A1(1),
            (1, 3, 2): basis.build_A2(1),
            (2, 3, 1): basis.build_A1(2),
            (2, 3, 2): basis.build_A2(2),
        }
        bad = [k for k in want if want[k] != got[k]]
        return not bad, f"mismatches: {bad}" if bad else "4 polynomials exact"

    return _run(1, "golden quasiinvariants (m=1, m=2)", 1.0, check)


def criterion_2() -> CriterionResult:
    """m=3 restricted matrix and its four blocks match the frozen values."""

    def check():
        sub = linsys.restrict_Bm(linsys.build_system(3, 10))
        ok = (
            sub.rows == GOLDEN_ROWS_M3
            and sub.cols == GOLDEN_COLS_M3
            and sub.entries == GOLDEN_MATRIX_M3
        )
        blocks = linsys.extract_blocks(3, 10)
        ok = ok and blocks.leading == GOLDEN_BLOCKS_M3
        ok = ok and blocks.final == GOLDEN_FINAL_M3
        ok = ok and linsys.diagonal_blocks(sub) == blocks.all_blocks()
        return ok, "9x9 matrix and 4 blocks exact"

    return _run(2, "golden m=3 matrix and blocks", 1.0, check)


def criterion_3() -> CriterionResult:
    """Null space dimension 1 for m <= 6, both degrees; dets nonzero."""

    def check():
        details = []
        for m in range(7):
            for d in (3 * m + 1, 3 * m + 2):
                sys = linsys.build_system(m, d)
                vectors = linsys.nullspace(sys)
                if len(vectors) != 1:
                    return False, f"nullity {len(vectors)} at (m={m}, d={d})"
                if m >= 1:
                    det = linsys.det_exact(linsys.restrict_Bm(sys).entries)
                    if det == 0:
                        return False, f"det zero at (m={m}, d={d})"
            details.append(str(m))
        return True, f"unique ansatz for m in {{{','.join(details)}}}"

    return _run(3, "uniqueness sweep m <= 6", 30.0, check)


def criterion_4() -> CriterionResult:
    """Quasiinvariance, s23-invariance, and degrees for m <= 6."""

    def check():
        for m in range(7):
            report = basis.build_basis(m, verify="quasi")
            if not report.degrees_ok:
                return False, f"degree mismatch at m={m}"
            if not report.quasi_ok:
                return False, f"quasiinvariance failed at m={m}"
            if not report.s23_ok:
                return False, f"s23 invariance failed at m={m}"
        return True, "all six elements verified for m <= 6"

    return _run(4, "quasiinvariance sweep m <= 6", 60.0, check)


def criterion_5() -> CriterionResult:
    """Graded slice dimensions match the series for m=1, degrees 0..9."""

    def check():
        series = quasi.qi_dimension_series(1, 9)
        if series != GOLDEN_DIMS_M1:
            return False, f"series produced {series}"
        computed = [len(quasi.graded_qi_basis(1, d)) for d in range(10)]
        if computed != series:
            return False, f"graded solves produced {computed}"
        return True, f"dimensions {computed}"

    return _run(5, "dimension series m=1", 60.0, check)


def criterion_6() -> CriterionResult:
    """Quotient independence certificates for m=1 and m=0."""

    def check():
        A1 = basis.build_A1(1)
        A2 = basis.build_A2(1)
        if not quasi.independent_modulo_ideal([A1, A1.apply_perm(S12)], 1):
            return False, "degree 4 pair dependent modulo ideal part"
        if not quasi.independent_modulo_ideal([A2, A2.apply_perm(S12)], 1):
            return False, "degree 5 pair dependent modulo ideal part"
        if quasi.in_ideal_part(vandermonde_power(3), 1):
            return False, "Delta^3 lies in the ideal part"
        report0 = basis.build_basis(0, verify="full")
        det = report0.coinvariant_det
        if det == 0 or det is None:
            return False, "coinvariant determinant vanished for m=0"
        return True, f"m=1 certificates pass; m=0 det = {det}"

    return _run(6, "independence certificates", 120.0, check)


def criterion_7() -> CriterionResult:
    """Exhaustive grid of path-determinant instances, n <= 3."""

    def check():
        verified = 0
        for inst in paths.thm2_grid(coord_bound=12, nmax=3):
            report = paths.verify_thm2(*inst)
            if not report.checked:
                return False, f"instance {inst} unchecked: {report.note}"
            if not report.equal:
                return False, (
                    f"instance {inst}: det {report.det} != "
                    f"count {report.family_count}"
                )
            verified += 1
        if verified < 200:
            return False, f"only {verified} applicable instances"
        return True, f"{verified} instances verified exactly"

    return _run(7, "determinant = family count sweep", 300.0, check)


def criterion_8() -> CriterionResult:
    """Prefactor identity on block instances and a seeded random sample."""

    def check():
        golden = paths.verify_thm1(10, -1, 7, -1, -2, 2)
        if not (
            golden.det == 2352
            and golden.prefactor == Fraction(1176)
            and golden.family_count == 2
            and golden.equal
        ):
            return False, (
                f"block instance produced det={golden.det}, "
                f"prefactor={golden.prefactor}, count={golden.family_count}"
            )
        checked = 0
        for m in range(1, 4):
            for d in (3 * m + 1, 3 * m + 2):
                for f in range(1, m + 1):
                    params = paths.block_instance_params(m, f, d)
                    report = paths.verify_thm1(*params)
                    if not (report.checked and report.equal):
                        return False, f"block params {params}: {report.note}"
                    block = linsys.extract_blocks(m, d).leading[f - 1]
                    if report.det != linsys.det_exact(block):
                        return False, f"block params {params}: det mismatch"
                    checked += 1
                params = paths.final_block_instance_params(m, d)
                report = paths.verify_thm1(*params)
                if not (report.checked and report.equal):
                    return False, f"final block params {params}: {report.note}"
                final = linsys.extract_blocks(m, d).final
                if report.det != linsys.det_exact(final):
                    return False, f"final block params {params}: det mismatch"
                checked += 1
        rng = random.Random(20260815)
        sampled = paths.sample_thm1_instances(rng, 50)
        for params in sampled:
            report = paths.verify_thm1(*params)
            if not report.checked:
                return False, f"sampled {params} unchecked: {report.note}"
            if not report.equal:
                return False, f"sampled {params}: identity failed"
            checked += 1
        return True, f"{checked} instances verified exactly"

    return _run(8, "prefactor identity sweep", 300.0, check)


def criterion_9() -> CriterionResult:
    """Closed form equals dynamic programming wherever it applies."""

    def check():
        pairs = 0
        for s in range(15):
            for h in range(s, 15):
                problem = paths.PathProblem(start=(s, s), end=(0, h))
                if paths.count_paths_dp(problem) != paths.single_path_formula(
                    s, h, None
                ):
                    return False, f"free count mismatch at (s={s}, h={h})"
                for L in range(-2, 2 * 14 + 3):
                    if not paths.formula_applicable(s, h, L):
                        continue
                    dp = paths.count_paths_dp(
                        paths.PathProblem(start=(s, s), end=(0, h), barrier=L)
                    )
                    if dp != paths.single_path_formula(s, h, L):
                        return False, f"mismatch at (s={s}, h={h}, L={L})"
                    pairs += 1
        return True, f"{pairs} barrier configurations match"

    return _run(9, "closed form vs dynamic programming", 30.0, check)


def criterion_10() -> CriterionResult:
    """Group algebra identities, element level and 100 random samples."""

    def check():
        rng = random.Random(1234)
        samples = []
        for _ in range(100):
            terms = {}
            for _ in range(rng.randint(1, 12)):
                exp = tuple(rng.randint(0, 8) for _ in range(3))
                if sum(exp) > 8:
                    exp = (exp[0] % 3, exp[1] % 3, exp[2] % 3)
                terms[exp] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            samples.append(Polynomial(terms))
        report = group_ops.verify_identities(samples)
        if not all(report.element_level.values()):
            bad = [k for k, v in report.element_level.items() if not v]
            return False, f"element-level failures: {bad}"
        if not report.passed:
            return False, "sample-level failure"
        return True, "8 identities, element level plus 100 samples"

    return _run(10, "group algebra identities", 10.0, check)


ALL_CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
)


def run_all(indices=None):
    """Run the selected criteria (all by default) and return the results."""
    results = []
    for pos, fn in enumerate(ALL_CRITERIA, start=1):
        if indices is not None and pos not in indices:
            continue
        results.append(fn())
    return results
