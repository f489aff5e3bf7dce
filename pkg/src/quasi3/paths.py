"""Lattice paths with a diagonal barrier and the two determinant identities.

Paths move NORTH/WEST on the integer lattice; a barrier L forbids every
vertex with x + y == L ("touching the line" includes endpoints).

Three routes to the same numbers, kept deliberately separate:

* count_paths_dp: dynamic programming over the rectangle (the oracle).
* count_paths_formula: the reflection closed form
  binom(h, s) - binom(h, L - s) for (s, s) -> (0, h); valid exactly when
  L is not strictly between the endpoint line-sums 2s and h
  (formula_applicable decides this).
* count_families_bruteforce: exhaustive enumeration of pairwise
  vertex-disjoint path tuples, with a product-of-counts budget guard.

verify_thm2 checks det[ binom(a+bi, c+dj) - binom(a+bi, e-dj) ] against
the family count for starts (c+dj, c+dj), ends (0, a+bi), barrier c+e.
verify_thm1 checks det[ binom(C+ai, E+bj) - binom(D-ai, E+bj) ] against
prefactor * family count, where the family is the thm2 instance obtained
by the substitution recorded in thm1_inner_params.

The heavy kernels live in _speedups (compiled) with _pypaths as the
pure-Python twin; set QUASI3_PURE=1 to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from . import _pypaths
from ._pypaths import BudgetExceeded
from .arith import binom
from .linsys import det_exact

if os.environ.get("QUASI3_PURE"):
    _fast = None
else:
    try:
        from . import _speedups as _fast
    except ImportError:
        _fast = None

DEFAULT_BUDGET = 10**7


def backend() -> str:
    """Which kernel implementation is active: 'compiled' or 'pure-python'."""
    return "compiled" if _fast is not None else "pure-python"


def enumeration_budget() -> int:
    """Default family enumeration budget; QUASI3_BUDGET overrides."""
    raw = os.environ.get("QUASI3_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    value = int(raw)
    if value <= 0:
        raise ValueError("QUASI3_BUDGET must be positive")
    return value


def _check_point(pt):
    x, y = pt
    if not (isinstance(x, int) and isinstance(y, int)):
        raise ValueError(f"lattice point must have integer coordinates: {pt!r}")
    if x < 0 or y < 0:
        raise ValueError(f"lattice point must be in the first quadrant: {pt!r}")
    return (x, y)


@dataclass(frozen=True)
class PathProblem:
    """One NORTH/WEST path problem: start, end, optional barrier sum."""

    start: tuple
    end: tuple
    barrier: object = None  # int or None

    def __post_init__(self):
        s = _check_point(self.start)
        e = _check_point(self.end)
        if e[0] > s[0] or e[1] < s[1]:
            raise ValueError(
                "end must be weakly west and north of start for N/W steps"
            )
        if self.barrier is not None and not isinstance(self.barrier, int):
            raise ValueError("barrier must be an int or None")
        object.__setattr__(self, "start", s)
        object.__setattr__(self, "end", e)


@dataclass(frozen=True)
class FamilyProblem:
    """Paired starts on the diagonal and ends on the y-axis."""

    starts: tuple
    ends: tuple
    barrier: object = None

    def __post_init__(self):
        starts = tuple(_check_point(p) for p in self.starts)
        ends = tuple(_check_point(p) for p in self.ends)
        if len(starts) != len(ends):
            raise ValueError("starts and ends must pair up")
        if any(x != y for x, y in starts):
            raise ValueError("family starts must lie on the diagonal x == y")
        if any(x != 0 for x, _ in ends):
            raise ValueError("family ends must lie on the y-axis")
        if self.barrier is not None and not isinstance(self.barrier, int):
            raise ValueError("barrier must be an int or None")
        object.__setattr__(self, "starts", starts)
        object.__setattr__(self, "ends", ends)


def _dp(x0, y0, x1, y1, barrier):
    if _fast is not None and max(x0, y1) <= _fast.DP_COORD_LIMIT:
        return _fast.dp_count(x0, y0, x1, y1, barrier)
    return _pypaths.dp_count(x0, y0, x1, y1, barrier)


def count_paths_dp(problem: PathProblem) -> int:
    """Exact barrier-avoiding path count by dynamic programming."""
    (x0, y0), (x1, y1) = problem.start, problem.end
    return _dp(x0, y0, x1, y1, problem.barrier)


def count_paths_free(problem: PathProblem) -> int:
    """Path count without any barrier: one binomial."""
    (x0, y0), (x1, y1) = problem.start, problem.end
    return binom((x0 - x1) + (y1 - y0), x0 - x1)


def single_path_formula(s: int, h: int, L) -> int:
    """Reflection closed form for (s, s) -> (0, h) avoiding x + y == L."""
    if L is None:
        return binom(h, s)
    return binom(h, s) - binom(h, L - s)


def formula_applicable(s: int, h: int, L) -> bool:
    """Where the closed form provably equals the true count."""
    if s < 0 or h < s:
        return False
    if L is None:
        return True
    return not (min(2 * s, h) < L < max(2 * s, h))


def count_paths_formula(a, b, c, d, e, i, j) -> int:
    """Matrix entry binom(a+bi, c+dj) - binom(a+bi, e-dj)."""
    return single_path_formula(c + d * j, a + b * i, c + e)


def count_families_bruteforce(problem: FamilyProblem, budget=None) -> int:
    """Exhaustively count pairwise vertex-disjoint path families.

    Raises BudgetExceeded when the product of the individual path counts
    is larger than the budget (default enumeration_budget()).
    """
    if budget is None:
        budget = enumeration_budget()
    starts, ends, barrier = problem.starts, problem.ends, problem.barrier
    use_fast = (
        _fast is not None
        and len(starts) <= _fast.K_LIMIT
        and budget <= 2**62
        and all(max(p) <= _fast.GRID_LIMIT for p in starts + ends)
    )
    kernel = _fast if use_fast else _pypaths
    return kernel.family_count(starts, ends, barrier, budget)


# --- determinant identity: diagonal starts, axis ends ----------------------


def thm2_endpoints(a, b, c, d, e, n):
    """Starts, ends (paired by position) and barrier for an instance."""
    starts = tuple((c + d * j, c + d * j) for j in range(1, n + 1))
    ends = tuple((0, a + b * i) for i in range(1, n + 1))
    return starts, ends, c + e


def thm2_instance_applicable(a, b, c, d, e, n) -> bool:
    """Every entry's closed form is valid and the endpoints are usable.

    Requires ascending distinct starts and ends (b, d >= 1), first-quadrant
    endpoints, and formula_applicable for every (start, end) pair.
    """
    if n < 1 or b < 1 or d < 1:
        return False
    starts, ends, L = thm2_endpoints(a, b, c, d, e, n)
    if starts[0][0] < 0 or ends[0][1] < 0:
        return False
    return all(
        formula_applicable(s, h, L)
        for s, _ in starts
        for _, h in ends
    )


@dataclass(frozen=True)
class Thm2Report:
    params: dict
    entries: tuple
    det: int
    starts: tuple
    ends: tuple
    barrier: int
    applicable: bool
    family_count: object  # int, or None when unchecked
    checked: bool
    equal: object  # bool, or None when unchecked
    note: str = ""


def verify_thm2(a, b, c, d, e, n, budget=None) -> Thm2Report:
    """Compare the determinant with the brute-force family count."""
    if n < 1:
        raise ValueError("matrix size n must be positive")
    entries = tuple(
        tuple(count_paths_formula(a, b, c, d, e, i, j) for j in range(1, n + 1))
        for i in range(1, n + 1)
    )
    det = int(det_exact(entries))
    starts, ends, L = thm2_endpoints(a, b, c, d, e, n)
    params = {"a": a, "b": b, "c": c, "d": d, "e": e, "n": n}
    applicable = thm2_instance_applicable(a, b, c, d, e, n)
    try:
        problem = FamilyProblem(starts=starts, ends=ends, barrier=L)
    except ValueError as exc:
        return Thm2Report(
            params=params,
            entries=entries,
            det=det,
            starts=starts,
            ends=ends,
            barrier=L,
            applicable=False,
            family_count=None,
            checked=False,
            equal=None,
            note=f"family endpoints unusable: {exc}",
        )
    try:
        count = count_families_bruteforce(problem, budget=budget)
    except BudgetExceeded as exc:
        return Thm2Report(
            params=params,
            entries=entries,
            det=det,
            starts=starts,
            ends=ends,
            barrier=L,
            applicable=applicable,
            family_count=None,
            checked=False,
            equal=None,
            note=str(exc),
        )
    return Thm2Report(
        params=params,
        entries=entries,
        det=det,
        starts=starts,
        ends=ends,
        barrier=L,
        applicable=applicable,
        family_count=count,
        checked=True,
        equal=(det == count),
    )


# --- determinant identity: prefactor times family count --------------------


def thm1_inner_params(C, D, E, alpha, beta, k):
    """Parameters of the equivalent diagonal/axis instance."""
    return (
        C + D - E - (k + 1) * beta,
        beta,
        D - (k + 1) * alpha,
        alpha,
        C + (k + 1) * alpha,
    )


def thm1_endpoints(C, D, E, alpha, beta, k):
    """Starts, ends (paired by position) and barrier, in printed order."""
    starts = tuple(
        (D - t * alpha, D - t * alpha) for t in range(k, 0, -1)
    )
    ends = tuple(
        (0, C + D - E - t * beta) for t in range(k, 0, -1)
    )
    return starts, ends, C + D


def thm1_applicable(C, D, E, alpha, beta, k) -> bool:
    """Prefactor denominators nonzero, endpoints usable, entries valid.

    alpha and beta must share a sign so the positional pairing of the
    printed start and end lists is the non-crossing one.
    """
    if k < 1 or alpha * beta <= 0:
        return False
    if any(binom(C + D, C + t * alpha) == 0 for t in range(1, k + 1)):
        return False
    starts, ends, L = thm1_endpoints(C, D, E, alpha, beta, k)
    if any(x < 0 for x, _ in starts) or any(y < 0 for _, y in ends):
        return False
    if len(set(starts)) != k or len(set(ends)) != k:
        return False
    return all(
        formula_applicable(s, h, L) for s, _ in starts for _, h in ends
    )


@dataclass(frozen=True)
class Thm1Report:
    params: dict
    entries: tuple
    det: int
    prefactor: object  # Fraction, or None when undefined
    inner_params: tuple
    starts: tuple
    ends: tuple
    barrier: int
    applicable: bool
    family_count: object
    checked: bool
    equal: object
    note: str = ""


def verify_thm1(C, D, E, alpha, beta, k, budget=None) -> Thm1Report:
    """Compare the determinant with prefactor * family count."""
    if k < 1:
        raise ValueError("matrix size k must be positive")
    entries = tuple(
        tuple(
            binom(C + alpha * i, E + beta * j) - binom(D - alpha * i, E + beta * j)
            for j in range(1, k + 1)
        )
        for i in range(1, k + 1)
    )
    det = int(det_exact(entries))
    params = {"C": C, "D": D, "E": E, "alpha": alpha, "beta": beta, "k": k}
    starts, ends, L = thm1_endpoints(C, D, E, alpha, beta, k)
    inner = thm1_inner_params(C, D, E, alpha, beta, k)

    denominator = 1
    numerator = 1
    for t in range(1, k + 1):
        numerator *= binom(C + D, E + t * beta)
        denominator *= binom(C + D, C + t * alpha)
    if denominator == 0:
        return Thm1Report(
            params=params,
            entries=entries,
            det=det,
            prefactor=None,
            inner_params=inner,
            starts=starts,
            ends=ends,
            barrier=L,
            applicable=False,
            family_count=None,
            checked=False,
            equal=None,
            note="prefactor denominator vanishes",
        )
    prefactor = Fraction(numerator, denominator)
    applicable = thm1_applicable(C, D, E, alpha, beta, k)
    try:
        problem = FamilyProblem(starts=starts, ends=ends, barrier=L)
    except ValueError as exc:
        return Thm1Report(
            params=params,
            entries=entries,
            det=det,
            prefactor=prefactor,
            inner_params=inner,
            starts=starts,
            ends=ends,
            barrier=L,
            applicable=False,
            family_count=None,
            checked=False,
            equal=None,
            note=f"family endpoints unusable: {exc}",
        )
    try:
        count = count_families_bruteforce(problem, budget=budget)
    except BudgetExceeded as exc:
        return Thm1Report(
            params=params,
            entries=entries,
            det=det,
            prefactor=prefactor,
            inner_params=inner,
            starts=starts,
            ends=ends,
            barrier=L,
            applicable=applicable,
            family_count=None,
            checked=False,
            equal=None,
            note=str(exc),
        )
    return Thm1Report(
        params=params,
        entries=entries,
        det=det,
        prefactor=prefactor,
        inner_params=inner,
        starts=starts,
        ends=ends,
        barrier=L,
        applicable=applicable,
        family_count=count,
        checked=True,
        equal=(det == prefactor * count),
    )


# --- block-derived instances ------------------------------------------------


def block_instance_params(m: int, f: int, d: int):
    """Identity parameters whose matrix is the transpose of leading block f."""
    if not (1 <= f <= m):
        raise ValueError("need 1 <= f <= m")
    if d not in (3 * m + 1, 3 * m + 2):
        raise ValueError(f"degree must be {3 * m + 1} or {3 * m + 2}")
    return (d + 2 - f, -1, 2 * m + 1, -1, -2, f)


def final_block_instance_params(m: int, d: int):
    """Identity parameters whose matrix is the transpose of the final block."""
    if m < 1:
        raise ValueError("need m >= 1")
    if d not in (3 * m + 1, 3 * m + 2):
        raise ValueError(f"degree must be {3 * m + 1} or {3 * m + 2}")
    return (d - m + 1, -1, 2 * m + 1, -1, -2, m)


# --- instance generators ----------------------------------------------------


def thm2_grid(coord_bound: int = 12, nmax: int = 3, product_cap: int = 200000):
    """Deterministic sweep of applicable instances for exhaustive checks.

    Yields (a, b, c, d, e, n) tuples whose endpoints stay within
    coord_bound, whose entries are all formula-valid, and whose family
    enumeration is within product_cap.
    """
    for n in range(1, nmax + 1):
        for b in range(1, 4):
            for d in range(1, 4):
                for c in range(0, 4):
                    if c + n * d > coord_bound:
                        continue
                    for a in range(-3, coord_bound + 1):
                        if a + n * b > coord_bound or a + b < 0:
                            continue
                        for L in range(-1, 2 * coord_bound + 2):
                            e = L - c
                            if not thm2_instance_applicable(a, b, c, d, e, n):
                                continue
                            starts, ends, _ = thm2_endpoints(a, b, c, d, e, n)
                            product = 1
                            for (sx, sy), (ex, ey) in zip(starts, ends):
                                product *= _dp(sx, sy, ex, ey, L)
                            if product > product_cap:
                                continue
                            yield (a, b, c, d, e, n)


def sample_thm1_instances(rng, count: int, coord_bound: int = 12):
    """Seeded sample of applicable prefactor-identity instances."""
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 200000:
            raise RuntimeError("sampler failed to find enough instances")
        k = rng.randint(1, 3)
        alpha = rng.choice((-2, -1, 1, 2))
        beta = rng.choice((-2, -1, 1, 2))
        D = rng.randint(-4, coord_bound)
        C = rng.randint(-4, 2 * coord_bound)
        E = rng.randint(-4, coord_bound)
        if not thm1_applicable(C, D, E, alpha, beta, k):
            continue
        starts, ends, L = thm1_endpoints(C, D, E, alpha, beta, k)
        if any(x > coord_bound for x, _ in starts):
            continue
        if any(y > coord_bound for _, y in ends):
            continue
        product = 1
        for (sx, sy), (ex, ey) in zip(starts, ends):
            product *= _dp(sx, sy, ex, ey, L)
        if product > 200000:
            continue
        out.append((C, D, E, alpha, beta, k))
    return out
