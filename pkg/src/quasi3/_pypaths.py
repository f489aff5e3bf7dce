"""Pure-Python lattice path kernels.

Same algorithms as the compiled _speedups twin.  This version is slower
but has no coordinate-size limits; it is the fallback when the extension
is not built (or QUASI3_PURE is set) and the reference in benchmarks.

Paths take unit NORTH (+y) and WEST (-x) steps.  A barrier L forbids
every vertex with x + y == L.  Families pair starts[t] with ends[t] and
count tuples of pairwise vertex-disjoint paths.
"""

from __future__ import annotations


class BudgetExceeded(Exception):
    """Family enumeration would visit more tuples than the budget allows."""

    def __init__(self, product, budget):
        super().__init__(
            f"enumeration budget exceeded: {product} candidate tuples > {budget}"
        )
        self.product = product
        self.budget = budget


def dp_count(x0: int, y0: int, x1: int, y1: int, barrier) -> int:
    """Barrier-avoiding path count from (x0, y0) to (x1, y1), exact."""
    if x1 > x0 or y1 < y0:
        return 0
    height = y1 - y0
    blocked = lambda x, y: barrier is not None and x + y == barrier
    col = [0] * (height + 1)
    col[0] = 0 if blocked(x0, y0) else 1
    for t in range(1, height + 1):
        col[t] = 0 if blocked(x0, y0 + t) else col[t - 1]
    for x in range(x0 - 1, x1 - 1, -1):
        new = [0] * (height + 1)
        for t in range(height + 1):
            if blocked(x, y0 + t):
                new[t] = 0
            else:
                new[t] = col[t] + (new[t - 1] if t else 0)
        col = new
    return col[height]


def family_count(starts, ends, barrier, budget: int) -> int:
    """Count pairwise vertex-disjoint path tuples, starts[t] -> ends[t].

    The a-priori guard is the product of the individual barrier-avoiding
    path counts; when it exceeds the budget a BudgetExceeded is raised
    (distinct from a plain zero count).
    """
    k = len(starts)
    if k != len(ends):
        raise ValueError("starts and ends must pair up")
    if k == 0:
        return 1
    product = 1
    for (sx, sy), (ex, ey) in zip(starts, ends):
        product *= dp_count(sx, sy, ex, ey, barrier)
    if product == 0:
        return 0
    if product > budget:
        raise BudgetExceeded(product, budget)

    width = max(x for x, _ in starts) + 1
    top = max(y for _, y in ends) + 1

    def bit(x, y):
        return 1 << (x * top + y)

    def blocked(x, y):
        return barrier is not None and x + y == barrier

    def walk(t, x, y, used):
        ex, ey = ends[t]
        if x == ex and y == ey:
            if t == k - 1:
                return 1
            nx, ny = starts[t + 1]
            if blocked(nx, ny) or used & bit(nx, ny):
                return 0
            return walk(t + 1, nx, ny, used | bit(nx, ny))
        total = 0
        if y + 1 <= ey and not blocked(x, y + 1):
            b = bit(x, y + 1)
            if not used & b:
                total += walk(t, x, y + 1, used | b)
        if x - 1 >= ex and not blocked(x - 1, y):
            b = bit(x - 1, y)
            if not used & b:
                total += walk(t, x - 1, y, used | b)
        return total

    sx, sy = starts[0]
    if blocked(sx, sy):
        return 0
    return walk(0, sx, sy, bit(sx, sy))
