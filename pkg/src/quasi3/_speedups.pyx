# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice path kernels.

Algorithmic twin of quasi3._pypaths with C-typed inner loops.  Limits
(enforced by the quasi3.paths dispatcher, asserted here): coordinates at
most DP_COORD_LIMIT for dp_count and at most GRID_LIMIT for family_count,
at most K_LIMIT paths per family, budget within a signed 64-bit integer.
"""

from libc.stdint cimport int64_t, uint64_t
from libc.string cimport memset

from quasi3._pypaths import BudgetExceeded

DP_COORD_LIMIT = 24   # dp counts bounded by C(48, 24) < 2**64
GRID_LIMIT = 15       # family vertices live on a 16 x 16 grid
K_LIMIT = 8


cdef struct FamilySpec:
    int k
    int sx[8]
    int sy[8]
    int ex[8]
    int ey[8]
    int barrier
    bint has_barrier


cdef inline bint _blocked(FamilySpec* spec, int x, int y) nogil:
    return spec.has_barrier and x + y == spec.barrier


cdef uint64_t _walk(FamilySpec* spec, int t, int x, int y,
                    uint64_t* used) nogil:
    cdef uint64_t total = 0
    cdef int idx, nx, ny
    cdef int ex = spec.ex[t]
    cdef int ey = spec.ey[t]
    if x == ex and y == ey:
        if t == spec.k - 1:
            return 1
        nx = spec.sx[t + 1]
        ny = spec.sy[t + 1]
        if _blocked(spec, nx, ny):
            return 0
        idx = (nx << 4) | ny
        if used[idx >> 6] & (<uint64_t>1 << (idx & 63)):
            return 0
        used[idx >> 6] ^= <uint64_t>1 << (idx & 63)
        total = _walk(spec, t + 1, nx, ny, used)
        used[idx >> 6] ^= <uint64_t>1 << (idx & 63)
        return total
    if y + 1 <= ey and not _blocked(spec, x, y + 1):
        idx = (x << 4) | (y + 1)
        if not (used[idx >> 6] & (<uint64_t>1 << (idx & 63))):
            used[idx >> 6] ^= <uint64_t>1 << (idx & 63)
            total += _walk(spec, t, x, y + 1, used)
            used[idx >> 6] ^= <uint64_t>1 << (idx & 63)
    if x - 1 >= ex and not _blocked(spec, x - 1, y):
        idx = ((x - 1) << 4) | y
        if not (used[idx >> 6] & (<uint64_t>1 << (idx & 63))):
            used[idx >> 6] ^= <uint64_t>1 << (idx & 63)
            total += _walk(spec, t, x - 1, y, used)
            used[idx >> 6] ^= <uint64_t>1 << (idx & 63)
    return total


def dp_count(int x0, int y0, int x1, int y1, barrier):
    """Barrier-avoiding path count; coordinates within DP_COORD_LIMIT."""
    assert 0 <= x1 <= x0 <= DP_COORD_LIMIT or x1 > x0
    assert 0 <= y0 <= y1 <= DP_COORD_LIMIT or y1 < y0
    if x1 > x0 or y1 < y0:
        return 0
    cdef bint has_barrier = barrier is not None
    cdef int L = barrier if has_barrier else 0
    cdef int height = y1 - y0
    cdef uint64_t col[25]
    cdef uint64_t new[25]
    cdef int t, x
    col[0] = 0 if (has_barrier and x0 + y0 == L) else 1
    for t in range(1, height + 1):
        col[t] = 0 if (has_barrier and x0 + y0 + t == L) else col[t - 1]
    for x in range(x0 - 1, x1 - 1, -1):
        for t in range(height + 1):
            if has_barrier and x + y0 + t == L:
                new[t] = 0
            else:
                new[t] = col[t] + (new[t - 1] if t else 0)
        for t in range(height + 1):
            col[t] = new[t]
    return col[height]


def family_count(starts, ends, barrier, budget):
    """Count pairwise vertex-disjoint path tuples, starts[t] -> ends[t]."""
    cdef FamilySpec spec
    cdef int k = len(starts)
    if k != len(ends):
        raise ValueError("starts and ends must pair up")
    if k == 0:
        return 1
    assert k <= K_LIMIT
    assert 0 <= budget <= <int64_t>2 ** 62
    cdef int64_t product = 1
    cdef int t
    spec.k = k
    spec.has_barrier = barrier is not None
    spec.barrier = barrier if spec.has_barrier else 0
    for t in range(k):
        spec.sx[t] = starts[t][0]
        spec.sy[t] = starts[t][1]
        spec.ex[t] = ends[t][0]
        spec.ey[t] = ends[t][1]
        assert 0 <= spec.ex[t] and 0 <= spec.sy[t]
        assert spec.sx[t] <= GRID_LIMIT and spec.ey[t] <= GRID_LIMIT
        count = dp_count(spec.sx[t], spec.sy[t], spec.ex[t], spec.ey[t], barrier)
        if count == 0:
            return 0
        if product > budget // count + 1:
            product = budget + 1
        else:
            product *= count
    if product > budget:
        prod_py = 1
        for t in range(k):
            prod_py *= dp_count(
                spec.sx[t], spec.sy[t], spec.ex[t], spec.ey[t], barrier
            )
        raise BudgetExceeded(prod_py, budget)

    cdef uint64_t used[4]
    memset(used, 0, sizeof(used))
    cdef int sx = spec.sx[0]
    cdef int sy = spec.sy[0]
    if _blocked(&spec, sx, sy):
        return 0
    cdef int idx = (sx << 4) | sy
    used[idx >> 6] = <uint64_t>1 << (idx & 63)
    return _walk(&spec, 0, sx, sy, used)
