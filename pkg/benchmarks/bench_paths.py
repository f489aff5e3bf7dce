"""Compare the compiled and pure-Python path kernels.

Run from the repository root after an editable install:

    python3 benchmarks/bench_paths.py

Both backends are imported directly, so the numbers are unaffected by
QUASI3_PURE.  The workloads mirror the two hot spots: single-path DP
counts over the verification sweep, and exhaustive family enumeration on
the block-derived identity instances.
"""

from __future__ import annotations

import argparse
import time

from quasi3 import _pypaths
from quasi3.paths import (
    final_block_instance_params,
    thm1_endpoints,
    thm2_endpoints,
    thm2_grid,
)

try:
    from quasi3 import _speedups
except ImportError:
    _speedups = None


def dp_workload():
    """(x0, y0, x1, y1, barrier) tuples from a verification-sized sweep."""
    work = []
    for inst in thm2_grid(coord_bound=10, nmax=3):
        starts, ends, barrier = thm2_endpoints(*inst)
        for (sx, sy), (ex, ey) in zip(starts, ends):
            work.append((sx, sy, ex, ey, barrier))
    return work


def family_workload():
    """Family instances from the final-block identities, m = 1..3, plus
    larger synthetic families that stress the disjointness walk."""
    work = []
    for m in (1, 2, 3):
        for d in (3 * m + 1, 3 * m + 2):
            params = final_block_instance_params(m, d)
            starts, ends, barrier = thm1_endpoints(*params)
            work.append((starts, ends, barrier))
    starts = tuple((t, t) for t in range(4))
    ends = tuple((0, 6 + 3 * t) for t in range(4))
    work.append((starts, ends, None))
    work.append((starts, ends, 16))
    return work


def run_dp(kernel, work, repeat):
    best = None
    checksum = 0
    for _ in range(repeat):
        start = time.perf_counter()
        checksum = 0
        for x0, y0, x1, y1, barrier in work:
            checksum += kernel.dp_count(x0, y0, x1, y1, barrier)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, checksum


def run_family(kernel, work, repeat):
    best = None
    checksum = 0
    for _ in range(repeat):
        start = time.perf_counter()
        checksum = 0
        for starts, ends, barrier in work:
            checksum += kernel.family_count(starts, ends, barrier, 10**7)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, checksum


def report(label, pure, fast, checksums_match):
    if fast is None:
        print(f"{label}: pure {pure * 1000:8.2f} ms (compiled kernel not built)")
        return
    speedup = pure / fast if fast else float("inf")
    tag = "" if checksums_match else "  COUNTS DISAGREE"
    print(
        f"{label}: pure {pure * 1000:8.2f} ms   compiled {fast * 1000:8.2f} ms"
        f"   speedup {speedup:5.1f}x{tag}"
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    dp_work = dp_workload()
    fam_work = family_workload()
    print(f"dp workload: {len(dp_work)} counts; family workload: {len(fam_work)} instances")

    pure_dp, pure_dp_sum = run_dp(_pypaths, dp_work, args.repeat)
    pure_fam, pure_fam_sum = run_family(_pypaths, fam_work, args.repeat)
    if _speedups is None:
        report("single-path DP   ", pure_dp, None, True)
        report("family enumeration", pure_fam, None, True)
        return
    fast_dp, fast_dp_sum = run_dp(_speedups, dp_work, args.repeat)
    fast_fam, fast_fam_sum = run_family(_speedups, fam_work, args.repeat)
    report("single-path DP    ", pure_dp, fast_dp, pure_dp_sum == fast_dp_sum)
    report("family enumeration", pure_fam, fast_fam, pure_fam_sum == fast_fam_sum)


if __name__ == "__main__":
    main()
