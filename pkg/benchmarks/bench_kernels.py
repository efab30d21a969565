"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--sizes 51 101 201] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from efixlab import kernels
from efixlab.spaces import DELTA_HALVINGS, Domain, max_pair


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[51, 101, 201])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    py = kernels.python_backend
    c = kernels.compiled_backend
    if c is None:
        print("compiled backend unavailable; only the numpy fallback is timed")
    p = max_pair()
    print(f"{'kernel':<18}{'n':>6}{'numpy s':>12}{'cython s':>12}{'speedup':>10}")
    for n in args.sizes:
        pts = Domain(0.0, 1.0, "grid", n).points()
        P = np.ascontiguousarray(p.matrix(pts))
        D = np.ascontiguousarray(p.base_matrix(pts))
        deltas = np.array([0.1 * 2.0**-j for j in range(DELTA_HALVINGS)])
        jobs = {
            "triangle_scan": lambda b: b.triangle_scan(P, 1e-9, 10),
            "ladder_diameters": lambda b: b.ladder_diameters(P, D, deltas),
        }
        for name, job in jobs.items():
            t_py = _best(lambda: job(py), args.repeat)
            if c is None:
                print(f"{name:<18}{n:>6}{t_py:>12.4f}{'-':>12}{'-':>10}")
                continue
            t_c = _best(lambda: job(c), args.repeat)
            print(f"{name:<18}{n:>6}{t_py:>12.4f}{t_c:>12.4f}{t_py / t_c:>9.1f}x")


if __name__ == "__main__":
    main()
