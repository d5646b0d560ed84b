"""Timing comparison of the compiled kernels against the NumPy fallback.

Run with `python3 benchmarks/bench_kernels.py`.  Prints one table per
kernel; when the compiled extension is not built, only the fallback
column appears.
"""

import time

import numpy as np

from perronlab import _pure
from perronlab.families import build_family

try:
    from perronlab import _core
except ImportError:
    _core = None

GRAPHS = [
    "cycle:2000",
    "rr:n=2000,d=3,seed=0",
    "lex:cycle:25,empty:20",
    "lex:cycle:50,empty:20",
]

REPEATS = 5


def best_of(fn, *args, repeats=REPEATS):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def bench_case(name, pure_fn, core_fn, args):
    t_pure = best_of(pure_fn, *args)
    if core_fn is None:
        print(f"  {name:<28} python {t_pure * 1e3:8.3f} ms")
        return
    t_core = best_of(core_fn, *args)
    speedup = t_pure / t_core if t_core > 0 else float("inf")
    print(
        f"  {name:<28} python {t_pure * 1e3:8.3f} ms   "
        f"cython {t_core * 1e3:8.3f} ms   x{speedup:5.1f}"
    )


def main():
    print(f"compiled extension: {'present' if _core else 'absent'}")
    rng = np.random.default_rng(0)

    print("\nbfs_distances (full sweep from vertex 0)")
    for spec in GRAPHS:
        g = build_family(spec).graph
        indptr, indices = g.csr
        args = (indptr, indices, 0, g.n)
        bench_case(spec, _pure.bfs_distances, _core.bfs_distances if _core else None, args)

    print("\ncsr_matvec (100 products)")
    for spec in GRAPHS:
        g = build_family(spec).graph
        indptr, indices = g.csr
        x = rng.standard_normal(g.n)

        def many(fn):
            def run(ip, ix, v):
                for _ in range(100):
                    fn(ip, ix, v)
            return run

        bench_case(
            spec,
            many(_pure.csr_matvec),
            many(_core.csr_matvec) if _core else None,
            (indptr, indices, x),
        )

    print("\npower_iteration (tol 1e-12, cap 20000 matvecs)")
    for spec in GRAPHS:
        g = build_family(spec).graph
        indptr, indices = g.csr
        x0 = np.abs(rng.standard_normal(g.n)) + 0.1
        args = (indptr, indices, x0, 1e-12, 1e-12, 20000)
        bench_case(
            spec,
            _pure.power_iteration,
            _core.power_iteration if _core else None,
            args,
        )


if __name__ == "__main__":
    main()
