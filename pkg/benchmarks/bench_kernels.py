"""Compare the compiled kernels with the pure-Python/LAPACK fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--dims 2,3,4,8,12,16]

Times eigvalsh on a single Hermitian matrix and the full lambda_min
maximisation over p for random Delta-like pairs.  The dispatch cutoffs in
``entroplex._backend`` were chosen from this table.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from entroplex import _backend


def random_hermitian(n, rng):
    G = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (G + G.conj().T)


def bench(fn, repeat):
    # best of 5 batches, per call
    t = timeit.repeat(fn, number=repeat, repeat=5)
    return min(t) / repeat


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--dims", default="2,3,4,6,8,12,16")
    args = ap.parse_args(argv)
    compiled = _backend.compiled_kernels
    python = _backend.python_kernels
    if compiled is None:
        print("compiled kernels not built; only the fallback is available")
    rng = np.random.default_rng(0)
    print(f"{'n':>4} {'eig cy (us)':>12} {'eig py (us)':>12} {'opt cy (ms)':>12} {'opt py (ms)':>12} {'|dq|':>9}")
    for n in [int(x) for x in args.dims.split(",")]:
        A, B = random_hermitian(n, rng), random_hermitian(n, rng)
        e_py = bench(lambda: python.eigvalsh(A), args.repeat) * 1e6
        o_py = bench(lambda: python.maximize_lambda_min(A, B), max(1, args.repeat // 20)) * 1e3
        if compiled is not None:
            e_cy = bench(lambda: compiled.eigvalsh(A), args.repeat) * 1e6
            o_cy = bench(lambda: compiled.maximize_lambda_min(A, B), max(1, args.repeat // 20)) * 1e3
            dq = abs(compiled.maximize_lambda_min(A, B)[1] - python.maximize_lambda_min(A, B)[1])
            print(f"{n:>4} {e_cy:>12.2f} {e_py:>12.2f} {o_cy:>12.3f} {o_py:>12.3f} {dq:>9.1e}")
        else:
            print(f"{n:>4} {'-':>12} {e_py:>12.2f} {'-':>12} {o_py:>12.3f} {'-':>9}")
    print(f"cutoffs: JACOBI_MAX_DIM={_backend.JACOBI_MAX_DIM} OPTIMIZER_MAX_DIM={_backend.OPTIMIZER_MAX_DIM}")


if __name__ == "__main__":
    main()
