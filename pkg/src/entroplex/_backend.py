"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
kernels take over.  Set ``ENTROPLEX_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

python_kernels = _kernels_py
compiled_kernels = None

if os.environ.get("ENTROPLEX_PURE_PYTHON") != "1":
    try:
        from . import _kernels as compiled_kernels
    except ImportError:
        compiled_kernels = None

kernels = compiled_kernels if compiled_kernels is not None else python_kernels
BACKEND = "cython" if compiled_kernels is not None else "python"

# Crossovers measured by benchmarks/bench_kernels.py: Jacobi beats LAPACK on
# single calls only for tiny matrices, while the fused optimiser wins longer
# because it avoids per-evaluation interpreter overhead.
JACOBI_MAX_DIM = 4
OPTIMIZER_MAX_DIM = 8


def eigh(M):
    if compiled_kernels is not None and M.shape[0] <= JACOBI_MAX_DIM:
        return compiled_kernels.eigh(M)
    return python_kernels.eigh(M)


def eigvalsh(M):
    if compiled_kernels is not None and M.shape[0] <= JACOBI_MAX_DIM:
        return compiled_kernels.eigvalsh(M)
    return python_kernels.eigvalsh(M)


def lambda_min_affine(A, B, p):
    if compiled_kernels is not None and A.shape[0] <= JACOBI_MAX_DIM:
        return compiled_kernels.lambda_min_affine(A, B, p)
    return python_kernels.lambda_min_affine(A, B, p)


def maximize_lambda_min(A, B, n_grid=101, width=1e-8):
    if compiled_kernels is not None and A.shape[0] <= OPTIMIZER_MAX_DIM:
        return compiled_kernels.maximize_lambda_min(A, B, n_grid, width)
    return python_kernels.maximize_lambda_min(A, B, n_grid, width)
