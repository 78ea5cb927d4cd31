"""Pure-Python kernels, used when the compiled ``_kernels`` extension is absent.

Same signatures as the Cython module.  Diagonalisation goes through LAPACK
(``numpy.linalg.eigh``) rather than a Python-level Jacobi loop, which would be
orders of magnitude slower than either alternative.
"""

import numpy as np

GOLDEN = 0.6180339887498949


def eigh(M):
    w, v = np.linalg.eigh(np.asarray(M, dtype=np.complex128))
    return w, v


def eigvalsh(M):
    return np.linalg.eigvalsh(np.asarray(M, dtype=np.complex128))


def lambda_min_affine(A, B, p):
    return float(np.linalg.eigvalsh(p * A + (1.0 - p) * B)[0])


def maximize_lambda_min(A, B, n_grid=101, width=1e-8):
    if n_grid < 2:
        raise ValueError("n_grid must be at least 2")
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)

    def f(p):
        return float(np.linalg.eigvalsh(p * A + (1.0 - p) * B)[0])

    grid = np.linspace(0.0, 1.0, n_grid)
    values = [f(p) for p in grid]
    best_i = int(np.argmax(values))
    best_p, best_f = float(grid[best_i]), values[best_i]

    lo = max(0.0, (best_i - 1) / (n_grid - 1))
    hi = min(1.0, (best_i + 1) / (n_grid - 1))
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > width:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = f(x1)
        if f1 > best_f:
            best_p, best_f = x1, f1
        if f2 > best_f:
            best_p, best_f = x2, f2
    return best_p, best_f
