"""Dense complex linear algebra for small Hermitian problems.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Subsystem 0 is
always the leftmost tensor factor.
"""

from __future__ import annotations

from functools import reduce
from typing import NamedTuple, Sequence

import numpy as np

from . import _backend
from .errors import DimensionError, ValidationError

HERMITIAN_TOL = 1e-9
PSD_CLAMP = 1e-10


class HermitianEig(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(M) -> np.ndarray:
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise DimensionError(f"expected a non-empty 2-d matrix, got shape {A.shape}")
    return A


def is_hermitian(M, tol: float = HERMITIAN_TOL) -> bool:
    A = np.asarray(M)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        return False
    return bool(np.max(np.abs(A - A.conj().T), initial=0.0) <= tol)


def hermitize(M, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Check Hermiticity within ``tol`` and return the symmetrised ``(M + M^H)/2``."""
    A = as_matrix(M)
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"matrix is not square: shape {A.shape}")
    dev = np.max(np.abs(A - A.conj().T))
    if dev > tol:
        raise ValidationError(f"matrix is not Hermitian: max |M - M^H| = {dev:.3g} > {tol:g}")
    return 0.5 * (A + A.conj().T)


def hermitian_eig(M) -> HermitianEig:
    """Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.

    Raises ``DimensionError`` for non-square input and ``ValidationError`` when
    ``M`` deviates from Hermitian by more than 1e-9 in any entry.
    """
    H = hermitize(M)
    w, v = _backend.eigh(H)
    return HermitianEig(np.asarray(w, dtype=float), np.asarray(v))


def eigvalsh(M) -> np.ndarray:
    return np.asarray(_backend.eigvalsh(hermitize(M)), dtype=float)


def lambda_min(M) -> float:
    return float(eigvalsh(M)[0])


def lambda_max(M) -> float:
    return float(eigvalsh(M)[-1])


def operator_norm_inf(M) -> float:
    """Largest singular value of ``M``."""
    A = as_matrix(M)
    if A.shape[0] == A.shape[1] and is_hermitian(A, 1e-14 * max(1.0, np.abs(A).max())):
        w = _backend.eigvalsh(0.5 * (A + A.conj().T))
        return float(max(abs(w[0]), abs(w[-1])))
    G = A.conj().T @ A if A.shape[0] >= A.shape[1] else A @ A.conj().T
    w = _backend.eigvalsh(0.5 * (G + G.conj().T))
    return float(np.sqrt(max(w[-1], 0.0)))


def clamp_psd(w: np.ndarray, clamp: float = PSD_CLAMP) -> np.ndarray:
    if w.size and w[0] < -clamp:
        raise ValidationError(f"matrix is not positive semidefinite: eigenvalue {w[0]:.3g} < -{clamp:g}")
    return np.clip(w, 0.0, None)


def psd_sqrt(M) -> np.ndarray:
    w, v = hermitian_eig(M)
    w = clamp_psd(w)
    S = (v * np.sqrt(w)) @ v.conj().T
    return 0.5 * (S + S.conj().T)


def psd_inv_sqrt(M, floor: float = 1e-12) -> np.ndarray:
    w, v = hermitian_eig(M)
    w = clamp_psd(w)
    if w[0] <= floor * max(1.0, w[-1]):
        raise ValidationError("matrix is singular; inverse square root undefined")
    S = (v / np.sqrt(w)) @ v.conj().T
    return 0.5 * (S + S.conj().T)


def is_psd(M, clamp: float = PSD_CLAMP) -> bool:
    try:
        return bool(eigvalsh(M)[0] >= -clamp)
    except ValidationError:
        return False


def tensor_product(*mats) -> np.ndarray:
    """Kronecker product, leftmost factor most significant."""
    if not mats:
        raise ValueError("tensor_product needs at least one operand")
    return reduce(np.kron, (np.asarray(m, dtype=np.complex128) for m in mats))


def _check_dims(M: np.ndarray, dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise DimensionError(f"subsystem dimensions must be positive: {dims}")
    n = int(np.prod(dims))
    if M.shape != (n, n):
        raise DimensionError(f"dims {dims} (product {n}) do not match matrix shape {M.shape}")
    return dims


def partial_trace(M, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Reduce ``M`` on ``dims`` to the subsystems listed in ``keep``.

    The kept subsystems appear in ascending index order in the result.
    """
    A = as_matrix(M)
    dims = _check_dims(A, dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("keep must name at least one subsystem")
    if keep[0] < 0 or keep[-1] >= len(dims):
        raise DimensionError(f"subsystem index out of range for dims {dims}: {keep}")
    n = len(dims)
    T = A.reshape(dims + dims)
    # trace out from the highest index down so remaining axis numbers stay valid
    for k in reversed(range(n)):
        if k in keep:
            continue
        m = T.ndim // 2
        T = np.trace(T, axis1=k, axis2=k + m)
    dk = int(np.prod([dims[k] for k in keep]))
    return T.reshape(dk, dk)


def permute_subsystems(M, dims: Sequence[int], order: Sequence[int]) -> np.ndarray:
    """Reorder tensor factors so that new factor ``i`` is old factor ``order[i]``."""
    A = as_matrix(M)
    dims = _check_dims(A, dims)
    order = [int(o) for o in order]
    if sorted(order) != list(range(len(dims))):
        raise DimensionError(f"order {order} is not a permutation of {len(dims)} subsystems")
    n = len(dims)
    T = A.reshape(dims + dims).transpose(order + [o + n for o in order])
    return T.reshape(A.shape)
