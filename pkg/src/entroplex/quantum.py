"""States, measurements, channels, entropies and random sampling.

All entropies are in bits.  Composite systems follow the convention of
``linalg``: subsystem 0 is the leftmost tensor factor.
"""

from __future__ import annotations

import math
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .errors import DimensionError, ValidationError

TRACE_TOL = 1e-9
COMPLETENESS_TOL = 1e-9
ENTROPY_FLOOR = 1e-12


class RandomSource:
    """Seeded stream of variates.

    Child sources for sweep instances are derived from ``(seed, index)`` so
    that results do not depend on evaluation order.
    """

    def __init__(self, seed: int):
        self.seed = int(seed) % 2**64
        self.generator = np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed)))

    def spawn(self, index: int) -> "RandomSource":
        child = np.random.SeedSequence([self.seed, int(index)]).generate_state(1, np.uint64)[0]
        return RandomSource(int(child))

    def normal(self, size=None):
        return self.generator.standard_normal(size)

    def uniform(self, low=0.0, high=1.0, size=None):
        return self.generator.uniform(low, high, size)

    def integers(self, low, high, size=None):
        """Integers in the closed range [low, high]."""
        return self.generator.integers(low, high, size=size, endpoint=True)

    def complex_normal(self, shape) -> np.ndarray:
        g = self.generator.standard_normal(shape) + 1j * self.generator.standard_normal(shape)
        return g / math.sqrt(2.0)

    def __repr__(self):
        return f"RandomSource(seed={self.seed})"


class DensityMatrix:
    """A unit-trace PSD operator on a composite space with dimensions ``dims``."""

    def __init__(self, matrix, dims: Sequence[int] | None = None, *, check: bool = True):
        M = linalg.as_matrix(matrix)
        if M.shape[0] != M.shape[1]:
            raise DimensionError(f"density matrix must be square, got {M.shape}")
        dims = (M.shape[0],) if dims is None else tuple(int(d) for d in dims)
        if int(np.prod(dims)) != M.shape[0]:
            raise DimensionError(f"dims {dims} do not match matrix dimension {M.shape[0]}")
        if check:
            M = linalg.hermitize(M)
            tr = np.trace(M).real
            if abs(tr - 1.0) > TRACE_TOL:
                raise ValidationError(f"density matrix trace is {tr:.12g}, not 1")
            w = linalg.eigvalsh(M)
            if w[0] < -linalg.PSD_CLAMP:
                raise ValidationError(f"density matrix has negative eigenvalue {w[0]:.3g}")
            self.__dict__["spectrum"] = np.clip(w, 0.0, None)
        self.matrix = M
        self.dims = dims

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def spectrum(self) -> np.ndarray:
        return np.clip(linalg.eigvalsh(self.matrix), 0.0, None)

    def reduce(self, keep: Iterable[int] | int) -> "DensityMatrix":
        keep = [keep] if isinstance(keep, (int, np.integer)) else sorted(set(keep))
        if keep == list(range(len(self.dims))):
            return self
        M = linalg.partial_trace(self.matrix, self.dims, keep)
        return DensityMatrix(M, [self.dims[k] for k in keep], check=False)

    def permute(self, order: Sequence[int]) -> "DensityMatrix":
        M = linalg.permute_subsystems(self.matrix, self.dims, order)
        return DensityMatrix(M, [self.dims[o] for o in order], check=False)

    def purity(self) -> float:
        return float(np.real(np.vdot(self.matrix, self.matrix)))

    def __repr__(self):
        return f"DensityMatrix(dims={list(self.dims)})"


class Povm:
    """Finite list of PSD effects on a ``dim``-dimensional space summing to identity."""

    def __init__(self, elements, *, check: bool = True):
        elems = [linalg.as_matrix(E) for E in elements]
        if not elems:
            raise ValidationError("a POVM needs at least one element")
        d = elems[0].shape[0]
        for E in elems:
            if E.shape != (d, d):
                raise DimensionError(f"POVM elements must all be {d}x{d}, got {E.shape}")
        if check:
            elems = [linalg.hermitize(E) for E in elems]
            for i, E in enumerate(elems):
                w = linalg.eigvalsh(E)
                if w[0] < -linalg.PSD_CLAMP:
                    raise ValidationError(f"POVM element {i} is not PSD (eigenvalue {w[0]:.3g})")
            dev = np.abs(sum(elems) - np.eye(d)).max()
            if dev > COMPLETENESS_TOL:
                raise ValidationError(f"POVM elements do not sum to identity (max deviation {dev:.3g})")
        self.elements = elems
        self.dim = d

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def sqrt_elements(self) -> list[np.ndarray]:
        return [linalg.psd_sqrt(E) for E in self.elements]

    @cached_property
    def rank1_vectors(self) -> np.ndarray | None:
        """Columns ``|e_j>`` with ``E_j = |e_j><e_j|`` if every element is a rank-1 projector."""
        vecs = []
        for E in self.elements:
            if abs(np.trace(E).real - 1.0) > 1e-9:
                return None
            if np.abs(E @ E - E).max() > 1e-9:
                return None
            w, v = linalg.hermitian_eig(E)
            vecs.append(v[:, -1])
        return np.column_stack(vecs)

    def probabilities(self, rho_a) -> np.ndarray:
        R = rho_a.matrix if isinstance(rho_a, DensityMatrix) else np.asarray(rho_a)
        if R.shape != (self.dim, self.dim):
            raise DimensionError(f"state of dimension {R.shape[0]} vs POVM dimension {self.dim}")
        # Tr(E R) = sum_ab E_ab R_ba
        return np.array([np.real(np.sum(E * R.T)) for E in self.elements])

    def tensor(self, other: "Povm") -> "Povm":
        return Povm(
            [linalg.tensor_product(E, F) for E in self.elements for F in other.elements],
            check=False,
        )

    def __repr__(self):
        return f"Povm(dim={self.dim}, n={len(self)})"


class OrthonormalBasis:
    """Basis given by a unitary whose column ``j`` is ``|x_j>``."""

    def __init__(self, unitary, *, check: bool = True):
        U = linalg.as_matrix(unitary)
        if U.shape[0] != U.shape[1]:
            raise DimensionError(f"basis matrix must be square, got {U.shape}")
        if check:
            dev = np.abs(U.conj().T @ U - np.eye(U.shape[0])).max()
            if dev > 1e-9:
                raise ValidationError(f"basis matrix is not unitary (max |U^H U - I| = {dev:.3g})")
        self.unitary = U

    @property
    def dim(self) -> int:
        return self.unitary.shape[0]

    def vector(self, j: int) -> np.ndarray:
        return self.unitary[:, j]

    def tensor(self, other: "OrthonormalBasis") -> "OrthonormalBasis":
        return OrthonormalBasis(np.kron(self.unitary, other.unitary), check=False)

    @classmethod
    def computational(cls, d: int) -> "OrthonormalBasis":
        return cls(np.eye(d, dtype=np.complex128), check=False)

    @classmethod
    def fourier(cls, d: int) -> "OrthonormalBasis":
        j = np.arange(d)
        return cls(np.exp(2j * np.pi * np.outer(j, j) / d) / math.sqrt(d), check=False)

    def __repr__(self):
        return f"OrthonormalBasis(dim={self.dim})"


class KrausChannel:
    """Trace-preserving map in Kraus form; every operator is ``d_out x d_in``."""

    def __init__(self, kraus_ops, *, check: bool = True):
        ops = [linalg.as_matrix(K) for K in kraus_ops]
        if not ops:
            raise ValidationError("a channel needs at least one Kraus operator")
        shape = ops[0].shape
        for K in ops:
            if K.shape != shape:
                raise DimensionError(f"Kraus operators must share a shape, got {shape} and {K.shape}")
        if check:
            dev = np.abs(sum(K.conj().T @ K for K in ops) - np.eye(shape[1])).max()
            if dev > COMPLETENESS_TOL:
                raise ValidationError(f"channel is not trace preserving (max |sum K^H K - I| = {dev:.3g})")
        self.kraus_ops = ops
        self.d_out, self.d_in = shape

    @classmethod
    def identity(cls, d: int) -> "KrausChannel":
        return cls([np.eye(d)], check=False)

    @classmethod
    def depolarizing(cls, d: int, p: float = 1.0) -> "KrausChannel":
        """``rho -> (1-p) rho + p I/d`` built from the d^2 generalised Pauli operators."""
        X = np.roll(np.eye(d), 1, axis=0)
        Z = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
        ops = []
        for a in range(d):
            for b in range(d):
                w = p / d**2 + (1.0 - p if a == b == 0 else 0.0)
                ops.append(math.sqrt(w) * np.linalg.matrix_power(X, a) @ np.linalg.matrix_power(Z, b))
        return cls(ops, check=False)

    @classmethod
    def dephasing(cls, d: int) -> "KrausChannel":
        """Complete dephasing in the computational basis."""
        ops = []
        for j in range(d):
            P = np.zeros((d, d), dtype=np.complex128)
            P[j, j] = 1.0
            ops.append(P)
        return cls(ops, check=False)

    def __repr__(self):
        return f"KrausChannel(d_in={self.d_in}, d_out={self.d_out}, n={len(self.kraus_ops)})"


# --- construction helpers --------------------------------------------------


def pure_state(psi, dims: Sequence[int] | None = None) -> DensityMatrix:
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    psi = psi / np.linalg.norm(psi)
    return DensityMatrix(np.outer(psi, psi.conj()), dims, check=False)


def maximally_mixed(d: int) -> DensityMatrix:
    return DensityMatrix(np.eye(d, dtype=np.complex128) / d, check=False)


def maximally_entangled(d: int) -> DensityMatrix:
    """``|phi> = d^{-1/2} sum_i |i>|i>`` on dims ``(d, d)``."""
    psi = np.eye(d, dtype=np.complex128).ravel() / math.sqrt(d)
    return pure_state(psi, (d, d))


def product_state(*states: DensityMatrix) -> DensityMatrix:
    dims = [d for s in states for d in s.dims]
    return DensityMatrix(linalg.tensor_product(*(s.matrix for s in states)), dims, check=False)


def basis_as_povm(basis: OrthonormalBasis) -> Povm:
    U = basis.unitary
    povm = Povm([np.outer(U[:, j], U[:, j].conj()) for j in range(basis.dim)], check=False)
    povm.__dict__["rank1_vectors"] = U
    povm.__dict__["sqrt_elements"] = povm.elements
    return povm


# --- measurement -----------------------------------------------------------


def measurement_channel(rho: DensityMatrix, povm: Povm, system: int = 0) -> DensityMatrix:
    """Apply ``rho -> sum_j |j><j| (x) Tr_A[(X_j (x) 1) rho]`` to subsystem ``system``.

    The classical register replaces the measured subsystem and is placed
    first; the remaining subsystems keep their relative order.
    """
    dims = list(rho.dims)
    if not 0 <= system < len(dims):
        raise DimensionError(f"no subsystem {system} in dims {dims}")
    if dims[system] != povm.dim:
        raise DimensionError(f"POVM acts on dimension {povm.dim}, subsystem {system} has {dims[system]}")
    if system != 0:
        order = [system] + [i for i in range(len(dims)) if i != system]
        rho = rho.permute(order)
        dims = list(rho.dims)
    da = dims[0]
    rest = dims[1:]
    dr = int(np.prod(rest)) if rest else 1
    T = rho.matrix.reshape(da, dr, da, dr)
    n = len(povm)
    out = np.zeros((n * dr, n * dr), dtype=np.complex128)
    for j, E in enumerate(povm.elements):
        # Tr_A[(E (x) 1) rho]_{rs} = sum_ab E_ab rho_{(b r),(a s)}
        out[j * dr:(j + 1) * dr, j * dr:(j + 1) * dr] = np.einsum("ab,bras->rs", E, T)
    return DensityMatrix(out, [n] + rest, check=False)


def post_measurement_state(rho: DensityMatrix, povm: Povm) -> DensityMatrix:
    """``sum_j |j><j|_X (x) (sqrt(X_j) (x) 1) rho (sqrt(X_j) (x) 1)`` on X (x) A (x) rest.

    This is the Naimark dilation output with the copy register traced out.
    """
    dims = list(rho.dims)
    if dims[0] != povm.dim:
        raise DimensionError(f"POVM acts on dimension {povm.dim}, subsystem 0 has {dims[0]}")
    d = rho.dim
    dr = d // dims[0]
    n = len(povm)
    eye = np.eye(dr)
    out = np.zeros((n * d, n * d), dtype=np.complex128)
    for j, S in enumerate(povm.sqrt_elements):
        K = np.kron(S, eye)
        out[j * d:(j + 1) * d, j * d:(j + 1) * d] = K @ rho.matrix @ K.conj().T
    return DensityMatrix(out, [n] + dims, check=False)


# --- entropies -------------------------------------------------------------


def entropy_of_spectrum(w) -> float:
    w = np.asarray(w, dtype=float)
    w = w[w > ENTROPY_FLOOR]
    return float(-np.sum(w * np.log2(w)))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """``-Tr(rho log2 rho)`` in bits."""
    return entropy_of_spectrum(rho.spectrum)


def shannon_entropy(p) -> float:
    return entropy_of_spectrum(p)


def _as_index_list(x, n: int) -> list[int]:
    idx = [x] if isinstance(x, (int, np.integer)) else list(x)
    idx = sorted(set(int(i) for i in idx))
    if not idx or idx[0] < 0 or idx[-1] >= n:
        raise DimensionError(f"invalid subsystem selection {x} for {n} subsystems")
    return idx


def conditional_entropy(rho: DensityMatrix, cond) -> float:
    """``H(S|C) = H(SC) - H(C)`` where C is ``cond`` and S is every other subsystem."""
    c = _as_index_list(cond, len(rho.dims))
    if len(c) == len(rho.dims):
        raise DimensionError("conditioning on every subsystem leaves nothing to condition")
    return von_neumann_entropy(rho) - von_neumann_entropy(rho.reduce(c))


def mutual_information(rho: DensityMatrix, first, second=None) -> float:
    """``I(S:C) = H(S) + H(C) - H(SC)``; ``second`` defaults to the complement of ``first``."""
    n = len(rho.dims)
    s = _as_index_list(first, n)
    c = [i for i in range(n) if i not in s] if second is None else _as_index_list(second, n)
    if not c or set(s) & set(c):
        raise DimensionError(f"invalid bipartition {s} | {c}")
    joint = rho.reduce(sorted(s + c))
    return (
        von_neumann_entropy(rho.reduce(s))
        + von_neumann_entropy(rho.reduce(c))
        - von_neumann_entropy(joint)
    )


def classical_mutual_information(joint) -> float:
    """Mutual information of a joint probability table ``p[x, y]``."""
    p = np.asarray(joint, dtype=float)
    return shannon_entropy(p.sum(axis=1)) + shannon_entropy(p.sum(axis=0)) - shannon_entropy(p.ravel())


def relative_entropy(rho: DensityMatrix, sigma) -> float:
    """``D(rho || sigma) = Tr rho log2 rho - Tr rho log2 sigma``; ``math.inf`` off-support."""
    S = sigma.matrix if isinstance(sigma, DensityMatrix) else linalg.as_matrix(sigma)
    if S.shape != rho.matrix.shape:
        raise DimensionError(f"dimension mismatch: {rho.matrix.shape} vs {S.shape}")
    w, v = linalg.hermitian_eig(S)
    w = linalg.clamp_psd(w)
    # weights of rho along sigma's eigenvectors
    weights = np.real(np.einsum("ia,ij,ja->a", v.conj(), rho.matrix, v))
    support = w > ENTROPY_FLOOR
    if np.sum(weights[~support]) > 1e-10:
        return math.inf
    cross = float(np.sum(weights[support] * np.log2(w[support])))
    return -von_neumann_entropy(rho) - cross


# --- channels --------------------------------------------------------------


def apply_channel(channel: KrausChannel, rho: DensityMatrix, system: int = 0) -> DensityMatrix:
    """Apply ``channel`` to subsystem ``system`` of ``rho``."""
    dims = list(rho.dims)
    if dims[system] != channel.d_in:
        raise DimensionError(f"channel input dimension {channel.d_in} vs subsystem dimension {dims[system]}")
    left = int(np.prod(dims[:system])) if system else 1
    right = int(np.prod(dims[system + 1:])) if system + 1 < len(dims) else 1
    out = 0
    for K in channel.kraus_ops:
        L = linalg.tensor_product(np.eye(left), K, np.eye(right))
        out = out + L @ rho.matrix @ L.conj().T
    new_dims = dims[:system] + [channel.d_out] + dims[system + 1:]
    return DensityMatrix(out, new_dims, check=False)


def choi_state(channel: KrausChannel, d: int | None = None) -> DensityMatrix:
    """``(1 (x) E)(|phi><phi|)`` on dims ``(d, d_out)``."""
    d = channel.d_in if d is None else d
    if d != channel.d_in:
        raise DimensionError(f"channel input dimension {channel.d_in} vs requested {d}")
    return apply_channel(channel, maximally_entangled(d), system=1)


def coherent_information(channel: KrausChannel, d: int | None = None) -> float:
    """``-H(A|B)`` of the Choi state."""
    return -conditional_entropy(choi_state(channel, d), cond=1)


def purify(rho: DensityMatrix) -> DensityMatrix:
    """Pure state on ``rho.dims + (rank,)`` whose marginal on the original systems is ``rho``."""
    w, v = linalg.hermitian_eig(rho.matrix)
    w = np.clip(w, 0.0, None)
    keep = w > ENTROPY_FLOOR
    w, v = w[keep], v[:, keep]
    r = len(w)
    psi = (v * np.sqrt(w)).reshape(rho.dim, r).ravel()
    return pure_state(psi, list(rho.dims) + [r])


# --- random sampling -------------------------------------------------------


def haar_unitary(d: int, rng: RandomSource) -> OrthonormalBasis:
    """Haar-random unitary via QR of a complex Ginibre matrix with R's diagonal phases divided out."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    Z = rng.complex_normal((d, d))
    Q, R = np.linalg.qr(Z)
    diag = np.diagonal(R)
    Q = Q * (diag / np.abs(diag))
    return OrthonormalBasis(Q, check=False)


def random_state_vector(d: int, rng: RandomSource) -> np.ndarray:
    psi = rng.complex_normal(d)
    return psi / np.linalg.norm(psi)


def random_pure_state(dims, rng: RandomSource) -> DensityMatrix:
    """Haar-random pure state; ``dims`` is a dimension or a tuple of subsystem dimensions."""
    dims = (int(dims),) if isinstance(dims, (int, np.integer)) else tuple(int(d) for d in dims)
    return pure_state(random_state_vector(int(np.prod(dims)), rng), dims)


def random_density_matrix(dims, rng: RandomSource, env_dim: int | None = None) -> DensityMatrix:
    """Marginal of a Haar pure state on ``dims (x) env``.

    ``env_dim`` defaults to the system dimension (Hilbert-Schmidt measure);
    smaller values give lower-rank states.
    """
    dims = (int(dims),) if isinstance(dims, (int, np.integer)) else tuple(int(d) for d in dims)
    d = int(np.prod(dims))
    k = d if env_dim is None else int(env_dim)
    G = rng.complex_normal((d, k))
    M = G @ G.conj().T
    M = M / np.trace(M).real
    return DensityMatrix(0.5 * (M + M.conj().T), dims, check=False)


def random_psd(d: int, rng: RandomSource, rank: int | None = None) -> np.ndarray:
    G = rng.complex_normal((d, d if rank is None else rank))
    M = G @ G.conj().T
    return 0.5 * (M + M.conj().T)


def random_povm(d: int, n: int, rng: RandomSource, max_retries: int = 10) -> Povm:
    """``X_i = S^{-1/2} G_i S^{-1/2}`` with ``G_i`` random PSD and ``S = sum G_i``."""
    if n < 1:
        raise ValueError("a POVM needs at least one element")
    if n == 1:
        return Povm([np.eye(d, dtype=np.complex128)], check=False)
    for _ in range(max_retries):
        ranks = rng.integers(1, d, size=n)
        if ranks.sum() < d:
            ranks[0] = d
        G = [random_psd(d, rng, int(r)) for r in ranks]
        try:
            T = linalg.psd_inv_sqrt(sum(G))
        except ValidationError:
            continue
        elems = [T @ g @ T for g in G]
        elems = [0.5 * (E + E.conj().T) for E in elems]
        return Povm(elems, check=False)
    raise ValidationError(f"could not draw a well-conditioned POVM after {max_retries} attempts")


def random_projective_povm(d: int, n: int, rng: RandomSource) -> Povm:
    """Projectors onto ``n`` non-empty groups of columns of a Haar unitary."""
    if not 1 <= n <= d:
        raise ValueError(f"need 1 <= n <= d, got n={n}, d={d}")
    U = haar_unitary(d, rng).unitary
    cuts = np.sort(rng.generator.choice(np.arange(1, d), size=n - 1, replace=False)) if n > 1 else []
    groups = np.split(np.arange(d), cuts)
    elems = [U[:, g] @ U[:, g].conj().T for g in groups]
    povm = Povm(elems, check=False)
    povm.__dict__["sqrt_elements"] = povm.elements
    return povm


def random_channel(d_in: int, d_out: int, n_kraus: int, rng: RandomSource) -> KrausChannel:
    """Kraus operators cut from the first ``d_in`` columns of a Haar unitary."""
    N = d_out * n_kraus
    if N < d_in:
        raise ValueError("d_out * n_kraus must be at least d_in")
    V = haar_unitary(N, rng).unitary[:, :d_in]
    return KrausChannel([V[k * d_out:(k + 1) * d_out, :] for k in range(n_kraus)], check=False)
