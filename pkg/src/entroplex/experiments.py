"""Numerical verification of the uncertainty and exclusion inequalities.

Each ``verify_*`` function evaluates both sides of one inequality on one
instance and returns ``VerificationRecord`` objects; ``run_suite`` drives
seeded random sweeps over them.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import bounds, linalg
from .errors import DimensionError, ValidationError
from .quantum import (
    DensityMatrix,
    OrthonormalBasis,
    Povm,
    RandomSource,
    conditional_entropy,
    haar_unitary,
    maximally_entangled,
    measurement_channel,
    mutual_information,
    post_measurement_state,
    purify,
    random_density_matrix,
    random_povm,
    random_projective_povm,
    random_psd,
    random_pure_state,
    relative_entropy,
    von_neumann_entropy,
)

SLACK_TOL = 1e-7

SUITES = (
    "ur-bipartite",
    "ur-tripartite",
    "ur-povm",
    "ier",
    "pinching",
    "sum-norm",
    "rel-entropy",
    "generic-unitary",
)

PRESETS = {"smoke": 50, "full": 500}


@dataclass
class VerificationRecord:
    """One evaluated inequality ``lhs >= rhs`` or ``lhs <= rhs``.

    ``slack`` is signed so that a non-negative value means the inequality
    holds: ``lhs - rhs`` for ``>=`` and ``rhs - lhs`` for ``<=``.
    """

    theorem: str
    relation: str
    lhs: float
    rhs: float
    dims: tuple = ()
    seed: int | None = None
    tol: float = SLACK_TOL
    details: dict = field(default_factory=dict)

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs if self.relation == ">=" else self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        return bool(self.slack >= -self.tol)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["dims"] = list(self.dims)
        d["slack"] = self.slack
        d["passed"] = self.passed
        return d


def _povm(m) -> Povm:
    return bounds.as_povm(m)


def _check_on_a(rho: DensityMatrix, *measurements):
    for m in measurements:
        if m.dim != rho.dims[0]:
            raise DimensionError(f"measurement dimension {m.dim} vs subsystem A dimension {rho.dims[0]}")


def measured_conditional_entropy(rho: DensityMatrix, povm: Povm, memory: Sequence[int]) -> float:
    """``H(X|M)`` after measuring subsystem 0 of ``rho`` with ``povm``; ``memory`` indexes ``rho``'s subsystems."""
    cq = measurement_channel(rho, povm)
    # register is subsystem 0 of cq; subsystem i >= 1 of rho keeps index i
    keep = [0] + sorted(memory)
    cq = cq.reduce(keep)
    if len(keep) == 1:
        return von_neumann_entropy(cq)
    return conditional_entropy(cq, list(range(1, len(keep))))


def measured_mutual_information(rho: DensityMatrix, povm: Povm, memory: Sequence[int]) -> float:
    cq = measurement_channel(rho, povm)
    keep = [0] + sorted(memory)
    cq = cq.reduce(keep)
    return mutual_information(cq, [0], list(range(1, len(keep))))


def verify_bipartite_ur(rho_ab: DensityMatrix, X, Z, seed=None) -> list[VerificationRecord]:
    """``H(X|B) + H(Z|B) >= q(rho_A) + H(A|B)``, followed by the same check with ``q_MU``."""
    X, Z = _povm(X), _povm(Z)
    _check_on_a(rho_ab, X, Z)
    rho_a = rho_ab.reduce(0)
    lhs = measured_conditional_entropy(rho_ab, X, [1]) + measured_conditional_entropy(rho_ab, Z, [1])
    h_ab = conditional_entropy(rho_ab, 1)
    q_rho = bounds.q_state(rho_a, X, Z)
    qmu = bounds.q_mu(bounds.complementarity_matrix(X, Z))
    info = {"h_a_given_b": h_ab, "q_state": q_rho, "q_mu": qmu}
    return [
        VerificationRecord("ur-bipartite", ">=", lhs, q_rho + h_ab, rho_ab.dims, seed, details=info),
        VerificationRecord("ur-bipartite-mu", ">=", lhs, qmu + h_ab, rho_ab.dims, seed, details=info),
    ]


def verify_tripartite_ur(rho_abc: DensityMatrix, X, Z, seed=None) -> VerificationRecord:
    """``H(X|B) + H(Z|C) >= q(rho_A)`` for a state on A (x) B (x) C."""
    X, Z = _povm(X), _povm(Z)
    _check_on_a(rho_abc, X, Z)
    if len(rho_abc.dims) != 3:
        raise DimensionError(f"expected a tripartite state, got dims {rho_abc.dims}")
    lhs = measured_conditional_entropy(rho_abc, X, [1]) + measured_conditional_entropy(rho_abc, Z, [2])
    rhs = bounds.q_state(rho_abc.reduce(0), X, Z)
    return VerificationRecord("ur-tripartite", ">=", lhs, rhs, rho_abc.dims, seed)


def measurement_f_term(rho_ab: DensityMatrix, X: Povm, Z: Povm) -> float:
    """``min{H(A|BX), H(A|BZ)}`` on the post-measurement states that keep A."""
    out = []
    for M in (X, Z):
        post = post_measurement_state(rho_ab, M)  # X, A, B
        out.append(von_neumann_entropy(post) - von_neumann_entropy(post.reduce([0, 2])))
    return min(out)


def verify_bipartite_povm_ur(rho_ab: DensityMatrix, X, Z, seed=None) -> VerificationRecord:
    """``H(X|B) + H(Z|B) >= q(rho_A) + H(A|B) - f``."""
    X, Z = _povm(X), _povm(Z)
    _check_on_a(rho_ab, X, Z)
    lhs = measured_conditional_entropy(rho_ab, X, [1]) + measured_conditional_entropy(rho_ab, Z, [1])
    h_ab = conditional_entropy(rho_ab, 1)
    q_rho = bounds.q_state(rho_ab.reduce(0), X, Z)
    f = measurement_f_term(rho_ab, X, Z)
    info = {"h_a_given_b": h_ab, "q_state": q_rho, "f": f}
    return VerificationRecord("ur-povm", ">=", lhs, q_rho + h_ab - f, rho_ab.dims, seed, details=info)


def classical_register_state(rho_ay: Sequence[DensityMatrix], probs) -> DensityMatrix:
    """``sum_y p_y rho_A^y (x) |y><y|``."""
    probs = np.asarray(probs, dtype=float)
    d = rho_ay[0].dim
    n = len(rho_ay)
    M = np.zeros((d * n, d * n), dtype=np.complex128)
    for y, (p, r) in enumerate(zip(probs, rho_ay)):
        Py = np.zeros((n, n))
        Py[y, y] = 1.0
        M += p * np.kron(r.matrix, Py)
    return DensityMatrix(M, (d, n), check=False)


def is_classical_on(rho: DensityMatrix, system: int, tol: float = 1e-12) -> bool:
    """Whether ``rho`` is block diagonal in the computational basis of ``system``."""
    dims = list(rho.dims)
    T = rho.matrix.reshape(dims + dims)
    n = len(dims)
    idx = np.arange(dims[system])
    mask = idx[:, None] != idx[None, :]
    T = np.moveaxis(T, [system, system + n], [0, 1])
    return bool(np.abs(T[mask]).max(initial=0.0) <= tol)


def verify_ier(rho: DensityMatrix, X, Z, seed=None, classical: bool = False) -> list[VerificationRecord]:
    """Information exclusion for the given state.

    * bipartite ``rho_AB``: ``I(X:B) + I(Z:B) <= r - H(A|B) + f`` (``f = 0`` for
      bases), plus the weaker ``r_H`` version for bases;
    * bipartite with ``classical=True``: ``I(X:Y) + I(Z:Y) <= r`` for a
      quantum-classical ``rho_AY``;
    * tripartite ``rho_ABC``: ``I(X:B) + I(Z:C) <= r``.
    """
    X, Z = _povm(X), _povm(Z)
    _check_on_a(rho, X, Z)
    r = bounds.r_bound(X, Z)
    if len(rho.dims) == 3:
        lhs = measured_mutual_information(rho, X, [1]) + measured_mutual_information(rho, Z, [2])
        return [VerificationRecord("ier-tripartite", "<=", lhs, r, rho.dims, seed)]
    if len(rho.dims) != 2:
        raise DimensionError(f"expected a bipartite or tripartite state, got dims {rho.dims}")
    lhs = measured_mutual_information(rho, X, [1]) + measured_mutual_information(rho, Z, [1])
    if classical:
        if not is_classical_on(rho, 1):
            raise ValidationError("register Y is not classical (state is not block diagonal on Y)")
        return [VerificationRecord("ier-classical", "<=", lhs, r, rho.dims, seed)]
    h_ab = conditional_entropy(rho, 1)
    cs = bounds.complementarity_matrix(X, Z)
    f = 0.0 if cs.from_bases else measurement_f_term(rho, X, Z)
    name = "ier-bipartite" if cs.from_bases else "ier-bipartite-povm"
    info = {"h_a_given_b": h_ab, "f": f}
    records = [VerificationRecord(name, "<=", lhs, r - h_ab + f, rho.dims, seed, details=info)]
    if cs.from_bases:
        records.append(VerificationRecord("ier-hall", "<=", lhs, bounds.r_hall(cs) - h_ab, rho.dims, seed))
    return records


def pinching_lemma_check(sigma, Z, seed=None) -> VerificationRecord:
    """``||sum_k Z_k s Z_k|| <= max_k ||sqrt(Z_k) s sqrt(Z_k)||``."""
    Z = _povm(Z)
    S = linalg.as_matrix(sigma)
    if S.shape != (Z.dim, Z.dim):
        raise DimensionError(f"operator shape {S.shape} vs POVM dimension {Z.dim}")
    lhs = linalg.operator_norm_inf(sum(E @ S @ E for E in Z.elements))
    rhs = max(linalg.operator_norm_inf(R @ S @ R) for R in Z.sqrt_elements)
    return VerificationRecord("pinching", "<=", lhs, rhs, (Z.dim,), seed, tol=1e-9)


def sum_norm_lemma_check(S, T, seed=None) -> VerificationRecord:
    """``||S + T|| <= max(||S||, ||T||) + ||sqrt(S) sqrt(T)||`` for PSD ``S``, ``T``."""
    S, T = linalg.as_matrix(S), linalg.as_matrix(T)
    if S.shape != T.shape:
        raise DimensionError(f"shape mismatch {S.shape} vs {T.shape}")
    rS, rT = linalg.psd_sqrt(S), linalg.psd_sqrt(T)
    lhs = linalg.operator_norm_inf(S + T)
    rhs = max(linalg.operator_norm_inf(S), linalg.operator_norm_inf(T)) + linalg.operator_norm_inf(rS @ rT)
    return VerificationRecord("sum-norm", "<=", lhs, rhs, (S.shape[0],), seed, tol=1e-9)


def max_h_factor_check(X, Z, seed=None) -> VerificationRecord:
    """``max_j ||sum_k Z_k X_j Z_k|| <= max_jk c_jk``."""
    X, Z = _povm(X), _povm(Z)
    hx, _ = bounds.h_factors(X, Z)
    cs = bounds.complementarity_matrix(X, Z)
    return VerificationRecord("max-h-factor", "<=", float(hx.max()), cs.c_max, (X.dim,), seed, tol=1e-9)


def relative_entropy_lemma_check(rho_ab: DensityMatrix, Z, seed=None) -> VerificationRecord:
    """``H(Z|C) >= D(rho_AB || sum_k Z_k rho_AB Z_k)`` with C purifying AB."""
    Z = _povm(Z)
    _check_on_a(rho_ab, Z)
    rho_abc = purify(rho_ab)
    lhs = measured_conditional_entropy(rho_abc, Z, [2])
    dr = rho_ab.dim // Z.dim
    eye = np.eye(dr)
    pinched = 0
    for E in Z.elements:
        K = np.kron(E, eye)
        pinched = pinched + K @ rho_ab.matrix @ K.conj().T
    rhs = relative_entropy(rho_ab, pinched)
    return VerificationRecord("rel-entropy", ">=", lhs, rhs, rho_ab.dims, seed)


@dataclass
class GenericUnitaryStats:
    d: int
    samples: int
    min_gaps: list
    fraction_distinct: float
    structural_ties: float | None = None
    threshold: float = 1e-6

    def as_dict(self) -> dict:
        return asdict(self)


def entry_modulus_gap(U: np.ndarray) -> float:
    m = np.sort(np.abs(U).ravel())
    return float(np.min(np.diff(m))) if m.size > 1 else math.inf


def generic_unitary_scan(d: int, samples: int, rng: RandomSource, threshold: float = 1e-6) -> GenericUnitaryStats:
    """Minimal pairwise gap between entry moduli of Haar unitaries.

    For ``d = 2`` the moduli are tied by unitarity; ``structural_ties`` then
    reports the largest ``| |U_00| - |U_11| |`` seen.
    """
    gaps = []
    ties = 0.0
    for _ in range(samples):
        U = haar_unitary(d, rng).unitary
        gaps.append(entry_modulus_gap(U))
        if d == 2:
            ties = max(ties, abs(abs(U[0, 0]) - abs(U[1, 1])), abs(abs(U[0, 1]) - abs(U[1, 0])))
    frac = float(np.mean([g > threshold for g in gaps])) if gaps else 1.0
    return GenericUnitaryStats(d, samples, gaps, frac, ties if d == 2 else None, threshold)


# --- gap construction ------------------------------------------------------


@dataclass
class GapScanPoint:
    d: int
    theta: float
    c_max: float
    c_2: float
    delta: float
    predicted_delta: float
    u00: complex = 0j

    def as_dict(self) -> dict:
        out = asdict(self)
        out["u00"] = [self.u00.real, self.u00.imag]
        return out


def unbiased_vector(m: int) -> np.ndarray:
    """Unit vector in C^m unbiased to both the standard and the Fourier basis.

    Quadratic-phase (chirp) vectors: ``exp(i pi j(j+1)/m)`` for odd ``m`` and
    ``exp(i pi j^2/m)`` for even ``m``.
    """
    j = np.arange(m)
    F = np.exp(2j * np.pi * np.outer(j, j) / m) / math.sqrt(m)
    for phase in (j * (j + 1), j * j):
        y = np.exp(1j * np.pi * phase / m) / math.sqrt(m)
        if np.abs(np.abs(F.conj().T @ y) - 1 / math.sqrt(m)).max() < 1e-9:
            return y
    raise ArithmeticError(f"no chirp vector is unbiased for m={m}")


def gap_unitary(d: int, theta: float) -> np.ndarray:
    """``U = U_r U_0`` with ``U_0 = 1 (+) F_{d-1}`` and ``U_r = exp(-i theta H_r)``."""
    if d < 3:
        raise ValueError("gap construction needs d >= 3")
    if not 0 < theta < math.pi / 2:
        raise ValueError("theta must lie in (0, pi/2)")
    m = d - 1
    j = np.arange(m)
    U0 = np.zeros((d, d), dtype=np.complex128)
    U0[0, 0] = 1.0
    U0[1:, 1:] = np.exp(2j * np.pi * np.outer(j, j) / m) / math.sqrt(m)
    y = np.zeros(d, dtype=np.complex128)
    y[1:] = unbiased_vector(m)
    e0 = np.zeros(d, dtype=np.complex128)
    e0[0] = 1.0
    H = np.outer(y, e0.conj()) + np.outer(e0, y.conj())
    H2 = H @ H
    Ur = (np.eye(d) - H2) + H2 * math.cos(theta) - 1j * H * math.sin(theta)
    return Ur @ U0


def predicted_gap(d: int, theta: float) -> float:
    return 0.5 * (1 - math.cos(theta)) * math.log2(d * math.cos(theta) ** 2)


def gap_construction(d: int, theta: float) -> GapScanPoint:
    U = gap_unitary(d, theta)
    cs = bounds.complementarity_matrix(OrthonormalBasis(U, check=False), OrthonormalBasis.computational(d))
    delta = bounds.q_prime(cs) - bounds.q_mu(cs)
    return GapScanPoint(d, theta, cs.c_max, cs.c_2, delta, predicted_gap(d, theta), complex(U[0, 0]))


def gap_scan(dims: Sequence[int], theta: float) -> list[GapScanPoint]:
    return [gap_construction(int(d), theta) for d in dims]


def gap_slope(points: Sequence[GapScanPoint]) -> float:
    """Least-squares slope of ``delta`` against ``log2 d``."""
    x = np.log2([p.d for p in points])
    y = np.array([p.delta for p in points])
    return float(np.polyfit(x, y, 1)[0])


# --- qutrit example and the lambda_min curve -------------------------------


def example1_bases() -> tuple[OrthonormalBasis, OrthonormalBasis]:
    """The qutrit pair: X from the columns of the fixed U below, Z computational."""
    s2, s3, s6 = math.sqrt(2), math.sqrt(3), math.sqrt(6)
    U = np.array(
        [
            [1 / s3, 1 / s3, 1 / s3],
            [1 / s2, 0.0, -1 / s2],
            [1 / s6, -math.sqrt(2 / 3), 1 / s6],
        ]
    )
    return OrthonormalBasis(U), OrthonormalBasis.computational(3)


def example1_report() -> bounds.BoundReport:
    X, Z = example1_bases()
    return bounds.bound_report(X, Z, np.eye(3) / 3)


def fig1_curve(n_points: int = 101, X=None, Z=None) -> list[tuple[float, float]]:
    if n_points < 2:
        raise ValueError("need at least two points")
    if X is None:
        X, Z = example1_bases()
    df = bounds.delta_family(X, Z)
    return [(float(p), bounds.lambda_min_delta(df, float(p))) for p in np.linspace(0.0, 1.0, n_points)]


def haar_average_q_state(X, Z, samples: int, rng: RandomSource, batch: int = 100_000) -> tuple[float, float]:
    """Mean and standard error of ``q(|psi>)`` over Haar-random pure states."""
    X, Z = _povm(X), _povm(Z)
    if samples < 2:
        raise ValueError("need at least two samples for a standard error")
    hx, hz = bounds.h_factors(X, Z)
    wx, wz = bounds._neg_log2_h(hx), bounds._neg_log2_h(hz)
    EX, EZ = np.array(X.elements), np.array(Z.elements)
    vals = []
    for start in range(0, samples, batch):
        psi = rng.complex_normal((min(batch, samples - start), X.dim))
        psi /= np.linalg.norm(psi, axis=1, keepdims=True)
        px = np.einsum("na,jab,nb->nj", psi.conj(), EX, psi).real
        pz = np.einsum("na,jab,nb->nj", psi.conj(), EZ, psi).real
        vals.append(np.maximum(px @ wx, pz @ wz))
    v = np.concatenate(vals)
    return float(v.mean()), float(v.std(ddof=1) / math.sqrt(samples))


# --- sweeps ----------------------------------------------------------------


def parse_dims(text: str) -> list[tuple[int, ...]]:
    """``"2x2,3x3x3"`` -> ``[(2, 2), (3, 3, 3)]``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            dims = tuple(int(x) for x in part.lower().split("x"))
        except ValueError:
            raise ValueError(f"cannot parse dimensions {part!r}") from None
        if any(d < 1 for d in dims):
            raise ValueError(f"dimensions must be positive: {part!r}")
        out.append(dims)
    if not out:
        raise ValueError("no dimensions given")
    return out


DEFAULT_DIMS = {
    "ur-bipartite": [(2, 2), (3, 3), (4, 4), (2, 3), (3, 2)],
    "ur-tripartite": [(2, 2, 2), (3, 2, 2), (3, 3, 3)],
    "ur-povm": [(2, 2), (3, 3), (4, 4), (3, 2)],
    "ier": [(2, 2), (3, 3), (4, 4), (2, 2, 2), (3, 2, 2), (3, 3, 3)],
    "pinching": [(2,), (3,), (4,), (5,)],
    "sum-norm": [(2,), (3,), (4,), (5,)],
    "rel-entropy": [(2, 2), (3, 2), (2, 3), (3, 3)],
    "generic-unitary": [(3,)],
}


def _pick(seq, i):
    return seq[i % len(seq)]


def _random_basis_pair(d, rng):
    return haar_unitary(d, rng), haar_unitary(d, rng)


def _random_povm_pair(d, rng, lo=2, hi=5):
    return random_povm(d, int(rng.integers(lo, hi)), rng), random_povm(d, int(rng.integers(lo, hi)), rng)


def _random_state(dims, rng, state="random"):
    if state == "maxent":
        if len(dims) != 2 or dims[0] != dims[1]:
            raise ValueError(f"maximally entangled preset needs dims dxd, got {dims}")
        return maximally_entangled(dims[0])
    d = int(np.prod(dims))
    # mix of pure, low-rank and Hilbert-Schmidt states
    env = int(rng.integers(1, d))
    return random_density_matrix(dims, rng, env_dim=env)


def _instance_ur_bipartite(i, rng, dims_list, state):
    dims = _pick(dims_list, i)
    rho = _random_state(dims, rng, state)
    X, Z = _random_basis_pair(dims[0], rng)
    return verify_bipartite_ur(rho, X, Z, seed=rng.seed)


def _instance_ur_tripartite(i, rng, dims_list, state):
    dims = _pick(dims_list, i)
    rho = random_pure_state(dims, rng)
    X, Z = _random_povm_pair(dims[0], rng)
    return [verify_tripartite_ur(rho, X, Z, seed=rng.seed)]


def _instance_ur_povm(i, rng, dims_list, state):
    dims = _pick(dims_list, i)
    rho = _random_state(dims, rng, state)
    X, Z = _random_povm_pair(dims[0], rng)
    return [verify_bipartite_povm_ur(rho, X, Z, seed=rng.seed)]


def _instance_ier(i, rng, dims_list, state):
    dims = _pick(dims_list, i)
    d = dims[0]
    # every instance covers the bipartite, tripartite and classical-register forms
    rho = _random_state(dims[:2], rng, state)
    X, Z = _random_basis_pair(d, rng)
    out = verify_ier(rho, X, Z, seed=rng.seed)
    X, Z = _random_povm_pair(d, rng)
    out += verify_ier(rho, X, Z, seed=rng.seed)
    tri = dims if len(dims) == 3 else (d, dims[1], 2)
    rho3 = random_pure_state(tri, rng) if rng.uniform() < 0.5 else random_density_matrix(tri, rng)
    X, Z = _random_povm_pair(d, rng)
    out += verify_ier(rho3, X, Z, seed=rng.seed)
    n_y = int(rng.integers(2, 4))
    parts = [random_density_matrix(d, rng, env_dim=int(rng.integers(1, d))) for _ in range(n_y)]
    probs = rng.generator.dirichlet(np.ones(n_y))
    X, Z = _random_povm_pair(d, rng)
    out += verify_ier(classical_register_state(parts, probs), X, Z, seed=rng.seed, classical=True)
    return out


def _instance_pinching(i, rng, dims_list, state):
    d = _pick(dims_list, i)[0]
    sigma = random_psd(d, rng, int(rng.integers(1, d)))
    Z = random_povm(d, int(rng.integers(2, 6)), rng)
    return [pinching_lemma_check(sigma, Z, seed=rng.seed)]


def _instance_sum_norm(i, rng, dims_list, state):
    d = _pick(dims_list, i)[0]
    S = random_psd(d, rng, int(rng.integers(1, d)))
    T = random_psd(d, rng, int(rng.integers(1, d)))
    return [sum_norm_lemma_check(S, T, seed=rng.seed)]


def _instance_rel_entropy(i, rng, dims_list, state):
    dims = _pick(dims_list, i)
    rho = random_density_matrix(dims, rng)
    Z = random_projective_povm(dims[0], int(rng.integers(2, dims[0])), rng)
    return [relative_entropy_lemma_check(rho, Z, seed=rng.seed)]


_INSTANCES: dict[str, Callable] = {
    "ur-bipartite": _instance_ur_bipartite,
    "ur-tripartite": _instance_ur_tripartite,
    "ur-povm": _instance_ur_povm,
    "ier": _instance_ier,
    "pinching": _instance_pinching,
    "sum-norm": _instance_sum_norm,
    "rel-entropy": _instance_rel_entropy,
}


def run_suite(
    name: str,
    seed: int = 0,
    trials: int = PRESETS["smoke"],
    dims: Sequence[tuple[int, ...]] | None = None,
    tol: float | None = None,
    state: str = "random",
) -> list[VerificationRecord]:
    """Run ``trials`` seeded instances of suite ``name``.

    ``tol`` overrides the per-record tolerance (``SLACK_TOL`` for the
    entropic inequalities, 1e-9 for the norm lemmas).

    Instance ``i`` draws from ``RandomSource(seed).spawn(i)``, so any record
    can be replayed from the seed stored on it.
    """
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    dims_list = list(dims) if dims else DEFAULT_DIMS[name]
    master = RandomSource(seed)
    if name == "generic-unitary":
        records = []
        for k, dd in enumerate(dims_list):
            d = dd[0]
            child = master.spawn(k)
            stats = generic_unitary_scan(d, trials, child)
            if d >= 3:
                records.append(
                    VerificationRecord(
                        "generic-unitary", ">=", stats.fraction_distinct, 1.0, (d,), child.seed,
                        details={"min_gap": min(stats.min_gaps, default=math.inf), "samples": trials},
                    )
                )
            else:
                # d = 2: moduli are tied by unitarity; check that the ties are exact
                records.append(
                    VerificationRecord(
                        "generic-unitary-d2-ties", "<=", stats.structural_ties or 0.0, 1e-12, (d,), child.seed,
                    )
                )
    else:
        fn = _INSTANCES[name]
        records = [rec for i in range(trials) for rec in fn(i, master.spawn(i), dims_list, state)]
    if tol is not None:
        for rec in records:
            rec.tol = tol
    return records
