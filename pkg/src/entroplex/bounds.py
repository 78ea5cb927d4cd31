"""Complementarity factors and the uncertainty / information-exclusion bounds.

Measurements may be given as ``Povm`` or ``OrthonormalBasis``; bases are
converted to rank-one projective POVMs.  All bounds are in bits.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from . import _backend, linalg
from .errors import DimensionError, ValidationError
from .quantum import (
    KrausChannel,
    OrthonormalBasis,
    Povm,
    apply_channel,
    basis_as_povm,
    classical_mutual_information,
    pure_state,
)

H_FLOOR = 1e-300
PROB_FLOOR = 1e-15


def as_povm(m) -> Povm:
    if isinstance(m, Povm):
        return m
    if isinstance(m, OrthonormalBasis):
        return basis_as_povm(m)
    raise TypeError(f"expected Povm or OrthonormalBasis, got {type(m).__name__}")


def _pair(X, Z) -> tuple[Povm, Povm]:
    X, Z = as_povm(X), as_povm(Z)
    if X.dim != Z.dim:
        raise DimensionError(f"measurements act on different dimensions: {X.dim} vs {Z.dim}")
    return X, Z


@dataclass(frozen=True)
class ComplementaritySummary:
    c: np.ndarray
    c_max: float
    c_2: float
    row_max: np.ndarray
    col_max: np.ndarray
    dim: int
    # rank-one projective on both sides with |X| = |Z| = dim
    from_bases: bool = False


def complementarity_matrix(X, Z, form: str = "product") -> ComplementaritySummary:
    """Overlap matrix ``c_jk = || sqrt(X_j) sqrt(Z_k) ||^2``.

    ``form="sandwich"`` evaluates ``|| sqrt(Z_k) X_j sqrt(Z_k) ||`` instead;
    both agree up to rounding.  For two bases the entries reduce to
    ``|<x_j|z_k>|^2`` and are computed that way.
    """
    X, Z = _pair(X, Z)
    vx, vz = X.rank1_vectors, Z.rank1_vectors
    if vx is not None and vz is not None and form == "product":
        c = np.abs(vx.conj().T @ vz) ** 2
    elif form == "product":
        sx, sz = X.sqrt_elements, Z.sqrt_elements
        c = np.array([[linalg.operator_norm_inf(a @ b) ** 2 for b in sz] for a in sx])
    elif form == "sandwich":
        sz = Z.sqrt_elements
        c = np.array([[linalg.operator_norm_inf(b @ a @ b) for b in sz] for a in X.elements])
    else:
        raise ValueError(f"unknown form {form!r}")
    if c.min() < -1e-12 or c.max() > 1 + 1e-9:
        raise ValidationError(f"overlap entries outside [0, 1]: [{c.min():.3g}, {c.max():.3g}]")
    c = np.clip(c, 0.0, 1.0)
    flat = np.sort(c.ravel())[::-1]
    c_max = float(flat[0])
    c_2 = float(flat[1]) if flat.size > 1 else c_max
    from_bases = vx is not None and vz is not None and len(X) == len(Z) == X.dim
    return ComplementaritySummary(
        c=c,
        c_max=c_max,
        c_2=c_2,
        row_max=c.max(axis=1),
        col_max=c.max(axis=0),
        dim=X.dim,
        from_bases=from_bases,
    )


def q_mu(cs: ComplementaritySummary) -> float:
    """``log2(1 / c_max)``."""
    if not cs.c_max > 0:
        raise ArithmeticError("c_max = 0 cannot occur for complete measurements")
    return math.log2(1.0 / cs.c_max)


def q_prime(cs: ComplementaritySummary) -> float:
    """``q_MU + (1 - sqrt(c_max)) log2(c_max / c_2) / 2``; undefined when ``c_2 = 0``."""
    if cs.c_2 <= 0:
        raise ValidationError("second-largest overlap c_2 is zero; q' is undefined")
    return q_mu(cs) + 0.5 * (1.0 - math.sqrt(cs.c_max)) * math.log2(cs.c_max / cs.c_2)


def h_factors(X, Z) -> tuple[np.ndarray, np.ndarray]:
    """``h_j(X,Z) = ||sum_k Z_k X_j Z_k||`` and ``h_k(Z,X) = ||sum_j X_j Z_k X_j||``.

    When the sandwiching measurement consists of rank-one projectors the sum
    is diagonal in its basis and the norm is read off directly.
    """
    X, Z = _pair(X, Z)
    return _h_one_side(X, Z), _h_one_side(Z, X)


def _h_one_side(X: Povm, Z: Povm) -> np.ndarray:
    vz = Z.rank1_vectors
    if vz is not None:
        # sum_k |z_k><z_k| X_j |z_k><z_k| = diag_k(<z_k|X_j|z_k>)
        return np.array(
            [float(np.max(np.real(np.einsum("ak,ab,bk->k", vz.conj(), E, vz)))) for E in X.elements]
        )
    out = []
    for E in X.elements:
        S = sum(F @ E @ F for F in Z.elements)
        out.append(linalg.lambda_max(0.5 * (S + S.conj().T)))
    return np.array(out)


def _neg_log2_h(h: np.ndarray) -> np.ndarray:
    return -np.log2(np.maximum(h, H_FLOOR))


def _weighted(p: np.ndarray, weights: np.ndarray) -> float:
    mask = p > PROB_FLOOR
    return float(np.sum(p[mask] * weights[mask]))


def q_state_components(rho_a, X, Z) -> tuple[float, float]:
    X, Z = _pair(X, Z)
    hx, hz = h_factors(X, Z)
    px, pz = X.probabilities(rho_a), Z.probabilities(rho_a)
    return _weighted(px, _neg_log2_h(hx)), _weighted(pz, _neg_log2_h(hz))


def q_state(rho_a, X, Z) -> float:
    """State-dependent bound ``max{-sum_j p_j log2 h_j, -sum_k p_k log2 h_k}``."""
    return max(q_state_components(rho_a, X, Z))


@dataclass(frozen=True)
class DeltaFamily:
    delta_xz: np.ndarray
    delta_zx: np.ndarray


def delta_family(X, Z) -> DeltaFamily:
    X, Z = _pair(X, Z)
    hx, hz = h_factors(X, Z)
    dxz = sum(w * E for w, E in zip(_neg_log2_h(hx), X.elements))
    dzx = sum(w * E for w, E in zip(_neg_log2_h(hz), Z.elements))
    return DeltaFamily(0.5 * (dxz + dxz.conj().T), 0.5 * (dzx + dzx.conj().T))


def delta_of_p(df: DeltaFamily, p: float) -> np.ndarray:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return p * df.delta_xz + (1.0 - p) * df.delta_zx


def lambda_min_delta(df: DeltaFamily, p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return float(_backend.lambda_min_affine(df.delta_xz, df.delta_zx, float(p)))


class OptResult(NamedTuple):
    q: float
    p_star: float


def q_opt(X, Z=None, n_grid: int = 101, width: float = 1e-8) -> OptResult:
    """State-independent bound ``max_p lambda_min[p D_XZ + (1-p) D_ZX]``.

    The objective is concave in ``p``; the returned value is an evaluated
    point of it and therefore a valid lower bound whatever the optimiser did.
    """
    df = X if isinstance(X, DeltaFamily) else delta_family(X, Z)
    p, q = _backend.maximize_lambda_min(df.delta_xz, df.delta_zx, n_grid, width)
    return OptResult(float(q), float(p))


def r_hall(cs: ComplementaritySummary, d: int | None = None) -> float:
    """``log2(d^2 c_max)``."""
    d = cs.dim if d is None else d
    return math.log2(d * d * cs.c_max)


def r_grudka(cs: ComplementaritySummary, d: int | None = None) -> float:
    """``log2(d * sum of the d largest overlaps)``, defined for pairs of bases only."""
    d = cs.dim if d is None else d
    if not cs.from_bases or cs.c.shape != (d, d):
        raise ValidationError("r_G is only defined for a pair of orthonormal bases")
    top = np.sort(cs.c.ravel())[::-1][:d]
    return math.log2(d * float(np.sum(top)))


def r_directional(X, Z) -> tuple[float, float]:
    """``(log2(|Z| sum_j h_j(X,Z)), log2(|X| sum_k h_k(Z,X)))``."""
    X, Z = _pair(X, Z)
    hx, hz = h_factors(X, Z)
    return math.log2(len(Z) * float(np.sum(hx))), math.log2(len(X) * float(np.sum(hz)))


def r_bound(X, Z) -> float:
    return min(r_directional(X, Z))


@dataclass(frozen=True)
class BoundReport:
    q_mu: float
    q_prime: float | None
    lambda_half: float
    q_opt: float
    p_star: float
    r_hall: float
    r_grudka: float | None
    r: float
    q_state: float | None = None

    def as_dict(self) -> dict:
        return asdict(self)


def bound_report(X, Z, rho_a=None) -> BoundReport:
    X, Z = _pair(X, Z)
    cs = complementarity_matrix(X, Z)
    df = delta_family(X, Z)
    opt = q_opt(df)
    try:
        qp = q_prime(cs)
    except ValidationError:
        qp = None
    return BoundReport(
        q_mu=q_mu(cs),
        q_prime=qp,
        lambda_half=lambda_min_delta(df, 0.5),
        q_opt=opt.q,
        p_star=opt.p_star,
        r_hall=r_hall(cs),
        r_grudka=r_grudka(cs) if cs.from_bases else None,
        r=r_bound(X, Z),
        q_state=None if rho_a is None else q_state(rho_a, X, Z),
    )


def transition_table(channel: KrausChannel, sent: OrthonormalBasis, measured: OrthonormalBasis) -> np.ndarray:
    """Joint distribution ``p(j, j') = <m_j'| E(|s_j><s_j|) |m_j'> / d`` for uniformly sent basis states."""
    d = sent.dim
    if channel.d_in != d or channel.d_out != measured.dim:
        raise DimensionError(
            f"channel {channel.d_in}->{channel.d_out} vs bases of dimension {d} and {measured.dim}"
        )
    M = measured.unitary
    p = np.empty((d, measured.dim))
    for j in range(d):
        out = apply_channel(channel, pure_state(sent.unitary[:, j])).matrix
        p[j] = np.real(np.einsum("ak,ab,bk->k", M.conj(), out, M)) / d
    return np.clip(p, 0.0, None)


def witness_terms(channel, X, X_B, Z, Z_B) -> dict:
    i_x = classical_mutual_information(transition_table(channel, X, X_B))
    i_z = classical_mutual_information(transition_table(channel, Z, Z_B))
    r = r_bound(X, Z)
    return {"i_x": i_x, "i_z": i_z, "r": r, "witness": i_x + i_z - r}


def capacity_witness(channel, X, X_B, Z, Z_B) -> float:
    """``I(X:X_B) + I(Z:Z_B) - r``, a lower bound on the coherent information."""
    return witness_terms(channel, X, X_B, Z, Z_B)["witness"]


__all__ = [
    "BoundReport",
    "ComplementaritySummary",
    "DeltaFamily",
    "OptResult",
    "as_povm",
    "bound_report",
    "capacity_witness",
    "complementarity_matrix",
    "delta_family",
    "delta_of_p",
    "h_factors",
    "lambda_min_delta",
    "q_mu",
    "q_opt",
    "q_prime",
    "q_state",
    "q_state_components",
    "r_bound",
    "r_directional",
    "r_grudka",
    "r_hall",
    "transition_table",
    "witness_terms",
]
