import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from entroplex import bounds
from entroplex.errors import DimensionError, ValidationError
from entroplex.experiments import example1_bases
from entroplex.quantum import (
    KrausChannel,
    OrthonormalBasis,
    Povm,
    RandomSource,
    coherent_information,
    haar_unitary,
    random_density_matrix,
    random_povm,
)

seeds = st.integers(0, 2**63)
log2 = math.log2


# --- hand-derived values for the qutrit example --------------------------------
# c_jk = |U_kj|^2; columns of U give c = [[1/3,1/2,1/6],[1/3,0,2/3],[1/3,1/2,1/6]]
C_EX1 = np.array([[1 / 3, 1 / 2, 1 / 6], [1 / 3, 0, 2 / 3], [1 / 3, 1 / 2, 1 / 6]])


def test_example1_overlaps():
    X, Z = example1_bases()
    cs = bounds.complementarity_matrix(X, Z)
    assert np.allclose(cs.c, C_EX1, atol=1e-15)
    assert cs.c_max == pytest.approx(2 / 3, abs=1e-15)
    assert cs.c_2 == pytest.approx(1 / 2, abs=1e-15)
    assert cs.from_bases


def test_example1_closed_forms():
    X, Z = example1_bases()
    cs = bounds.complementarity_matrix(X, Z)
    assert bounds.q_mu(cs) == pytest.approx(log2(3 / 2), abs=1e-12)
    expected_qp = log2(3 / 2) + 0.5 * (1 - math.sqrt(2 / 3)) * log2((2 / 3) / (1 / 2))
    assert bounds.q_prime(cs) == pytest.approx(expected_qp, abs=1e-12)
    hx, hz = bounds.h_factors(X, Z)
    # row maxima and column maxima of c, since both sides are bases
    assert np.allclose(hx, [1 / 2, 2 / 3, 1 / 2])
    assert np.allclose(hz, [1 / 3, 1 / 2, 2 / 3])
    assert bounds.r_hall(cs) == pytest.approx(log2(6), abs=1e-12)
    assert bounds.r_grudka(cs) == pytest.approx(log2(5), abs=1e-12)
    assert bounds.r_directional(X, Z) == pytest.approx((log2(5), log2(4.5)), abs=1e-12)
    assert bounds.q_state(np.eye(3) / 3, X, Z) == pytest.approx(2 / 3 * log2(3), abs=1e-12)


def test_identical_bases():
    B = OrthonormalBasis.fourier(4)
    rep = bounds.bound_report(B, B)
    assert rep.q_mu == pytest.approx(0.0, abs=1e-12)
    assert rep.q_opt == pytest.approx(0.0, abs=1e-12)
    assert rep.r == pytest.approx(2 * log2(4))
    assert rep.r_hall == pytest.approx(2 * log2(4))
    assert rep.r_grudka == pytest.approx(2 * log2(4))


@pytest.mark.parametrize("d", [2, 3, 5, 8])
def test_mutually_unbiased_pair(d):
    rep = bounds.bound_report(OrthonormalBasis.fourier(d), OrthonormalBasis.computational(d))
    for v in (rep.q_mu, rep.q_prime, rep.lambda_half, rep.q_opt, rep.r_hall, rep.r_grudka, rep.r):
        assert v == pytest.approx(log2(d), abs=1e-9)


def test_q_prime_undefined_when_c2_vanishes():
    X = Povm([np.eye(2), np.zeros((2, 2))])
    Z = Povm([np.eye(2)])
    cs = bounds.complementarity_matrix(X, Z)
    assert cs.c_2 == 0.0
    with pytest.raises(ValidationError):
        bounds.q_prime(cs)
    assert bounds.bound_report(X, Z).q_prime is None


def test_r_grudka_refuses_povms():
    r = RandomSource(0)
    X, Z = random_povm(3, 4, r), random_povm(3, 2, r)
    cs = bounds.complementarity_matrix(X, Z)
    with pytest.raises(ValidationError):
        bounds.r_grudka(cs)
    assert bounds.bound_report(X, Z).r_grudka is None


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        bounds.complementarity_matrix(OrthonormalBasis.fourier(2), OrthonormalBasis.fourier(3))


# --- properties ---------------------------------------------------------------


def _h_oracle(X: Povm, Z: Povm):
    return np.array([np.linalg.norm(sum(F @ E @ F for F in Z.elements), 2) for E in X.elements])


@given(d=st.integers(2, 4), nx=st.integers(2, 5), nz=st.integers(2, 5), seed=seeds)
def test_povm_overlap_forms_agree(d, nx, nz, seed):
    r = RandomSource(seed)
    X, Z = random_povm(d, nx, r), random_povm(d, nz, r)
    a = bounds.complementarity_matrix(X, Z, "product").c
    b = bounds.complementarity_matrix(X, Z, "sandwich").c
    assert np.allclose(a, b, atol=1e-10)
    hx, hz = bounds.h_factors(X, Z)
    assert np.allclose(hx, _h_oracle(X, Z), atol=1e-10)
    assert np.allclose(hz, _h_oracle(Z, X), atol=1e-10)


@given(d=st.integers(2, 5), seed=seeds)
def test_basis_fast_paths_match_general_formulas(d, seed):
    r = RandomSource(seed)
    X, Z = haar_unitary(d, r), haar_unitary(d, r)
    PX, PZ = bounds.as_povm(X), bounds.as_povm(Z)
    # strip the rank-one shortcut to force the general code path
    gx, gz = Povm(PX.elements), Povm(PZ.elements)
    gx.__dict__["rank1_vectors"] = None
    gz.__dict__["rank1_vectors"] = None
    assert np.allclose(bounds.complementarity_matrix(X, Z).c, bounds.complementarity_matrix(gx, gz).c, atol=1e-10)
    for a, b in zip(bounds.h_factors(X, Z), bounds.h_factors(gx, gz)):
        assert np.allclose(a, b, atol=1e-10)


@given(d=st.integers(2, 5), seed=seeds)
def test_bound_chain_for_bases(d, seed):
    r = RandomSource(seed)
    X, Z = haar_unitary(d, r), haar_unitary(d, r)
    rho = random_density_matrix(d, r)
    rep = bounds.bound_report(X, Z, rho)
    tol = 1e-9
    assert rep.q_mu <= rep.q_prime + tol
    assert rep.q_prime <= rep.lambda_half + tol
    assert rep.lambda_half <= rep.q_opt + tol
    assert rep.q_opt <= rep.q_state + tol
    assert rep.r <= rep.r_grudka + tol
    assert rep.r_grudka <= rep.r_hall + tol


@given(d=st.integers(2, 4), nx=st.integers(2, 5), nz=st.integers(2, 5), seed=seeds)
def test_povm_bounds_ordered(d, nx, nz, seed):
    r = RandomSource(seed)
    X, Z = random_povm(d, nx, r), random_povm(d, nz, r)
    rep = bounds.bound_report(X, Z, random_density_matrix(d, r))
    assert rep.q_mu <= rep.lambda_half + 1e-9
    assert rep.lambda_half <= rep.q_opt + 1e-9
    assert rep.q_opt <= rep.q_state + 1e-9
    # max_j h_j <= c_max
    hx, hz = bounds.h_factors(X, Z)
    cs = bounds.complementarity_matrix(X, Z)
    assert max(hx.max(), hz.max()) <= cs.c_max + 1e-9


@given(d=st.integers(2, 5), seed=seeds)
def test_curve_endpoints_equal_q_mu_for_bases(d, seed):
    r = RandomSource(seed)
    X, Z = haar_unitary(d, r), haar_unitary(d, r)
    df = bounds.delta_family(X, Z)
    qmu = bounds.q_mu(bounds.complementarity_matrix(X, Z))
    assert bounds.lambda_min_delta(df, 0.0) == pytest.approx(qmu, abs=1e-9)
    assert bounds.lambda_min_delta(df, 1.0) == pytest.approx(qmu, abs=1e-9)


@given(d=st.integers(2, 3), seed=seeds)
def test_q_opt_additive_on_tensor_copies(d, seed):
    r = RandomSource(seed)
    X, Z = haar_unitary(d, r), haar_unitary(d, r)
    q1 = bounds.q_opt(X, Z).q
    assert bounds.q_opt(X.tensor(X), Z.tensor(Z)).q == pytest.approx(2 * q1, abs=1e-6)


@given(seed=seeds)
def test_q_opt_on_distinct_tensor_pairs(seed):
    # lambda_min of the tensor family is the sum of the two curves at a shared p
    r = RandomSource(seed)
    X1, Z1, X2, Z2 = (haar_unitary(2, r) for _ in range(4))
    df1, df2 = bounds.delta_family(X1, Z1), bounds.delta_family(X2, Z2)
    q12 = bounds.q_opt(X1.tensor(X2), Z1.tensor(Z2)).q
    grid = max(bounds.lambda_min_delta(df1, p) + bounds.lambda_min_delta(df2, p) for p in np.linspace(0, 1, 4001))
    assert q12 >= grid - 1e-9
    assert q12 <= bounds.q_opt(df1).q + bounds.q_opt(df2).q + 1e-9


def test_delta_of_p_range():
    X, Z = example1_bases()
    df = bounds.delta_family(X, Z)
    with pytest.raises(ValueError):
        bounds.delta_of_p(df, 1.5)
    assert np.allclose(bounds.delta_of_p(df, 0.25), 0.25 * df.delta_xz + 0.75 * df.delta_zx)


# --- capacity witness ---------------------------------------------------------


def test_witness_identity_qubit():
    Zb, Xb = OrthonormalBasis.computational(2), OrthonormalBasis.fourier(2)
    terms = bounds.witness_terms(KrausChannel.identity(2), Xb, Xb, Zb, Zb)
    assert terms["i_x"] == pytest.approx(1.0)
    assert terms["i_z"] == pytest.approx(1.0)
    assert terms["r"] == pytest.approx(1.0)
    assert terms["witness"] == pytest.approx(coherent_information(KrausChannel.identity(2)), abs=1e-9)


def test_transition_table_is_a_distribution():
    ch = KrausChannel.depolarizing(3, 0.3)
    T = bounds.transition_table(ch, OrthonormalBasis.fourier(3), OrthonormalBasis.fourier(3))
    assert T.sum() == pytest.approx(1.0)
    assert np.allclose(T.sum(axis=1), 1 / 3)


def test_witness_fully_depolarizing_is_negative():
    B = OrthonormalBasis.computational(2)
    F = OrthonormalBasis.fourier(2)
    assert bounds.capacity_witness(KrausChannel.depolarizing(2), F, F, B, B) == pytest.approx(-1.0)
