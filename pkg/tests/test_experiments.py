import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from entroplex import bounds, experiments
from entroplex.errors import DimensionError, ValidationError
from entroplex.experiments import VerificationRecord
from entroplex.quantum import (
    OrthonormalBasis,
    RandomSource,
    haar_unitary,
    maximally_entangled,
    product_state,
    pure_state,
    random_density_matrix,
    random_povm,
    random_psd,
    random_pure_state,
)

seeds = st.integers(0, 2**63)


def test_slack_sign_convention():
    ge = VerificationRecord("t", ">=", 2.0, 1.0)
    le = VerificationRecord("t", "<=", 2.0, 1.0)
    assert ge.slack == 1.0 and ge.passed
    assert le.slack == -1.0 and not le.passed
    assert VerificationRecord("t", "<=", 1.0 + 1e-8, 1.0).passed
    d = le.as_dict()
    assert d["slack"] == -1.0 and d["passed"] is False


@given(d=st.integers(2, 4), seed=seeds)
def test_bipartite_ur_holds(d, seed):
    r = RandomSource(seed)
    rho = random_density_matrix((d, d), r)
    X, Z = haar_unitary(d, r), haar_unitary(d, r)
    for rec in experiments.verify_bipartite_ur(rho, X, Z):
        assert rec.passed, rec


def test_bipartite_ur_maximally_entangled_is_tight():
    # for MUBs on a maximally entangled state both sides equal 0
    d = 3
    (rec, _) = experiments.verify_bipartite_ur(
        maximally_entangled(d), OrthonormalBasis.fourier(d), OrthonormalBasis.computational(d)
    )
    assert rec.lhs == pytest.approx(0.0, abs=1e-9)
    assert rec.rhs == pytest.approx(0.0, abs=1e-9)


def test_bipartite_ur_product_state_reduces_to_memoryless():
    d = 3
    X, Z = OrthonormalBasis.fourier(d), OrthonormalBasis.computational(d)
    rho = product_state(pure_state([1, 0, 0]), pure_state([0, 1]))
    (rec, _) = experiments.verify_bipartite_ur(rho, X, Z)
    # H(X) = log2 3, H(Z) = 0 and H(A|B) = 0
    assert rec.lhs == pytest.approx(math.log2(3))
    assert rec.rhs == pytest.approx(math.log2(3))


@given(dims=st.sampled_from([(2, 2, 2), (3, 2, 2), (2, 3, 2)]), seed=seeds)
def test_tripartite_ur_holds(dims, seed):
    r = RandomSource(seed)
    rho = random_pure_state(dims, r)
    X, Z = random_povm(dims[0], 3, r), random_povm(dims[0], 2, r)
    assert experiments.verify_tripartite_ur(rho, X, Z).passed


def test_tripartite_needs_three_systems():
    with pytest.raises(DimensionError):
        experiments.verify_tripartite_ur(maximally_entangled(2), *experiments._random_basis_pair(2, RandomSource(0)))


@given(d=st.integers(2, 3), seed=seeds)
def test_povm_ur_holds(d, seed):
    r = RandomSource(seed)
    rho = random_density_matrix((d, 2), r)
    X, Z = random_povm(d, 4, r), random_povm(d, 3, r)
    rec = experiments.verify_bipartite_povm_ur(rho, X, Z)
    assert rec.details["f"] >= -1e-12
    assert rec.passed


def test_f_term_vanishes_for_bases():
    r = RandomSource(3)
    rho = random_density_matrix((3, 3), r)
    X, Z = (bounds.as_povm(b) for b in experiments._random_basis_pair(3, r))
    assert experiments.measurement_f_term(rho, X, Z) == pytest.approx(0.0, abs=1e-9)


@given(d=st.integers(2, 3), seed=seeds)
def test_ier_forms_hold(d, seed):
    r = RandomSource(seed)
    X, Z = experiments._random_basis_pair(d, r)
    recs = experiments.verify_ier(random_density_matrix((d, d), r), X, Z)
    assert [x.theorem for x in recs] == ["ier-bipartite", "ier-hall"]
    recs += experiments.verify_ier(random_pure_state((d, 2, 2), r), X, Z)
    parts = [random_density_matrix(d, r) for _ in range(3)]
    cq = experiments.classical_register_state(parts, [0.2, 0.3, 0.5])
    recs += experiments.verify_ier(cq, X, Z, classical=True)
    assert all(x.passed for x in recs)


def test_ier_rejects_non_classical_register():
    r = RandomSource(0)
    X, Z = experiments._random_basis_pair(2, r)
    with pytest.raises(ValidationError, match="classical"):
        experiments.verify_ier(maximally_entangled(2), X, Z, classical=True)


def test_classical_register_state():
    parts = [pure_state([1, 0]), pure_state([0, 1])]
    cq = experiments.classical_register_state(parts, [0.5, 0.5])
    assert experiments.is_classical_on(cq, 1)
    assert not experiments.is_classical_on(maximally_entangled(2), 1)


@given(d=st.integers(2, 5), n=st.integers(2, 5), seed=seeds)
def test_lemma_checks(d, n, seed):
    r = RandomSource(seed)
    assert experiments.pinching_lemma_check(random_psd(d, r), random_povm(d, n, r)).passed
    assert experiments.sum_norm_lemma_check(random_psd(d, r, 1), random_psd(d, r)).passed
    assert experiments.max_h_factor_check(random_povm(d, n, r), random_povm(d, 2, r)).passed
    assert experiments.relative_entropy_lemma_check(random_density_matrix((d, 2), r), random_povm(d, n, r)).passed


def test_generic_unitary_scan():
    stats = experiments.generic_unitary_scan(3, 200, RandomSource(1))
    assert stats.fraction_distinct == 1.0
    ties = experiments.generic_unitary_scan(2, 50, RandomSource(1))
    # qubit unitaries always have |U00| = |U11|
    assert ties.fraction_distinct == 0.0
    assert ties.structural_ties < 1e-12


@pytest.mark.parametrize("m", range(2, 65))
def test_unbiased_vector(m):
    y = experiments.unbiased_vector(m)
    j = np.arange(m)
    F = np.exp(2j * np.pi * np.outer(j, j) / m) / math.sqrt(m)
    assert np.allclose(np.abs(y), 1 / math.sqrt(m))
    assert np.allclose(np.abs(F.conj().T @ y), 1 / math.sqrt(m), atol=1e-10)


@pytest.mark.parametrize("d", [3, 5, 8, 16])
def test_gap_unitary(d):
    theta = 0.6
    U = experiments.gap_unitary(d, theta)
    assert np.allclose(U.conj().T @ U, np.eye(d), atol=1e-12)
    assert abs(U[0, 0]) ** 2 == pytest.approx(math.cos(theta) ** 2, abs=1e-12)
    pt = experiments.gap_construction(d, theta)
    assert pt.c_max == pytest.approx(math.cos(theta) ** 2, abs=1e-9)
    assert pt.delta > 0


def test_gap_argument_checks():
    with pytest.raises(ValueError):
        experiments.gap_unitary(2, 0.5)
    with pytest.raises(ValueError):
        experiments.gap_unitary(8, 2.0)


def test_fig1_curve_shape():
    curve = experiments.fig1_curve(11)
    assert len(curve) == 11
    assert curve[0][0] == 0.0 and curve[-1][0] == 1.0


def test_parse_dims():
    assert experiments.parse_dims("2x2,3x3x3") == [(2, 2), (3, 3, 3)]
    assert experiments.parse_dims(" 9X9 ") == [(9, 9)]
    for bad in ("", "2xa", "0x2"):
        with pytest.raises(ValueError):
            experiments.parse_dims(bad)


@pytest.mark.parametrize("suite", experiments.SUITES)
def test_run_suite_smoke(suite):
    recs = experiments.run_suite(suite, seed=3, trials=8)
    assert recs
    assert all(r.passed for r in recs), [r for r in recs if not r.passed]


def test_run_suite_is_replayable():
    a = experiments.run_suite("ur-povm", seed=11, trials=6)
    b = experiments.run_suite("ur-povm", seed=11, trials=6)
    assert [r.as_dict() for r in a] == [r.as_dict() for r in b]
    # an instance depends only on (seed, index)
    c = experiments.run_suite("ur-povm", seed=11, trials=3)
    assert [r.as_dict() for r in c] == [r.as_dict() for r in a[:3]]
    assert a[4].seed == RandomSource(11).spawn(4).seed


def test_run_suite_maxent_preset():
    recs = experiments.run_suite("ur-bipartite", trials=4, dims=[(9, 9)], state="maxent")
    assert all(r.passed for r in recs)
    assert all(r.rhs < 0 for r in recs)


def test_run_suite_unknown():
    with pytest.raises(KeyError):
        experiments.run_suite("nope")


def test_haar_average_reports_stderr():
    X, Z = experiments.example1_bases()
    mean, err = experiments.haar_average_q_state(X, Z, 400, RandomSource(0))
    assert 0.5 < mean < 1.6
    assert 0 < err < 0.05


def test_haar_average_rounds_to_reference():
    # 10^6 samples: standard error ~2e-4, so this pins the two-decimal value 1.07
    X, Z = experiments.example1_bases()
    mean, err = experiments.haar_average_q_state(X, Z, 1_000_000, RandomSource(99))
    assert err < 3e-4
    assert round(mean, 2) == 1.07


def test_haar_average_matches_per_state_evaluation():
    X, Z = experiments.example1_bases()
    mean, _ = experiments.haar_average_q_state(X, Z, 50, RandomSource(5), batch=7)
    r = RandomSource(5)
    vals = []
    for n in [7] * 7 + [1]:
        psi = r.complex_normal((n, 3))
        psi /= np.linalg.norm(psi, axis=1, keepdims=True)
        vals += [bounds.q_state(np.outer(v, v.conj()), X, Z) for v in psi]
    assert mean == pytest.approx(np.mean(vals), abs=1e-12)


def test_gap_at_d64_matches_asymptote():
    pt = experiments.gap_construction(64, math.pi / 4)
    assert pt.c_max == pytest.approx(0.5, abs=1e-9)
    assert pt.c_2 == pytest.approx(1 / 63, rel=0.15)
    assert pt.delta == pytest.approx(pt.predicted_delta, rel=0.15)


def test_gap_vanishes_for_small_theta():
    pt = experiments.gap_construction(16, 1e-4)
    assert pt.c_max == pytest.approx(1.0, abs=1e-8)
    assert abs(pt.delta) < 1e-6
