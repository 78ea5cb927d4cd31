"""The compiled kernels and the pure-Python fallback must agree."""

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_hermitian
from entroplex import _backend

compiled = _backend.compiled_kernels
python = _backend.python_kernels
needs_ext = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")
seeds = st.integers(0, 2**32 - 1)


@needs_ext
@given(n=st.integers(1, 10), seed=seeds)
def test_eigh_parity(n, seed):
    M = random_hermitian(n, seed)
    w1, V1 = compiled.eigh(M)
    w2, _ = python.eigh(M)
    assert np.allclose(w1, w2, atol=1e-11)
    assert np.allclose(V1 @ np.diag(w1) @ V1.conj().T, M, atol=1e-12 * n * max(1, np.abs(M).max()))
    assert np.allclose(compiled.eigvalsh(M), w2, atol=1e-11)


@needs_ext
@given(n=st.integers(1, 8), seed=seeds, p=st.floats(0, 1))
def test_lambda_min_affine_parity(n, seed, p):
    A, B = random_hermitian(n, seed), random_hermitian(n, seed + 1)
    assert compiled.lambda_min_affine(A, B, p) == pytest.approx(python.lambda_min_affine(A, B, p), abs=1e-11)


@needs_ext
@given(n=st.integers(1, 8), seed=seeds)
def test_maximize_parity(n, seed):
    A, B = random_hermitian(n, seed), random_hermitian(n, seed + 1)
    p1, f1 = compiled.maximize_lambda_min(A, B)
    p2, f2 = python.maximize_lambda_min(A, B)
    assert f1 == pytest.approx(f2, abs=1e-10)


@given(n=st.integers(1, 6), seed=seeds)
def test_maximizer_beats_dense_grid(n, seed):
    A, B = random_hermitian(n, seed), random_hermitian(n, seed + 1)
    p, f = _backend.maximize_lambda_min(A, B)
    grid = max(np.linalg.eigvalsh(q * A + (1 - q) * B)[0] for q in np.linspace(0, 1, 2001))
    assert f >= grid - 1e-9
    assert f == pytest.approx(np.linalg.eigvalsh(p * A + (1 - p) * B)[0], abs=1e-10)


def test_read_only_inputs_accepted():
    A = random_hermitian(3, 0)
    A.setflags(write=False)
    _backend.maximize_lambda_min(A, A)
    _backend.lambda_min_affine(A, A, 0.5)


def test_pure_python_switch():
    env = dict(os.environ, ENTROPLEX_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import entroplex; print(entroplex.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_pure_python_gives_example_numbers():
    code = (
        "from entroplex.experiments import example1_report; r = example1_report();"
        "print(repr(r.q_opt), repr(r.lambda_half))"
    )
    env = dict(os.environ, ENTROPLEX_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    q, lam = (float(x) for x in out.stdout.split())
    from entroplex.experiments import example1_report

    r = example1_report()
    assert q == pytest.approx(r.q_opt, abs=1e-12)
    assert lam == pytest.approx(r.lambda_half, abs=1e-12)
