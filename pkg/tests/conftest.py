import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    from entroplex.quantum import RandomSource

    return RandomSource(12345)


def random_hermitian(n, seed):
    g = np.random.default_rng(seed)
    G = g.normal(size=(n, n)) + 1j * g.normal(size=(n, n))
    return 0.5 * (G + G.conj().T)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
