from pathlib import Path

import numpy as np
import pytest

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def random_instance(rng, n=None, tie_prob=0.2, zero_prob=0.0):
    """Random (ell, mu): mu from a flat Dirichlet, ell uniform on [0, 1].

    With probability ``tie_prob`` some pay-offs are copied onto others to
    force equal level sets; with ``zero_prob`` a few mu entries are zeroed.
    """
    if n is None:
        n = int(rng.integers(2, 9))
    ell = rng.uniform(0.0, 1.0, n)
    if rng.random() < tie_prob and n >= 2:
        k = int(rng.integers(1, n))
        src = rng.integers(0, n, k)
        dst = rng.integers(0, n, k)
        ell[dst] = ell[src]
    mu = rng.dirichlet(np.ones(n))
    if rng.random() < zero_prob and n >= 2:
        mu[rng.integers(0, n, int(rng.integers(1, n)))] = 0.0
        if mu.sum() == 0:
            mu[0] = 1.0
        mu = mu / mu.sum()
    return ell, mu


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)


@pytest.fixture
def instance_dir():
    return INSTANCES


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
