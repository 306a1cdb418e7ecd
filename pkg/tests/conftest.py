import numpy as np
import pytest

from gaugenet.lattice import Region, SampledManifold

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def circle():
    return SampledManifold("circle", (32,), 2)


@pytest.fixture(scope="session")
def small():
    return SampledManifold("circle", (6,), 2)


@pytest.fixture(scope="session")
def torus():
    return SampledManifold("torus", (8, 8), 2)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
        terminalreporter.write_line(line)
