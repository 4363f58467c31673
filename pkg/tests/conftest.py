import numpy as np
import pytest

from c2arch.pathloss import ThreeSlopeParams


@pytest.fixture
def pl():
    return ThreeSlopeParams(10.0, 50.0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
