import numpy as np
import pytest
from hypothesis import strategies as st

from stochlattice import build_distribution
from stochlattice.sampling import random_quantile


@pytest.fixture
def d01():
    return build_distribution([0, 1], [0.5, 0.5])


@pytest.fixture
def dm12():
    return build_distribution([-1, 2], [0.5, 0.5])


@pytest.fixture
def wpair():
    return build_distribution([-0.5, 1.2], [0.5, 0.5])


seeds = st.integers(min_value=0, max_value=2**32 - 1)


def law(seed, **kw):
    return random_quantile(np.random.default_rng(seed), **kw)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
