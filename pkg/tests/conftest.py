"""Shared fixtures and reporting hooks for the test suite."""

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from twistlab.grids import make_grid

settings.register_profile(
    "deterministic",
    derandomize=True,
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")

# one line per acceptance criterion, echoed after the pytest summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def grid64():
    return make_grid(1, 64, 8.0)


@pytest.fixture
def grid2d():
    return make_grid(2, 16, 5.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
