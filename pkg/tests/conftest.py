"""Shared fixtures: the benchmark operating point used across the suite."""

import pytest

from magnocool.constants import TWO_PI
from magnocool.params import FeedbackConfig, OperatingPoint

# Verdict lines recorded by the acceptance tests; echoed in the terminal
# summary so they are visible even with output capture on.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def make_point(**overrides) -> OperatingPoint:
    """Benchmark operating point; keyword overrides take rad/s values."""
    fields = dict(
        omega_a=TWO_PI * 10e9,
        omega_m=TWO_PI * 10e9,
        omega_b=TWO_PI * 10e6,
        gamma_b=TWO_PI * 100.0,
        kappa_a=TWO_PI * 5e6,
        kappa_m=TWO_PI * 10e6,
        g_a=TWO_PI * 18e6,
        G_m=TWO_PI * 2e6,
        T=0.010,
        eta=0.9,
    )
    fields.update(overrides)
    return OperatingPoint(**fields)


@pytest.fixture
def point() -> OperatingPoint:
    return make_point()


@pytest.fixture
def feedback() -> FeedbackConfig:
    return FeedbackConfig(g0=1000.0, s_imp=4.04e-9)
