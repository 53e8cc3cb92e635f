import math

import numpy as np
import pytest
from hypothesis import settings

from stratwave import make_homogeneous, make_profile, make_square_well, make_two_layer

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


class CompactBump:
    """``exp(1 - 1 / (1 - r^2))`` on ``|x - center| < radius``, optionally modulated."""

    def __init__(self, center, radius, amplitude=1.0, frequency=0.0):
        self.center, self.radius = center, radius
        self.amplitude, self.frequency = amplitude, frequency

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        r = (x - self.center) / self.radius
        out = np.zeros(x.shape, dtype=complex)
        m = np.abs(r) < 1
        out[m] = self.amplitude * np.exp(1 - 1 / (1 - r[m] ** 2) + 1j * self.frequency * x[m])
        return out


@pytest.fixture
def two_layer():
    return make_two_layer(3.0, 2.0)


@pytest.fixture
def square_well():
    return make_square_well(1.0, 10.0, math.pi)


@pytest.fixture
def homogeneous():
    return make_homogeneous(2.0)


@pytest.fixture
def layered():
    return make_profile([(-1.0, 0.0, 20.0), (0.0, 1.5, -3.0)], 2.0, 5.0)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
