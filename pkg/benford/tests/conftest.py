"""Pytest configuration and fixtures for digit toolkit tests."""

import math

import pytest

from benford.config import ENV_PREFIX, Settings, get_settings
from benford.construct import benford_partition, construct_n_digit, named_bump
from benford.density import mod1_project, uniform
from benford.presets import geometric_steps, sine1, triangle
from benford.schemas import ConstantShape, Piece, PiecewiseDensity


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Isolate every test from BENFORD_* variables in the environment."""
    for name in Settings.model_fields:
        monkeypatch.delenv(f"{ENV_PREFIX}{name.upper()}", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def uniform_g():
    """X uniform on [0, 1): the exact Benford variable."""
    return uniform()


@pytest.fixture
def uniform_dag(uniform_g):
    """Uniform mod-1 density."""
    return mod1_project(uniform_g)


@pytest.fixture
def sine1_g():
    """One sine bump on every first-digit cell [log d, log(d+1))."""
    return sine1()


@pytest.fixture
def sine1_dag(sine1_g):
    """The 1-digit sine construction as a mod-1 density."""
    return mod1_project(sine1_g)


@pytest.fixture
def sine2_dag():
    """Sine bumps on all 90 two-digit cells."""
    return construct_n_digit(benford_partition(2), named_bump("sine"))


@pytest.fixture
def geom60_g():
    """Sixty unit steps with masses proportional to 2**-k."""
    return geometric_steps(60, 0.5)


@pytest.fixture
def triangle_g():
    """Triangle(0, 3/2, 3)."""
    return triangle(0.0, 1.5, 3.0)


@pytest.fixture
def two_step_g():
    """Heights 0.5 on [0, 0.5) and 1.5 on [0.5, 1)."""
    return PiecewiseDensity(
        pieces=(
            Piece(lo=0.0, hi=0.5, shape=ConstantShape(level=1.0), weight=0.25),
            Piece(lo=0.5, hi=1.0, shape=ConstantShape(level=1.0), weight=0.75),
        )
    )


@pytest.fixture
def benford_first_digit():
    """Exact Benford first-digit probabilities."""
    return [math.log10(1 + 1 / d) for d in range(1, 10)]
