"""Pytest configuration and fixtures for hs-signorm."""

import numpy as np
import pytest

from hs_signorm.curves import AxisPath, CircleArc, Polyline
from hs_signorm.registry import get_global_registry, reset_global_registry


@pytest.fixture(autouse=True)
def registry():
    """Fixture to provide a clean registry for each test."""
    reset_global_registry()
    registry = get_global_registry()
    yield registry
    reset_global_registry()


@pytest.fixture
def rng():
    """Seeded generator for tests that draw their own samples."""
    return np.random.default_rng(20240611)


@pytest.fixture
def unit_circle():
    """``(cos t, sin t)`` style arc: curvature 1 on ``[0, 1]``."""
    return CircleArc(curvature=1.0, length=1.0)


@pytest.fixture
def full_circle():
    """Closed circle of unit length, curvature ``2 pi``."""
    return CircleArc(curvature=2 * np.pi, length=1.0)


@pytest.fixture
def half_half_axis():
    """``e1`` for 1/2 then ``e2`` for 1/2."""
    return AxisPath([0, 1], [0.5, 0.5])


@pytest.fixture
def straight_line():
    """Unit segment along the first axis."""
    return Polyline([[0.0, 0.0], [1.0, 0.0]])
