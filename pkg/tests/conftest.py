"""Pytest configuration settings."""

import logging

import pytest

from app.catalog.instances import (
    binary_quadratics,
    e6_prime,
    f4_prime,
    g2_binary_cubics,
    gl_chain,
)
from app.pvscore.instance import PvsInstance
from app.pvscore.regularity import SamplingPlan
from tests.utils import configure_logging

lgr = logging.getLogger(__name__)


@pytest.fixture(scope="session")
def plan() -> SamplingPlan:
    """Fixed sampling knobs so every run draws the same points."""
    return SamplingPlan(trials=24, heights=(10, 100, 1000), seed=1729)


@pytest.fixture(scope="session")
def quadratics() -> PvsInstance:
    """GL2 on binary quadratic forms."""
    return binary_quadratics()


@pytest.fixture(scope="session")
def cubics() -> PvsInstance:
    """GL2 on binary cubic forms inside G2."""
    return g2_binary_cubics()


@pytest.fixture(scope="session")
def gl121() -> PvsInstance:
    """GL chain (1, 2, 1)."""
    return gl_chain((1, 2, 1))


@pytest.fixture(scope="session")
def gl232() -> PvsInstance:
    """GL chain (2, 3, 2)."""
    return gl_chain((2, 3, 2))


@pytest.fixture(scope="session")
def f4() -> PvsInstance:
    """F4 with labels (0,2,0,0)."""
    inst = f4_prime()
    lgr.debug(f"F4 fixture: {inst.n_weights} weights")
    return inst


@pytest.fixture(scope="session")
def e6() -> PvsInstance:
    """E6 with label 2 on alpha_4."""
    inst = e6_prime()
    lgr.debug(f"E6 fixture: {inst.n_weights} weights")
    return inst


configure_logging(level=logging.DEBUG)
