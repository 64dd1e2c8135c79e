import numpy as np
import pytest

from src.core.config import Settings
from src.scenarios import ScenarioService

# Acceptance constants
K1, K2, X0 = 1.0, 2.0, 0.7
GRID = np.linspace(-5.0, 5.0, 201)
ORACLE_TOL = 1e-9


@pytest.fixture
def settings():
    return Settings(seed=7, tol=1e-10, oracle_tol=ORACLE_TOL, grid=(-5.0, 5.0, 201))


@pytest.fixture
def service(settings):
    return ScenarioService(settings)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def grid():
    return GRID


@pytest.fixture
def s51_case1(service):
    return service.preset("s51-case1", k1=K1, k2=K2, x0=X0)


@pytest.fixture
def s52_generic(service):
    return service.preset("s52-generic")


@pytest.fixture
def s53_generic(service):
    return service.preset("s53-generic")
