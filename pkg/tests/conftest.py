"""
Fixtures compartidos por la suite de tests
"""
import numpy as np
import pytest

from app.modules.pl_bracket.models import PLParams


@pytest.fixture
def symbolic_params() -> PLParams:
    """(a, b, c, d, e, f) completamente simbólicos"""
    return PLParams.symbolic()


@pytest.fixture
def lv_params() -> PLParams:
    """Estrato Lotka-Volterra (caso C, b = 1)"""
    return PLParams.of(0, 1, 0, 0, 0, 0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0)


@pytest.fixture
def client():
    """Cliente HTTP de prueba sobre la aplicación FastAPI"""
    from fastapi.testclient import TestClient

    from main import app

    with TestClient(app) as test_client:
        yield test_client
