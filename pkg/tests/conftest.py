import numpy as np
import pytest

from johngap import body as hb


@pytest.fixture(scope="session")
def small_instance():
    """Smallest instance with R > 1: n=1100, k=9 gives R ~ 1.10."""
    params = hb.params_for_k(1100, 9, m=24, seed=3)
    return hb.build_instance(params)


@pytest.fixture(scope="session")
def demo_instance():
    """The desk-scale demo: n=4000, k=16, m=256, seed 7, R ~ 3.003."""
    params = hb.params_for_k(4000, 16, m=256, seed=7)
    return hb.build_instance(params)


@pytest.fixture(scope="session")
def audit_instance():
    """Low-dimensional-enough instance (n=400, k=1, R ~ 1.20) whose
    inclusion checks stay cheap for the adversarial audit tests."""
    params = hb.params_for_k(400, 1, m=8, seed=2)
    return hb.build_instance(params)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
