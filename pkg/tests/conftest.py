"""Shared fixtures: reduced resolution and seeded model domains"""

import numpy as np
import pytest

from src.core.config import config_overrides
from src.models.domain import make_domain

# Small enough for a quick run, large enough for every default threshold.
TEST_RESOLUTION = {
    "fourier_modes": 16,
    "theta_nodes": 16,
    "radial_nodes": 24,
    "angular_nodes": 48,
    "boundary_samples": 60,
}


@pytest.fixture(autouse=True)
def test_resolution():
    with config_overrides({"resolution": TEST_RESOLUTION, "random_fields": {"count": 2}}) as config:
        yield config


@pytest.fixture
def disk():
    return make_domain("euclidean-ball", 2, 1.0)


@pytest.fixture
def ball():
    return make_domain("euclidean-ball", 3, 1.0)


@pytest.fixture
def hyperbolic_disk():
    return make_domain("hyperbolic-ball", 2, 1.0)


@pytest.fixture
def hyperbolic_ball():
    return make_domain("hyperbolic-ball", 3, 1.0)


@pytest.fixture
def psi0():
    v = np.array([1.0 + 0.5j, -0.25 + 1.0j])
    return v / np.linalg.norm(v)
