"""Shared helpers for suite implementations"""

from typing import List

import numpy as np

from ..core.config import default_config
from ..core.rng import make_rng
from ..models.domain import ModelDomain, make_domain
from ..models.fields import SpinorField, random_polynomial_field


def build_domain(config) -> ModelDomain:
    """Domain of the experiment (radius is the geodesic radius on hyperbolic balls)"""
    return make_domain(config.kind, config.n, config.radius, config.resolution())


def seeded_spinor(domain: ModelDomain, seed: int, stream: int = 0) -> np.ndarray:
    """Unit constant spinor drawn from the experiment seed"""
    rng = make_rng(seed, stream=500 + stream)
    d = domain.rep.spinor_dim
    psi0 = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return psi0 / np.linalg.norm(psi0)


def random_fields(domain: ModelDomain, seed: int) -> List[SpinorField]:
    """random_fields.count seeded polynomial fields of degree random_fields.degree"""
    config = default_config()
    count = int(config.get("random_fields.count"))
    degree = int(config.get("random_fields.degree"))
    return [random_polynomial_field(domain, seed, degree=degree, stream=j) for j in range(count)]


def relative(value: float, scale: float) -> float:
    return float(value) / max(1.0, float(scale))
