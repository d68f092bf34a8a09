"""Quadrature rules on model balls and their boundary spheres

Interior rules are Gauss-Legendre in the radius times trapezoid in the angles
(Gauss-Legendre in cos(theta) for n = 3). Hyperbolic rules carry the conformal
weights e^{n u} (interior) and e^{(n-1) u} (boundary).
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Union

import numpy as np
from scipy import special

from ..core.errors import DimensionMismatchError, UnsupportedBasisError
from ..models.domain import ModelDomain

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes (P, n) and positive weights (P,) for one support"""

    support: str
    nodes: np.ndarray
    weights: np.ndarray
    order: Dict[str, Any] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return self.weights.size

    @property
    def measure(self) -> float:
        return float(np.sum(self.weights))


def integrate(rule: QuadratureRule, samples: np.ndarray) -> Union[float, complex]:
    """Weighted sum of node samples

    Raises:
        DimensionMismatchError: If samples are not aligned with the nodes
    """
    samples = np.asarray(samples)
    if samples.shape[0] != rule.size:
        raise DimensionMismatchError(
            f"Samples must have {rule.size} entries, got {samples.shape[0]}"
        )
    total = np.tensordot(rule.weights, samples, axes=(0, 0))
    if np.iscomplexobj(total):
        return complex(total) if np.ndim(total) == 0 else total
    return float(total) if np.ndim(total) == 0 else total


def circle_rule(radius: float, count: int) -> QuadratureRule:
    theta = 2.0 * np.pi * np.arange(count) / count
    nodes = radius * np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    weights = np.full(count, 2.0 * np.pi * radius / count)
    return QuadratureRule("boundary", nodes, weights, {"angular": count})


def sphere_rule(radius: float, theta_nodes: int, phi_nodes: Optional[int] = None) -> QuadratureRule:
    phi_nodes = phi_nodes or 2 * theta_nodes
    x, w = special.roots_legendre(theta_nodes)
    theta = np.repeat(np.arccos(x), phi_nodes)
    phi = np.tile(2.0 * np.pi * np.arange(phi_nodes) / phi_nodes, theta_nodes)
    nodes = radius * np.stack(
        [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], axis=-1
    )
    weights = np.repeat(w, phi_nodes) * (2.0 * np.pi / phi_nodes) * radius**2
    return QuadratureRule("boundary", nodes, weights, {"theta": theta_nodes, "phi": phi_nodes})


def _radial(radius: float, count: int):
    x, w = special.roots_legendre(count)
    return 0.5 * radius * (x + 1.0), 0.5 * radius * w


def disk_rule(radius: float, radial: int, angular: int) -> QuadratureRule:
    r, wr = _radial(radius, radial)
    theta = 2.0 * np.pi * np.arange(angular) / angular
    rr = np.repeat(r, angular)
    tt = np.tile(theta, radial)
    nodes = np.stack([rr * np.cos(tt), rr * np.sin(tt)], axis=-1)
    weights = np.repeat(wr * r, angular) * (2.0 * np.pi / angular)
    return QuadratureRule("interior", nodes, weights, {"radial": radial, "angular": angular})


def ball_rule(radius: float, radial: int, theta_nodes: int, phi_nodes: Optional[int] = None) -> QuadratureRule:
    r, wr = _radial(radius, radial)
    shell = sphere_rule(1.0, theta_nodes, phi_nodes)
    nodes = (r[:, None, None] * shell.nodes[None, :, :]).reshape(-1, 3)
    weights = ((wr * r**2)[:, None] * shell.weights[None, :]).reshape(-1)
    order = {"radial": radial, **shell.order}
    return QuadratureRule("interior", nodes, weights, order)


def interior_rule(
    domain: ModelDomain, radial: Optional[int] = None, angular: Optional[int] = None
) -> QuadratureRule:
    """Volume rule for the domain's metric

    Raises:
        UnsupportedBasisError: Unless n is 2 or 3
    """
    radial = int(radial or domain.resolution["radial_nodes"])
    a = domain.euclidean_radius
    if domain.n == 2:
        rule = disk_rule(a, radial, int(angular or domain.resolution["angular_nodes"]))
    elif domain.n == 3:
        rule = ball_rule(a, radial, int(angular or domain.resolution["theta_nodes"]) // 2)
    else:
        raise UnsupportedBasisError(f"Interior quadrature is available for n in (2, 3), got n={domain.n}")
    if not domain.is_hyperbolic:
        return rule
    weights = rule.weights * domain.conformal_factor(rule.nodes) ** domain.n
    return QuadratureRule(rule.support, rule.nodes, weights, rule.order)


def boundary_rule(domain: ModelDomain, angular: Optional[int] = None) -> QuadratureRule:
    """Area rule on the boundary sphere (nodes in Euclidean coordinates, intrinsic weights)"""
    a = domain.euclidean_radius
    if domain.n == 2:
        rule = circle_rule(a, int(angular or domain.resolution["angular_nodes"]))
    elif domain.n == 3:
        rule = sphere_rule(a, int(angular or domain.resolution["theta_nodes"]) // 2)
    else:
        raise UnsupportedBasisError(f"Boundary quadrature is available for n in (2, 3), got n={domain.n}")
    if not domain.is_hyperbolic:
        return rule
    weights = rule.weights * domain.conformal_factor(rule.nodes) ** (domain.n - 1)
    return QuadratureRule(rule.support, rule.nodes, weights, rule.order)
