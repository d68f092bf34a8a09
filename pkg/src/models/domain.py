"""Model spin domains: Euclidean balls and hyperbolic geodesic balls in the Poincare model"""

import logging
from enum import Enum
from typing import Any, Dict, Optional, Union

import numpy as np
from scipy import integrate, special

from ..clifford import CliffordRep, build_clifford_rep
from ..core.config import default_config
from ..core.errors import InvalidDimensionError, PreconditionError
from ..core.rng import make_rng

logger = logging.getLogger(__name__)

DISCRETIZED_DIMENSIONS = (2, 3)
MAX_POINTWISE_DIMENSION = 8


class DomainKind(str, Enum):
    EUCLIDEAN = "euclidean-ball"
    HYPERBOLIC = "hyperbolic-ball"

    @classmethod
    def parse(cls, value: Union[str, "DomainKind"]) -> "DomainKind":
        if isinstance(value, DomainKind):
            return value
        aliases = {"euclidean": cls.EUCLIDEAN, "hyperbolic": cls.HYPERBOLIC}
        try:
            return aliases.get(value) or cls(value)
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise ValueError(f"Domain kind must be one of {choices}, got {value!r}")


class ModelDomain:
    """A model Riemannian spin domain with connected spherical boundary

    Points are Cartesian coordinates x in the Euclidean ball |x| < a. The metric is
    e^{2u} delta with u = 0 (Euclidean) or u = log(2 / (1 - |x|^2)) (Poincare ball),
    and spinors are expressed in the orthonormal frame E_i = e^{-u} d_i.

    Attributes:
        kind: DomainKind
        n: Ambient dimension
        radius: Euclidean radius r, or geodesic radius rho for hyperbolic balls
        rep: CliffordRep of dimension n
        resolution: Truncation parameters
    """

    def __init__(
        self,
        kind: DomainKind,
        n: int,
        radius: float,
        rep: CliffordRep,
        resolution: Dict[str, Any],
    ):
        self.kind = kind
        self.n = n
        self.radius = float(radius)
        self.rep = rep
        self.resolution = dict(resolution)

    @property
    def is_hyperbolic(self) -> bool:
        return self.kind is DomainKind.HYPERBOLIC

    @property
    def scalar_curvature(self) -> float:
        return -float(self.n * (self.n - 1)) if self.is_hyperbolic else 0.0

    @property
    def shifted_scalar_curvature(self) -> float:
        """R + n(n-1) for hyperbolic domains, R otherwise"""
        if self.is_hyperbolic:
            return self.scalar_curvature + self.n * (self.n - 1)
        return self.scalar_curvature

    @property
    def sectional_curvature(self) -> float:
        return -1.0 if self.is_hyperbolic else 0.0

    @property
    def euclidean_radius(self) -> float:
        """Coordinate radius a of the boundary sphere"""
        if self.is_hyperbolic:
            return float(np.tanh(self.radius / 2.0))
        return self.radius

    @property
    def mean_curvature(self) -> float:
        if self.is_hyperbolic:
            return float(1.0 / np.tanh(self.radius))
        return 1.0 / self.radius

    @property
    def induced_radius(self) -> float:
        if self.is_hyperbolic:
            return float(np.sinh(self.radius))
        return self.radius

    @property
    def volume(self) -> float:
        n, rho = self.n, self.radius
        if not self.is_hyperbolic:
            return float(np.pi ** (n / 2) / special.gamma(n / 2 + 1) * rho**n)
        if n == 2:
            return float(4.0 * np.pi * np.sinh(rho / 2.0) ** 2)
        if n == 3:
            return float(np.pi * (np.sinh(2.0 * rho) - 2.0 * rho))
        sphere = 2.0 * np.pi ** (n / 2) / special.gamma(n / 2)
        value, _ = integrate.quad(lambda t: np.sinh(t) ** (n - 1), 0.0, rho)
        return float(sphere * value)

    @property
    def boundary_area(self) -> float:
        sphere = 2.0 * np.pi ** (self.n / 2) / special.gamma(self.n / 2)
        return float(sphere * self.induced_radius ** (self.n - 1))

    def conformal_log(self, x: np.ndarray) -> np.ndarray:
        """u(x), shape (P,)"""
        x = np.atleast_2d(x)
        if not self.is_hyperbolic:
            return np.zeros(x.shape[0])
        return np.log(2.0 / (1.0 - np.sum(x * x, axis=-1)))

    def conformal_factor(self, x: np.ndarray) -> np.ndarray:
        """e^{u(x)}, shape (P,)"""
        return np.exp(self.conformal_log(x))

    def conformal_gradient(self, x: np.ndarray) -> np.ndarray:
        """Euclidean gradient of u, shape (P, n)"""
        x = np.atleast_2d(x)
        if not self.is_hyperbolic:
            return np.zeros_like(x, dtype=float)
        return self.conformal_factor(x)[:, None] * x

    def boundary_points(self, directions: np.ndarray) -> np.ndarray:
        """Scale unit directions (P, n) onto the boundary sphere"""
        d = np.atleast_2d(np.asarray(directions, dtype=float))
        return self.euclidean_radius * d / np.linalg.norm(d, axis=-1, keepdims=True)

    def inward_normal(self, x: np.ndarray) -> np.ndarray:
        """Unit inward normal in frame components at boundary points, shape (P, n)"""
        x = np.atleast_2d(x)
        return -x / np.linalg.norm(x, axis=-1, keepdims=True)

    def boundary_samples(self, count: int, seed: Optional[int] = None) -> np.ndarray:
        """Boundary sample points

        Equispaced on the circle for n = 2; seeded uniform directions otherwise (or when
        a seed is given).
        """
        if count < 1:
            raise ValueError(f"Sample count must be >= 1, got {count}")
        if self.n == 2 and seed is None:
            theta = 2.0 * np.pi * (np.arange(count) + 0.5) / count
            return self.boundary_points(np.stack([np.cos(theta), np.sin(theta)], axis=-1))

        rng = make_rng(0 if seed is None else seed, stream=101)
        return self.boundary_points(rng.standard_normal((count, self.n)))

    def interior_samples(self, count: int, seed: int = 0, fraction: float = 0.9) -> np.ndarray:
        """Seeded uniform points in the ball of coordinate radius fraction * a"""
        rng = make_rng(seed, stream=102)
        d = rng.standard_normal((count, self.n))
        d /= np.linalg.norm(d, axis=-1, keepdims=True)
        r = fraction * self.euclidean_radius * rng.random(count) ** (1.0 / self.n)
        return d * r[:, None]

    def descriptor(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "n": self.n, "radius": self.radius}

    def __repr__(self) -> str:
        return f"ModelDomain(kind={self.kind.value}, n={self.n}, radius={self.radius})"


def make_domain(
    kind: Union[str, DomainKind],
    n: int,
    radius: float,
    resolution: Optional[Dict[str, Any]] = None,
) -> ModelDomain:
    """Build a model domain

    Args:
        kind: "euclidean-ball" or "hyperbolic-ball"
        n: Ambient dimension (2..8; boundary discretizations need 2 or 3)
        radius: Euclidean radius, or geodesic radius for hyperbolic balls
        resolution: Truncation overrides (fourier_modes, theta_nodes, ...)

    Returns:
        ModelDomain

    Raises:
        InvalidDimensionError: If n is outside 2..8
        PreconditionError: If the radius is not positive and finite
    """
    kind = DomainKind.parse(kind)
    if not isinstance(n, (int, np.integer)) or n < 2 or n > MAX_POINTWISE_DIMENSION:
        raise InvalidDimensionError(
            f"Dimension must be in 2..{MAX_POINTWISE_DIMENSION}, got {n}"
        )
    if not np.isfinite(radius) or radius <= 0:
        raise PreconditionError(f"Radius must be > 0, got {radius}")

    merged = dict(default_config().get("resolution"))
    merged.update(resolution or {})

    domain = ModelDomain(kind, int(n), float(radius), build_clifford_rep(int(n)), merged)
    logger.debug("Created %r", domain)
    return domain


def domain_from_alpha(n: int, alpha: float, resolution: Optional[Dict[str, Any]] = None) -> ModelDomain:
    """Hyperbolic geodesic ball whose boundary has mean curvature coth(rho) = alpha

    Raises:
        PreconditionError: If alpha <= 1
    """
    if not alpha > 1.0:
        raise PreconditionError(f"Alpha must be > 1, got {alpha}")
    rho = 0.5 * np.log((alpha + 1.0) / (alpha - 1.0))
    return make_domain(DomainKind.HYPERBOLIC, n, float(rho), resolution)
