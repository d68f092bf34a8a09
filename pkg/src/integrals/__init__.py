"""Quadrature and integrated spinorial identities"""

from .energy import energy_momentum, energy_momentum_residual, projection_symmetry_residual
from .quadrature import (
    QuadratureRule,
    ball_rule,
    boundary_rule,
    circle_rule,
    disk_rule,
    integrate,
    interior_rule,
    sphere_rule,
)
from .reilly import (
    ReillyReport,
    green_residual,
    hermitian_product,
    hyperbolic_reilly_residual,
    reilly_convergence,
    reilly_residual,
)

__all__ = [
    "QuadratureRule",
    "ReillyReport",
    "ball_rule",
    "boundary_rule",
    "circle_rule",
    "disk_rule",
    "energy_momentum",
    "energy_momentum_residual",
    "green_residual",
    "hermitian_product",
    "hyperbolic_reilly_residual",
    "integrate",
    "interior_rule",
    "projection_symmetry_residual",
    "reilly_convergence",
    "reilly_residual",
    "sphere_rule",
]
