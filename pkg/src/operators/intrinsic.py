"""Intrinsic connection and Dirac operator of boundary fields, and the Gauss formula check"""

import logging
from typing import List, Optional

import numpy as np

from ..core.config import default_config
from ..core.errors import DimensionMismatchError, UnsupportedBasisError
from ..models.fields import SpinorField
from .boundary import resolve_basis
from .pointwise import covariant_values

logger = logging.getLogger(__name__)


def _require_boundary(field: SpinorField):
    if not field.is_boundary:
        raise UnsupportedBasisError("Operation requires a boundary field")


def boundary_covariant_values(field: SpinorField) -> List[np.ndarray]:
    """nabla^S_{e_a} Phi at the basis nodes for each unit frame vector, intrinsic components"""
    _require_boundary(field)
    basis = field.boundary
    values = field.intrinsic_values()
    derivs = basis.angular_derivatives(field.coefficients)
    conn = basis.connection_terms(values)
    return [d + c for d, c in zip(derivs, conn)]


def boundary_covariant_derivative(field: SpinorField, direction: np.ndarray) -> SpinorField:
    """nabla^S_X Phi for X given by constant tangent frame components

    Projected back onto the basis (exact on the circle, L2 projection on the sphere).
    """
    _require_boundary(field)
    direction = np.asarray(direction, dtype=float).reshape(-1)
    covariant = boundary_covariant_values(field)
    if direction.size != len(covariant):
        raise DimensionMismatchError(
            f"Direction must have {len(covariant)} tangent components, got {direction.size}"
        )
    values = sum(w * c for w, c in zip(direction, covariant))
    return field.with_coefficients(
        field.boundary.analyze(values), kind="boundary", description="covariant-derivative"
    )


def boundary_dirac_values(field: SpinorField) -> np.ndarray:
    """sum_a gamma^S(e_a) nabla^S_{e_a} Phi at the nodes, intrinsic components"""
    covariant = boundary_covariant_values(field)
    return sum(c @ g.T for g, c in zip(field.boundary.tangent_cliffords, covariant))


def extrinsic_killing_residual(field: SpinorField, alpha: Optional[float] = None) -> float:
    """Max of |nabla^S_X Phi + alpha gamma^S(X) Phi| over nodes and frame vectors, relative to max |Phi|

    alpha defaults to H/2, the value realized by restrictions of parallel spinors.
    """
    _require_boundary(field)
    if alpha is None:
        alpha = 0.5 * field.domain.mean_curvature
    values = field.intrinsic_values()
    scale = float(np.max(np.abs(values)))
    if scale == 0.0:
        return 0.0
    residual = 0.0
    for g, c in zip(field.boundary.tangent_cliffords, boundary_covariant_values(field)):
        residual = max(residual, float(np.max(np.abs(c + alpha * values @ g.T))))
    return residual / scale


def gauss_formula_residual(
    field: SpinorField,
    samples: int = 64,
    seed: int = 0,
    h: Optional[float] = None,
) -> float:
    """Max defect of  nabla^S_X psi = nabla_X psi - 1/2 gamma^S(A X) psi  on boundary samples

    The left side differentiates the intrinsic components of psi along the boundary
    sphere by centered differences in the angular coordinates; the right side uses
    the ambient connection. Normalized by max(1, max |psi|).

    Raises:
        UnsupportedBasisError: Unless n is 2 or 3
    """
    if field.is_boundary:
        raise UnsupportedBasisError("Gauss formula check requires an interior field")
    domain = field.domain
    basis = resolve_basis(domain)
    h = h if h is not None else default_config().tolerance("fd_step")
    R = basis.radius

    if domain.n == 2:
        angles = (2.0 * np.pi * (np.arange(samples) + 0.5) / samples,)
    else:
        # keep away from the poles where the (theta, phi) frame degenerates
        directions = domain.boundary_samples(samples, seed=seed) / domain.euclidean_radius
        theta, phi = basis.angles_of(directions)
        theta = np.clip(theta, 0.2, np.pi - 0.2)
        angles = (theta, phi)

    def intrinsic_at(ang):
        points = domain.boundary_points(basis.directions(ang))
        return np.einsum("pij,pj->pi", basis.frame_rotation(ang), field.evaluate(points))

    values = intrinsic_at(angles)
    lhs = []
    for a in range(domain.n - 1):
        plus = tuple(t + h if i == a else t for i, t in enumerate(angles))
        minus = tuple(t - h if i == a else t for i, t in enumerate(angles))
        d = (intrinsic_at(plus) - intrinsic_at(minus)) / (2.0 * h * R)
        if a == 1:
            d = d / np.sin(angles[0])[:, None]
        lhs.append(d)
    lhs = [d + c for d, c in zip(lhs, basis.connection_terms(values, angles))]

    points = domain.boundary_points(basis.directions(angles))
    psi = field.evaluate(points)
    nu = domain.inward_normal(points)
    g_nu = domain.rep.gamma(nu)
    frame = basis.tangent_frame(angles)
    Q = basis.frame_rotation(angles)
    residual = 0.0
    for a in range(domain.n - 1):
        e_a = frame[:, a, :]
        ambient = covariant_values(field, points, e_a)
        g_Ae = domain.rep.gamma(domain.mean_curvature * e_a)
        shape_term = np.einsum("pab,pbc,pc->pa", g_Ae, g_nu, psi)
        rhs = np.einsum("pij,pj->pi", Q, ambient - 0.5 * shape_term)
        residual = max(residual, float(np.max(np.abs(lhs[a] - rhs))))
    scale = max(1.0, float(np.max(np.abs(psi))))
    logger.debug("Gauss formula residual %.3e on %d samples", residual / scale, samples)
    return residual / scale
