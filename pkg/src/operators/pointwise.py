"""Pointwise differential operators on interior spinor fields

Spinors live in the orthonormal frame E_i = e^{-u} d_i of the conformally flat
metric e^{2u} delta. The spin connection along a frame vector xi is

    nabla_xi psi = e^{-u} [ xi . d psi + 1/2 gamma(grad u) gamma(xi) psi + 1/2 (xi . grad u) psi ]

which reduces to the flat derivative on Euclidean balls.
"""

import logging
from typing import Callable, Optional, Union

import numpy as np

from ..core.config import default_config
from ..core.errors import DimensionMismatchError, PreconditionError, UnsupportedBasisError
from ..models.domain import ModelDomain
from ..models.fields import SpinorField, derived_field
from ..models.geometry import ExtrinsicData

logger = logging.getLogger(__name__)

Direction = Union[np.ndarray, Callable[[np.ndarray], np.ndarray]]


def _gamma_stack(domain: ModelDomain) -> np.ndarray:
    return np.stack(domain.rep.gammas)


def _require_interior(field: SpinorField):
    if field.is_boundary:
        raise UnsupportedBasisError("Operation requires an interior field")


def frame_derivatives(
    field: SpinorField, x: np.ndarray, method: str = "exact", h: Optional[float] = None
) -> np.ndarray:
    """Covariant derivatives along every frame vector, shape (P, n, spinor_dim)"""
    _require_interior(field)
    domain = field.domain
    x = np.atleast_2d(np.asarray(x, dtype=float))
    psi = field.evaluate(x)
    jac = field.jacobian(x, method=method, h=h)
    if not domain.is_hyperbolic:
        return jac

    grad_u = domain.conformal_gradient(x)
    gammas = _gamma_stack(domain)
    gamma_psi = np.einsum("iab,pb->pia", gammas, psi)
    conn = 0.5 * np.einsum("pab,pib->pia", domain.rep.gamma(grad_u), gamma_psi)
    conn += 0.5 * grad_u[:, :, None] * psi[:, None, :]
    return np.exp(-domain.conformal_log(x))[:, None, None] * (jac + conn)


def _directions_at(direction: Direction, x: np.ndarray, n: int) -> np.ndarray:
    dirs = direction(x) if callable(direction) else np.asarray(direction, dtype=float)
    dirs = np.broadcast_to(dirs, (x.shape[0], n)) if dirs.ndim == 1 else dirs
    if dirs.shape != (x.shape[0], n):
        raise DimensionMismatchError(f"Direction must have {n} frame components, got {dirs.shape}")
    return dirs


def covariant_values(
    field: SpinorField, x: np.ndarray, direction: Direction, method: str = "exact"
) -> np.ndarray:
    """nabla_X psi at points for X given in frame components"""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    dirs = _directions_at(direction, x, field.domain.n)
    return np.einsum("pi,pid->pd", dirs, frame_derivatives(field, x, method))


def covariant_derivative(
    domain: ModelDomain, field: SpinorField, direction: Direction, method: str = "exact"
) -> SpinorField:
    """Spin covariant derivative nabla_X psi as a lazily evaluated field

    Boundary fields are differentiated with the intrinsic connection of the
    boundary sphere; X is then given in tangent frame components.
    """
    if field.is_boundary:
        from .intrinsic import boundary_covariant_derivative

        return boundary_covariant_derivative(field, direction)
    return derived_field(
        field,
        lambda x: covariant_values(field, x, direction, method),
        "covariant-derivative",
    )


def dirac_values(
    field: SpinorField, x: np.ndarray, method: str = "exact", h: Optional[float] = None
) -> np.ndarray:
    """D psi = sum_i gamma(E_i) nabla_{E_i} psi at points"""
    derivs = frame_derivatives(field, x, method, h)
    return np.einsum("iab,pib->pa", _gamma_stack(field.domain), derivs)


def ambient_dirac(
    domain: ModelDomain, field: SpinorField, sign: Optional[int] = None, method: str = "exact"
) -> SpinorField:
    """Dirac operator D, or the shifted operator D - sign (n/2) i on hyperbolic balls

    Raises:
        PreconditionError: If a sign is requested on a Euclidean domain
    """
    _require_interior(field)
    if sign is None:
        return derived_field(field, lambda x: dirac_values(field, x, method), "dirac")
    if sign not in (1, -1):
        raise ValueError(f"Sign must be +1 or -1, got {sign}")
    if not domain.is_hyperbolic:
        raise PreconditionError("Shifted Dirac operators are defined on hyperbolic balls only")
    shift = -sign * 0.5 * domain.n * 1j

    def evaluator(x):
        return dirac_values(field, x, method) + shift * field.evaluate(x)

    return derived_field(field, evaluator, f"shifted-dirac{'+' if sign > 0 else '-'}")


def twistor_values(
    field: SpinorField, x: np.ndarray, method: str = "exact", h: Optional[float] = None
) -> np.ndarray:
    """P_{E_i} psi = nabla_{E_i} psi + (1/n) gamma(E_i) D psi, shape (P, n, spinor_dim)"""
    n = field.domain.n
    derivs = frame_derivatives(field, x, method, h)
    gammas = _gamma_stack(field.domain)
    dirac = np.einsum("iab,pib->pa", gammas, derivs)
    return derivs + np.einsum("iab,pb->pia", gammas, dirac) / n


def twistor_operator(
    domain: ModelDomain, field: SpinorField, direction: Direction, method: str = "exact"
) -> SpinorField:
    """Twistor (Penrose) operator along X"""
    _require_interior(field)

    def evaluator(x):
        x = np.atleast_2d(x)
        dirs = _directions_at(direction, x, domain.n)
        return np.einsum("pi,pid->pd", dirs, twistor_values(field, x, method))

    return derived_field(field, evaluator, "twistor")


def twistor_energy_density(
    field: SpinorField, x: np.ndarray, method: str = "exact", h: Optional[float] = None
) -> np.ndarray:
    """|P psi|^2 = |nabla psi|^2 - (1/n) |D psi|^2 at points"""
    values = twistor_values(field, x, method, h)
    return np.sum(np.abs(values) ** 2, axis=(1, 2))


def killing_residual(
    field: SpinorField, c: complex, x: np.ndarray, method: str = "exact"
) -> float:
    """Max over points and frame vectors of |nabla_{E_i} psi - c gamma(E_i) psi|"""
    derivs = frame_derivatives(field, x, method)
    psi = field.evaluate(x)
    target = c * np.einsum("iab,pb->pia", _gamma_stack(field.domain), psi)
    return float(np.max(np.abs(derivs - target)))


# boundary relations


def tangent_bases(directions: np.ndarray) -> np.ndarray:
    """Orthonormal bases of the planes orthogonal to unit directions, shape (P, n - 1, n)"""
    directions = np.atleast_2d(directions)
    P, n = directions.shape
    stacked = np.concatenate([directions[:, :, None], np.broadcast_to(np.eye(n), (P, n, n))], axis=2)
    Q, _ = np.linalg.qr(stacked)
    return np.transpose(Q[:, :, 1:], (0, 2, 1))


def extrinsic_dirac_pointwise(
    field: SpinorField,
    x: np.ndarray,
    method: str = "exact",
    extrinsic: Optional[ExtrinsicData] = None,
    h: Optional[float] = None,
) -> np.ndarray:
    """Extrinsic Dirac operator of an interior field at boundary points

    sum_j gamma(e_j) gamma(nu) nabla_{e_j} psi - 1/2 sum_j gamma(e_j) gamma(nu) gamma(A e_j) gamma(nu) psi
    """
    _require_interior(field)
    domain = field.domain
    x = np.atleast_2d(np.asarray(x, dtype=float))
    extrinsic = extrinsic or ExtrinsicData(
        domain, domain.inward_normal, domain.mean_curvature, domain.induced_radius
    )
    nu = extrinsic.nu(x)
    tangents = tangent_bases(nu)
    derivs = frame_derivatives(field, x, method, h)
    psi = field.evaluate(x)
    rep = domain.rep
    g_nu = rep.gamma(nu)
    A = extrinsic.A(x)

    out = np.zeros_like(psi)
    for j in range(domain.n - 1):
        e_j = tangents[:, j, :]
        g_e = rep.gamma(e_j)
        g_Ae = rep.gamma(np.einsum("pij,pj->pi", A, e_j))
        along = np.einsum("pi,pid->pd", e_j, derivs)
        ge_gnu = np.einsum("pab,pbc->pac", g_e, g_nu)
        out += np.einsum("pab,pb->pa", ge_gnu, along)
        shape_term = np.einsum("pab,pbc,pcd->pad", ge_gnu, g_Ae, g_nu)
        out -= 0.5 * np.einsum("pab,pb->pa", shape_term, psi)
    return out


def normal_derivative(field: SpinorField, x: np.ndarray, h: Optional[float] = None) -> np.ndarray:
    """nabla_nu psi at boundary points, one-sided second-order differences along the inward normal"""
    domain = field.domain
    x = np.atleast_2d(np.asarray(x, dtype=float))
    h = h if h is not None else default_config().tolerance("fd_step")
    nu = domain.inward_normal(x)
    f0 = field.evaluate(x)
    f1 = field.evaluate(x + h * nu)
    f2 = field.evaluate(x + 2.0 * h * nu)
    d_nu = (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h)
    if not domain.is_hyperbolic:
        return d_nu
    grad_u = domain.conformal_gradient(x)
    g_nu_psi = np.einsum("pab,pb->pa", domain.rep.gamma(nu), f0)
    conn = 0.5 * np.einsum("pab,pb->pa", domain.rep.gamma(grad_u), g_nu_psi)
    conn += 0.5 * np.sum(nu * grad_u, axis=-1)[:, None] * f0
    return np.exp(-domain.conformal_log(x))[:, None] * (d_nu + conn)


def dirac_boundary_relation_residual(
    field: SpinorField,
    x: Optional[np.ndarray] = None,
    method: str = "exact",
    h: Optional[float] = None,
) -> float:
    """Max defect of  Dext psi = (n-1)/2 H psi - gamma(nu) D psi - nabla_nu psi  on boundary points

    Normalized by max(1, max |psi|).
    """
    _require_interior(field)
    domain = field.domain
    if x is None:
        x = domain.boundary_samples(int(default_config().resolution("boundary_samples")))
    x = np.atleast_2d(np.asarray(x, dtype=float))
    psi = field.evaluate(x)
    lhs = extrinsic_dirac_pointwise(field, x, method)
    g_nu = domain.rep.gamma(domain.inward_normal(x))
    rhs = 0.5 * (domain.n - 1) * domain.mean_curvature * psi
    rhs -= np.einsum("pab,pb->pa", g_nu, dirac_values(field, x, method))
    rhs -= normal_derivative(field, x, h)
    scale = max(1.0, float(np.max(np.abs(psi))))
    residual = float(np.max(np.abs(lhs - rhs))) / scale
    logger.debug("Boundary Dirac relation residual %.3e on %d points", residual, x.shape[0])
    return residual


def rough_laplacian(field: SpinorField, x: np.ndarray, h: Optional[float] = None) -> np.ndarray:
    """nabla* nabla psi = -sum_i d_i^2 psi by second differences (Euclidean balls)

    Raises:
        UnsupportedBasisError: On hyperbolic domains
    """
    domain = field.domain
    if domain.is_hyperbolic:
        raise UnsupportedBasisError("Rough Laplacian by second differences needs a euclidean-ball domain")
    h = h if h is not None else default_config().tolerance("fd_step_second")
    x = np.atleast_2d(np.asarray(x, dtype=float))
    center = field.evaluate(x)
    out = np.zeros_like(center)
    for i in range(domain.n):
        shift = np.zeros(domain.n)
        shift[i] = h
        out -= (field.evaluate(x + shift) - 2.0 * center + field.evaluate(x - shift)) / h**2
    return out


def lichnerowicz_residual(
    field: SpinorField, x: Optional[np.ndarray] = None, h: Optional[float] = None, seed: int = 0
) -> float:
    """Max defect of D^2 psi = nabla* nabla psi + R/4 psi, normalized by max(1, max |psi|)"""
    _require_interior(field)
    domain = field.domain
    if x is None:
        x = domain.interior_samples(64, seed=seed, fraction=0.8)
    dirac = ambient_dirac(domain, field)
    square = dirac_values(dirac, x, method="fd")
    psi = field.evaluate(x)
    target = rough_laplacian(field, x, h) + 0.25 * domain.scalar_curvature * psi
    scale = max(1.0, float(np.max(np.abs(psi))))
    return float(np.max(np.abs(square - target))) / scale
