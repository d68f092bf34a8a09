"""Integrated spinorial identities: Reilly formulas and the Green formula"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional, Sequence

import numpy as np

from ..core.config import default_config
from ..core.errors import PreconditionError, UnsupportedBasisError
from ..models.domain import ModelDomain
from ..models.fields import SpinorField
from ..operators.pointwise import extrinsic_dirac_pointwise, frame_derivatives, twistor_values
from .quadrature import QuadratureRule, boundary_rule, integrate, interior_rule

logger = logging.getLogger(__name__)


@dataclass
class ReillyReport:
    """Both sides of an integrated Reilly identity

    Attributes:
        lhs_interior: Volume integral
        rhs_boundary: Boundary integral (real part of the Dirac pairing)
        residual: |lhs - rhs|
        terms: Per-term integrals
        imaginary_part: |Im| of the boundary Dirac pairing (diagnostic)
    """

    lhs_interior: float
    rhs_boundary: float
    residual: float
    terms: Dict[str, float] = field(default_factory=dict)
    imaginary_part: float = 0.0
    resolution: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def hermitian_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pointwise <a, b> = sum a conj(b) over the last axis"""
    return np.sum(a * np.conj(b), axis=-1)


def _squared(values: np.ndarray) -> np.ndarray:
    """Pointwise squared norm summed over every axis but the first"""
    return np.sum(np.abs(values.reshape(values.shape[0], -1)) ** 2, axis=-1)


def _check(domain: ModelDomain, field: SpinorField):
    if field.is_boundary:
        raise UnsupportedBasisError("Reilly and Green identities take interior fields")
    if field.domain is not domain:
        raise PreconditionError("Field does not live on the given domain")


def _rules(domain: ModelDomain, interior: Optional[QuadratureRule], boundary: Optional[QuadratureRule]):
    return interior or interior_rule(domain), boundary or boundary_rule(domain)


def reilly_residual(
    domain: ModelDomain,
    field: SpinorField,
    interior: Optional[QuadratureRule] = None,
    boundary: Optional[QuadratureRule] = None,
    method: str = "exact",
    h: Optional[float] = None,
) -> ReillyReport:
    """Spinorial Reilly formula on a Euclidean ball

        int (|nabla psi|^2 - |D psi|^2 + R/4 |psi|^2) = int_bdry (Re<Dext psi, psi> - (n-1)/2 H |psi|^2)

    Raises:
        PreconditionError: On hyperbolic domains
    """
    _check(domain, field)
    if domain.is_hyperbolic:
        raise PreconditionError("Use hyperbolic_reilly_residual on hyperbolic-ball domains")
    interior, boundary = _rules(domain, interior, boundary)
    gammas = np.stack(domain.rep.gammas)

    x = interior.nodes
    psi = field.evaluate(x)
    derivs = frame_derivatives(field, x, method, h)
    dirac = np.einsum("iab,pib->pa", gammas, derivs)
    gradient_term = integrate(interior, _squared(derivs))
    dirac_term = integrate(interior, _squared(dirac))
    curvature_term = 0.25 * domain.scalar_curvature * integrate(interior, _squared(psi))
    lhs = gradient_term - dirac_term + curvature_term

    y = boundary.nodes
    phi = field.evaluate(y)
    pairing = complex(integrate(boundary, hermitian_product(extrinsic_dirac_pointwise(field, y, method, h=h), phi)))
    mean_term = 0.5 * (domain.n - 1) * domain.mean_curvature * integrate(boundary, _squared(phi))
    rhs = pairing.real - mean_term

    report = ReillyReport(
        lhs_interior=float(lhs),
        rhs_boundary=float(rhs),
        residual=float(abs(lhs - rhs)),
        terms={
            "gradient": float(gradient_term),
            "dirac": float(dirac_term),
            "curvature": float(curvature_term),
            "boundary_dirac": pairing.real,
            "mean_curvature": float(mean_term),
        },
        imaginary_part=abs(pairing.imag),
        resolution={**interior.order, "boundary": boundary.order, "method": method, "h": h},
    )
    logger.debug("Reilly residual %.3e (lhs %.6e, rhs %.6e)", report.residual, lhs, rhs)
    return report


def hyperbolic_reilly_residual(
    domain: ModelDomain,
    field: SpinorField,
    sign: int,
    interior: Optional[QuadratureRule] = None,
    boundary: Optional[QuadratureRule] = None,
    method: str = "exact",
    h: Optional[float] = None,
) -> ReillyReport:
    """Reilly formula for the shifted operators on a hyperbolic ball

        int (|P psi|^2 + R~/4 |psi|^2 - (n-1)/n |D~ psi|^2) = int_bdry (Re<Dext~ psi, psi> - (n-1)/2 H |psi|^2)

    with D~ = D - sign (n/2) i, Dext~ = Dext + sign (n-1)/2 i gamma(nu) and R~ = R + n(n-1).
    """
    _check(domain, field)
    if not domain.is_hyperbolic:
        raise PreconditionError("hyperbolic_reilly_residual needs a hyperbolic-ball domain")
    if sign not in (1, -1):
        raise ValueError(f"Sign must be +1 or -1, got {sign}")
    interior, boundary = _rules(domain, interior, boundary)
    n = domain.n
    gammas = np.stack(domain.rep.gammas)

    x = interior.nodes
    psi = field.evaluate(x)
    twistor = twistor_values(field, x, method, h)
    derivs = frame_derivatives(field, x, method, h)
    shifted = np.einsum("iab,pib->pa", gammas, derivs) - sign * 0.5 * n * 1j * psi
    twistor_term = integrate(interior, _squared(twistor))
    curvature_term = 0.25 * domain.shifted_scalar_curvature * integrate(interior, _squared(psi))
    dirac_term = (n - 1) / n * integrate(interior, _squared(shifted))
    lhs = twistor_term + curvature_term - dirac_term

    y = boundary.nodes
    phi = field.evaluate(y)
    g_nu = domain.rep.gamma(domain.inward_normal(y))
    twisted = extrinsic_dirac_pointwise(field, y, method, h=h)
    twisted = twisted + sign * 0.5 * (n - 1) * 1j * np.einsum("pab,pb->pa", g_nu, phi)
    pairing = complex(integrate(boundary, hermitian_product(twisted, phi)))
    mean_term = 0.5 * (n - 1) * domain.mean_curvature * integrate(boundary, _squared(phi))
    rhs = pairing.real - mean_term

    return ReillyReport(
        lhs_interior=float(lhs),
        rhs_boundary=float(rhs),
        residual=float(abs(lhs - rhs)),
        terms={
            "twistor": float(twistor_term),
            "curvature": float(curvature_term),
            "shifted_dirac": float(dirac_term),
            "boundary_dirac": pairing.real,
            "mean_curvature": float(mean_term),
        },
        imaginary_part=abs(pairing.imag),
        resolution={**interior.order, "boundary": boundary.order, "method": method, "h": h, "sign": sign},
    )


def reilly_convergence(
    domain: ModelDomain,
    field: SpinorField,
    steps: Sequence[float] = (1e-2, 5e-3),
    sign: Optional[int] = None,
) -> Dict[str, Any]:
    """Reilly residuals with finite-difference derivatives at successively halved steps

    Returns:
        Dict with residuals per step, their successive ratios, the smallest ratio and
        pass = (min ratio >= thresholds.convergence_ratio * (1 - tolerances.convergence_slack))
    """
    if len(steps) < 2:
        raise ValueError(f"Convergence study needs at least two steps, got {len(steps)}")
    interior, boundary = _rules(domain, None, None)
    residuals = []
    for h in steps:
        if domain.is_hyperbolic:
            report = hyperbolic_reilly_residual(domain, field, sign or 1, interior, boundary, "fd", h)
        else:
            report = reilly_residual(domain, field, interior, boundary, "fd", h)
        residuals.append(report.residual)
    ratios = [a / b if b > 0 else float("inf") for a, b in zip(residuals, residuals[1:])]
    config = default_config()
    threshold = config.threshold("convergence_ratio")
    slack = config.tolerance("convergence_slack")
    return {
        "steps": list(steps),
        "residuals": residuals,
        "ratios": ratios,
        "min_ratio": min(ratios),
        "threshold": threshold,
        "slack": slack,
        "pass": min(ratios) >= threshold * (1.0 - slack),
    }


def green_residual(
    domain: ModelDomain,
    field: SpinorField,
    interior: Optional[QuadratureRule] = None,
    boundary: Optional[QuadratureRule] = None,
    method: str = "exact",
) -> complex:
    """Complex defect of  int <D psi, psi> - int <psi, D psi> = -int_bdry <gamma(nu) psi, psi>"""
    _check(domain, field)
    interior, boundary = _rules(domain, interior, boundary)
    gammas = np.stack(domain.rep.gammas)
    x = interior.nodes
    psi = field.evaluate(x)
    dirac = np.einsum("iab,pib->pa", gammas, frame_derivatives(field, x, method))
    lhs = integrate(interior, hermitian_product(dirac, psi) - hermitian_product(psi, dirac))

    y = boundary.nodes
    phi = field.evaluate(y)
    g_nu_phi = np.einsum("pab,pb->pa", domain.rep.gamma(domain.inward_normal(y)), phi)
    rhs = -integrate(boundary, hermitian_product(g_nu_phi, phi))
    return complex(lhs - rhs)
