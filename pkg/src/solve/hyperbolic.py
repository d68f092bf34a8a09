"""Hyperbolic eigenvalue bound and the Psi+/- eigenspinor construction"""

import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np

from ..core.config import default_config
from ..core.errors import PreconditionError
from ..models.bases import boundary_basis
from ..models.domain import ModelDomain, make_domain
from ..models.fields import SpinorField, constant_spinor, restrict_to_boundary
from ..operators.boundary import assemble_twisted_dirac, normal_clifford
from .identities import projected_eigen_residual
from .spectrum import spectrum

logger = logging.getLogger(__name__)


@dataclass
class HMRReport:
    """First positive eigenvalue of the twisted operator against (n-1)/2 inf H"""

    n: int
    radius: float
    sign: int
    lambda1: float
    bound: float
    gap: float
    equality: bool
    tolerance: float
    lower: float

    @property
    def passed(self) -> bool:
        return self.gap >= -self.lower

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out["pass"] = self.passed
        return out


def hmr_bound_check(domain: ModelDomain, sign: int = 1, truncation: Optional[int] = None) -> HMRReport:
    """Compare lambda_1 of Dext~^sign with (n-1)/2 inf H on a hyperbolic ball

    The boundary of a geodesic ball is umbilic, so inf H = coth(rho) and the bound is
    attained; equality is flagged when |gap| is within thresholds.hmr_upper, and the
    bound holds when gap >= -thresholds.hmr_lower.

    Raises:
        PreconditionError: If the domain is not hyperbolic
    """
    if not domain.is_hyperbolic:
        raise PreconditionError("HMR bound check needs a hyperbolic-ball domain")
    config = default_config()
    tolerance = config.threshold("hmr_upper")
    op = assemble_twisted_dirac(domain, sign, truncation)
    result = spectrum(op)
    lambda1 = result.smallest_positive
    bound = 0.5 * (domain.n - 1) * domain.mean_curvature
    gap = lambda1 - bound
    report = HMRReport(
        n=domain.n,
        radius=domain.radius,
        sign=sign,
        lambda1=lambda1,
        bound=bound,
        gap=gap,
        equality=abs(gap) < tolerance,
        tolerance=tolerance,
        lower=config.threshold("hmr_lower"),
    )
    logger.info("HMR check n=%d rho=%.3f: lambda1=%.10f bound=%.10f gap=%.2e", domain.n, domain.radius, lambda1, bound, gap)
    return report


def hmr_sweep(
    n: int,
    radii: Iterable[float] = (0.5, 1.0, 2.0),
    sign: int = 1,
    resolution: Optional[Dict[str, Any]] = None,
) -> List[HMRReport]:
    """hmr_bound_check over geodesic radii"""
    return [hmr_bound_check(make_domain("hyperbolic-ball", n, rho, resolution), sign) for rho in radii]


def psi_pm_construct(
    domain: ModelDomain,
    alpha: float,
    sign: int = 1,
    psi0: Optional[np.ndarray] = None,
) -> Tuple[SpinorField, float]:
    """Build Psi^sign = Psi + sign * beta * i gamma(nu) Psi, beta = alpha - sqrt(alpha^2 - 1)

    Psi is the restriction of a constant spinor to the boundary of the hyperbolic ball
    with coth(rho) = alpha, a round sphere of radius 1/sqrt(alpha^2 - 1) on which Psi is
    a Killing spinor. Then Dext~^sign Psi^sign = (n-1)/2 alpha Psi^sign.

    Returns:
        (boundary field Psi^sign, relative eigen-residual)

    Raises:
        PreconditionError: If alpha <= 1, or the domain is not the hyperbolic ball of
            boundary radius 1/sqrt(alpha^2 - 1)
    """
    if sign not in (1, -1):
        raise ValueError(f"Sign must be +1 or -1, got {sign}")
    if not alpha > 1.0:
        raise PreconditionError(f"Alpha must be > 1, got {alpha}")
    if not domain.is_hyperbolic:
        raise PreconditionError("Psi+/- construction needs a hyperbolic-ball domain")
    expected = 1.0 / np.sqrt(alpha * alpha - 1.0)
    if abs(domain.induced_radius - expected) > 1e-10 * max(1.0, expected):
        raise PreconditionError(
            f"Boundary radius must be 1/sqrt(alpha^2 - 1) = {expected:.12g}, got {domain.induced_radius:.12g}"
        )
    n = domain.n
    if psi0 is None:
        psi0 = np.zeros(domain.rep.spinor_dim, dtype=np.complex128)
        psi0[0] = 1.0
    basis = boundary_basis(domain)
    psi = restrict_to_boundary(constant_spinor(domain, psi0), basis)

    beta = alpha - np.sqrt(alpha * alpha - 1.0)
    J = normal_clifford(domain, basis=basis) * 1j
    coeffs = psi.coefficients + sign * beta * J.apply(psi.coefficients)
    field = psi.with_coefficients(coeffs, form="psi-pm", sign=sign, alpha=float(alpha))

    value = 0.5 * (n - 1) * alpha
    residual = projected_eigen_residual(field, assemble_twisted_dirac(domain, sign, basis=basis), value)
    logger.info("Psi%s at alpha=%.4f (n=%d): eigen-residual %.2e", "+" if sign > 0 else "-", alpha, n, residual)
    return field, residual
