"""Identities tying the boundary projections to the extrinsic Dirac operator"""

import logging
from typing import Optional, Union

import numpy as np

from ..core.errors import UnsupportedBasisError
from ..models.domain import ModelDomain
from ..models.fields import SpinorField, boundary_field
from ..operators.boundary import assemble_extrinsic_dirac, mit_projection
from ..operators.intrinsic import boundary_dirac_values
from ..operators.matrix import OperatorMatrix
from .extension import BoundaryCondition, extend_harmonic

logger = logging.getLogger(__name__)


def commutation_defect(op: OperatorMatrix, left: OperatorMatrix, right: OperatorMatrix) -> float:
    """Spectral norm of  op @ left - right @ op, e.g. Dext P+ - P- Dext"""
    return ((op @ left) - (right @ op)).norm()


def integration_by_parts_residual(field: SpinorField, sign: int = 1) -> float:
    """Relative defect of  int <Dext phi, phi> = 2 int Re <Dext P^s phi, P^-s phi>"""
    if not field.is_boundary:
        raise UnsupportedBasisError("Integration by parts is checked on boundary fields")
    domain, basis = field.domain, field.boundary
    dirac = assemble_extrinsic_dirac(domain, basis=basis)
    plus = mit_projection(domain, sign, basis=basis)
    minus = mit_projection(domain, -sign, basis=basis)
    phi = field.coefficients
    lhs = basis.inner(dirac.apply(phi), phi)
    rhs = 2.0 * basis.inner(dirac.apply(plus.apply(phi)), minus.apply(phi)).real
    return abs(lhs - rhs) / max(1.0, abs(lhs))


def intertwining_residual(
    field: SpinorField, H0: Union[float, np.ndarray, None] = None, sign: int = 1
) -> float:
    """Relative defect of  Dext (P^s Phi) = (n-1)/2 H0 P^-s Phi

    Meaningful for fields solving Dext Phi = (n-1)/2 H0 Phi; the defect then stays
    within the residual of that equation.
    """
    if not field.is_boundary:
        raise UnsupportedBasisError("Intertwining is checked on boundary fields")
    domain, basis = field.domain, field.boundary
    H0 = domain.mean_curvature if H0 is None else H0
    dirac = assemble_extrinsic_dirac(domain, basis=basis)
    phi = field.coefficients
    lhs = dirac.apply(mit_projection(domain, sign, basis=basis).apply(phi))
    projected = mit_projection(domain, -sign, basis=basis).apply(phi)
    rhs = 0.5 * (domain.n - 1) * scalar_multiply(field, H0, projected)
    return basis.norm(lhs - rhs) / max(basis.norm(phi), 1e-300)


def scalar_multiply(field: SpinorField, H: Union[float, np.ndarray], coeffs: np.ndarray) -> np.ndarray:
    """Coefficients of H * Phi for a constant or node-sampled scalar H"""
    H = np.asarray(H, dtype=float)
    if H.ndim == 0:
        return float(H) * coeffs
    basis = field.boundary
    return basis.analyze(H[:, None] * basis.synthesize(coeffs))


def extension_linearity_residual(
    first: SpinorField,
    second: SpinorField,
    a: complex = 1.0,
    b: complex = 1.0,
    condition: Union[str, BoundaryCondition] = BoundaryCondition.MIT_PLUS,
    samples: int = 200,
    seed: int = 0,
) -> float:
    """max |ext(a Phi1 + b Phi2) - a ext(Phi1) - b ext(Phi2)| at interior samples, relative"""
    domain = first.domain
    x = domain.interior_samples(samples, seed=seed)
    combined = extend_harmonic(domain, first * a + second * b, condition).evaluate(x)
    separate = a * extend_harmonic(domain, first, condition).evaluate(x)
    separate = separate + b * extend_harmonic(domain, second, condition).evaluate(x)
    scale = max(1.0, float(np.max(np.abs(combined))))
    return float(np.max(np.abs(combined - separate))) / scale


def splitting_residual(domain: ModelDomain, op: OperatorMatrix) -> float:
    """Defect of the circle splitting Dext = D_S1 (+) (-D_S1) in the intrinsic frame

    Every basis vector is pushed through the intrinsic Dirac operator of the circle,
    computed from the angular derivatives and the tangent Clifford action, and
    compared with the Galerkin operator. Returns the largest coefficient defect.

    Raises:
        UnsupportedBasisError: For bases other than the circle
    """
    basis = op.basis
    if basis.n != 2:
        raise UnsupportedBasisError("The intrinsic splitting is checked on the circle only")
    residual = 0.0
    for column in np.eye(basis.size, dtype=np.complex128):
        field = boundary_field(domain, column, basis=basis)
        intrinsic = basis.analyze(boundary_dirac_values(field))
        residual = max(residual, float(np.max(np.abs(op.apply(column) - intrinsic))))
    return residual


def projected_eigen_residual(
    field: SpinorField, op: Optional[OperatorMatrix], value: float
) -> float:
    """||op Phi - value Phi|| / ||Phi||"""
    basis = field.boundary
    op = op or assemble_extrinsic_dirac(field.domain, basis=basis)
    phi = field.coefficients
    return basis.norm(op.apply(phi) - value * phi) / max(basis.norm(phi), 1e-300)
