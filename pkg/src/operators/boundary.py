"""Assembly of boundary operators on the circle and 2-sphere bases

All operators are block-diagonal over half-integer labels. Blocks are built on the
unit sphere and scaled by the intrinsic boundary radius.
"""

import logging
from typing import Optional

import numpy as np

from ..core.base_basis import BaseBoundaryBasis
from ..core.config import default_config
from ..core.errors import UnsupportedBasisError
from ..models.bases import CollocationS2Basis, FourierS1Basis, boundary_basis
from ..models.domain import ModelDomain
from .matrix import OperatorKind, OperatorMatrix

logger = logging.getLogger(__name__)


def _check_sign(sign: int) -> int:
    if sign not in (1, -1):
        raise ValueError(f"Sign must be +1 or -1, got {sign}")
    return int(sign)


def resolve_basis(
    domain: ModelDomain,
    truncation: Optional[int] = None,
    basis: Optional[BaseBoundaryBasis] = None,
) -> BaseBoundaryBasis:
    """Boundary basis for an assembly call

    Args:
        domain: Model domain
        truncation: Fourier modes (n = 2) or theta nodes (n = 3); defaults to the domain resolution
        basis: Explicit basis, takes precedence over truncation
    """
    if basis is not None:
        return basis
    if truncation is None:
        return boundary_basis(domain)
    if domain.n == 2:
        return FourierS1Basis(int(truncation), domain.induced_radius)
    if domain.n == 3:
        return CollocationS2Basis(int(truncation), domain.induced_radius)
    raise UnsupportedBasisError(
        f"Boundary discretization is only available for n in (2, 3), got n={domain.n}"
    )


def assemble_extrinsic_dirac(
    domain: ModelDomain,
    truncation: Optional[int] = None,
    basis: Optional[BaseBoundaryBasis] = None,
) -> OperatorMatrix:
    """Extrinsic Dirac operator of the boundary sphere

    Blocks are Hermitian by construction; the relative Galerkin defect before
    symmetrization is recorded in params["hermitian_defect"].
    """
    basis = resolve_basis(domain, truncation, basis)
    scale = 1.0 / basis.radius
    blocks = []
    defect = 0.0
    for q in basis.labels:
        raw = basis.dirac_block(q) * scale
        size = max(1.0, float(np.max(np.abs(raw), initial=0.0)))
        defect = max(defect, float(np.max(np.abs(raw - raw.conj().T), initial=0.0)) / size)
        blocks.append(0.5 * (raw + raw.conj().T))

    if defect > default_config().tolerance("hermitian"):
        logger.warning("Extrinsic Dirac Galerkin blocks deviate from Hermitian by %.2e", defect)
    logger.debug("Assembled extrinsic Dirac on %r, hermitian defect %.2e", basis, defect)
    return OperatorMatrix(
        blocks,
        basis,
        OperatorKind.EXTRINSIC_DIRAC,
        {"n": domain.n, "radius": basis.radius, "hermitian_defect": defect},
    )


def normal_clifford(
    domain: ModelDomain,
    truncation: Optional[int] = None,
    basis: Optional[BaseBoundaryBasis] = None,
) -> OperatorMatrix:
    """Clifford multiplication by the inward unit normal"""
    basis = resolve_basis(domain, truncation, basis)
    blocks = [basis.normal_block(q) for q in basis.labels]
    return OperatorMatrix(blocks, basis, OperatorKind.NORMAL_CLIFFORD, {"n": domain.n})


def chirality_operator(
    domain: ModelDomain,
    truncation: Optional[int] = None,
    basis: Optional[BaseBoundaryBasis] = None,
) -> OperatorMatrix:
    """Volume element G on boundary spinors

    Raises:
        UnsupportedBasisError: For odd n
    """
    if not domain.rep.has_chirality:
        raise UnsupportedBasisError(f"Chirality operator requires even n, got n={domain.n}")
    basis = resolve_basis(domain, truncation, basis)
    blocks = [basis.chirality_block(q) for q in basis.labels]
    return OperatorMatrix(blocks, basis, OperatorKind.CHIRALITY, {"n": domain.n})


def mit_projection(
    domain: ModelDomain,
    sign: int,
    truncation: Optional[int] = None,
    basis: Optional[BaseBoundaryBasis] = None,
) -> OperatorMatrix:
    """MIT bag projection P = 1/2 (Id + sign * i gamma(nu))"""
    sign = _check_sign(sign)
    basis = resolve_basis(domain, truncation, basis)
    eye = np.eye(basis.block_size)
    blocks = [0.5 * (eye + sign * 1j * basis.normal_block(q)) for q in basis.labels]
    return OperatorMatrix(blocks, basis, OperatorKind.MIT_PROJECTION, {"n": domain.n, "sign": sign})


def chirality_projection(
    domain: ModelDomain,
    sign: int,
    truncation: Optional[int] = None,
    basis: Optional[BaseBoundaryBasis] = None,
) -> OperatorMatrix:
    """Chiral bag projection B = 1/2 (Id + sign * gamma(nu) G), even n only

    Raises:
        UnsupportedBasisError: For odd n
    """
    sign = _check_sign(sign)
    if not domain.rep.has_chirality:
        raise UnsupportedBasisError(f"Chirality projection requires even n, got n={domain.n}")
    basis = resolve_basis(domain, truncation, basis)
    eye = np.eye(basis.block_size)
    blocks = [
        0.5 * (eye + sign * basis.normal_block(q) @ basis.chirality_block(q)) for q in basis.labels
    ]
    return OperatorMatrix(
        blocks, basis, OperatorKind.CHIRALITY_PROJECTION, {"n": domain.n, "sign": sign}
    )


def assemble_twisted_dirac(
    domain: ModelDomain,
    sign: int,
    truncation: Optional[int] = None,
    basis: Optional[BaseBoundaryBasis] = None,
) -> OperatorMatrix:
    """Twisted extrinsic Dirac operator  D +/- (n - 1)/2 * i gamma(nu)

    Hermitian, since i gamma(nu) is Hermitian and anticommutes with D.
    """
    sign = _check_sign(sign)
    dirac = assemble_extrinsic_dirac(domain, truncation, basis)
    shift = 0.5 * sign * (domain.n - 1) * 1j
    blocks = [
        b + shift * dirac.basis.normal_block(q) for b, q in zip(dirac.blocks, dirac.basis.labels)
    ]
    params = dict(dirac.params)
    params["sign"] = sign
    return OperatorMatrix(blocks, dirac.basis, OperatorKind.TWISTED_EXTRINSIC, params)
