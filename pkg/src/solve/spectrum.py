"""Dense per-block eigensolves of Hermitian boundary operators"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy import linalg

from ..core.base_basis import BaseBoundaryBasis
from ..core.config import default_config
from ..core.errors import ConventionViolationError
from ..models.domain import ModelDomain
from ..models.fields import SpinorField, boundary_field
from ..operators.matrix import OperatorMatrix

logger = logging.getLogger(__name__)


@dataclass
class SpectrumResult:
    """Eigenpairs of a boundary operator

    Attributes:
        eigenvalues: Ascending eigenvalues
        labels: Label of the block each eigenpair comes from
        cutoff: Eigenvalues with |lambda| <= cutoff are resolved by the truncation
        residual: max ||A v - lambda v|| over returned pairs
        descriptor: Operator kind, basis and parameters
    """

    eigenvalues: np.ndarray
    labels: np.ndarray
    cutoff: float
    residual: float
    descriptor: Dict[str, Any] = field(default_factory=dict)
    eigenfields: List[SpinorField] = field(default_factory=list)
    block_vectors: List[np.ndarray] = field(default_factory=list, repr=False)
    positions: List[Tuple[int, int]] = field(default_factory=list, repr=False)
    basis: Optional[BaseBoundaryBasis] = field(default=None, repr=False)

    def vector(self, index: int) -> np.ndarray:
        """Full coefficient vector of the index-th returned eigenpair"""
        block, column = self.positions[index]
        full = np.zeros(self.basis.size, dtype=np.complex128)
        full[self.basis.label_slice(block)] = self.block_vectors[block][:, column]
        return full

    @property
    def vectors(self) -> np.ndarray:
        """All returned eigenvectors as columns, shape (N, k)"""
        return np.stack([self.vector(j) for j in range(self.eigenvalues.size)], axis=1)

    @property
    def smallest_positive(self) -> float:
        positive = self.eigenvalues[self.eigenvalues > 0]
        return float(positive.min()) if positive.size else float("nan")

    def trusted(self) -> np.ndarray:
        """Eigenvalues resolved by the truncation"""
        return self.eigenvalues[np.abs(self.eigenvalues) <= self.cutoff]

    def symmetry_defect(self) -> float:
        """max |lambda_k + lambda_{N+1-k}| over the sorted spectrum"""
        values = np.sort(self.eigenvalues)
        return float(np.max(np.abs(values + values[::-1]), initial=0.0))

    def multiplicity(self, value: float, tol: float = 1e-8) -> int:
        return int(np.sum(np.abs(self.eigenvalues - value) < tol))


def spectrum(
    op: OperatorMatrix,
    k: Optional[int] = None,
    domain: Optional[ModelDomain] = None,
) -> SpectrumResult:
    """Eigen-decomposition of a Hermitian block-diagonal operator

    Args:
        op: Operator (extrinsic or twisted Dirac)
        k: Number of eigenpairs nearest zero to return (all by default)
        domain: If given, eigenvectors are also returned as boundary SpinorFields

    Raises:
        ConventionViolationError: If the operator is not Hermitian within tolerances.hermitian
    """
    tolerance = default_config().tolerance("hermitian")
    defect = op.hermitian_defect()
    if defect > tolerance * max(1.0, op.norm()):
        raise ConventionViolationError(
            f"Spectrum requires a Hermitian operator, defect {defect:.3e} exceeds {tolerance:.1e}"
        )

    basis = op.basis
    values, labels, positions, block_vectors = [], [], [], []
    residual = 0.0
    for i, block in enumerate(op.blocks):
        w, v = linalg.eigh(block)
        residual = max(residual, float(np.max(np.abs(block @ v - v * w), initial=0.0)))
        block_vectors.append(v)
        positions.extend((i, j) for j in range(w.size))
        values.extend(w.tolist())
        labels.extend([basis.labels[i]] * w.size)

    values = np.asarray(values)
    order = np.argsort(np.abs(values), kind="stable")
    if k is not None:
        if k < 1:
            raise ValueError(f"Eigenpair count must be >= 1, got {k}")
        order = order[:k]
    order = order[np.argsort(values[order], kind="stable")]

    result = SpectrumResult(
        eigenvalues=values[order],
        labels=np.asarray(labels)[order],
        cutoff=0.5 * float(np.max(np.abs(values))),
        residual=residual,
        descriptor={"kind": op.kind.value, "basis": basis.descriptor(), "params": dict(op.params)},
        block_vectors=block_vectors,
        positions=[positions[i] for i in order],
        basis=basis,
    )
    if domain is not None:
        result.eigenfields = [
            boundary_field(domain, result.vector(j), basis, eigenvalue=float(result.eigenvalues[j]))
            for j in range(result.eigenvalues.size)
        ]
    logger.debug("Spectrum of %r: %d eigenvalues, residual %.2e", op, values.size, residual)
    return result
