"""Energy-momentum tensor of boundary spinors and integrated projection symmetries"""

import logging
from typing import Optional, Union

import numpy as np

from ..core.config import default_config
from ..core.errors import UnsupportedBasisError, ZeroLocusError
from ..models.fields import SpinorField
from ..operators.boundary import chirality_projection, mit_projection
from ..operators.intrinsic import boundary_covariant_values

logger = logging.getLogger(__name__)


def energy_momentum(field: SpinorField, zero_tol: Optional[float] = None) -> np.ndarray:
    """T(e_a, e_b) = 1/2 Re <gamma^S(e_a) nabla^S_b Phi + gamma^S(e_b) nabla^S_a Phi, Phi> / |Phi|^2

    Returns:
        Real symmetric samples, shape (P, n - 1, n - 1), at the basis nodes

    Raises:
        ZeroLocusError: If |Phi| < zero_tol at some node (tolerances.zero_locus by default)
    """
    if not field.is_boundary:
        raise UnsupportedBasisError("Energy-momentum tensor is defined for boundary fields")
    zero_tol = zero_tol if zero_tol is not None else default_config().tolerance("zero_locus")
    values = field.intrinsic_values()
    norms = np.sum(np.abs(values) ** 2, axis=-1)
    small = np.flatnonzero(np.sqrt(norms) < zero_tol)
    if small.size:
        raise ZeroLocusError(
            f"Spinor field vanishes (|Phi| < {zero_tol:g}) at {small.size} nodes", small.tolist()
        )

    cliffords = field.boundary.tangent_cliffords
    covariant = boundary_covariant_values(field)
    m = len(cliffords)
    # pairing[a, b] = Re <gamma_a nabla_b Phi, Phi>
    pairing = np.empty((values.shape[0], m, m))
    for a, g in enumerate(cliffords):
        for b, c in enumerate(covariant):
            pairing[:, a, b] = np.real(np.sum((c @ g.T) * np.conj(values), axis=-1))
    tensor = 0.5 * (pairing + np.transpose(pairing, (0, 2, 1)))
    return tensor / norms[:, None, None]


def energy_momentum_residual(field: SpinorField, weingarten: Union[float, np.ndarray, None] = None) -> float:
    """Max |2 T - A| over nodes, with A = H Id on the model boundary unless given"""
    tensor = energy_momentum(field)
    m = tensor.shape[-1]
    if weingarten is None:
        weingarten = field.domain.mean_curvature
    A = np.asarray(weingarten, dtype=float)
    if A.ndim == 0:
        A = float(A) * np.eye(m)
    return float(np.max(np.abs(2.0 * tensor - A)))


def projection_symmetry_residual(
    field: SpinorField,
    condition: str = "chirality",
    H0: Union[float, np.ndarray, None] = None,
) -> float:
    """Relative defect of  int H0 |Pi^+ Phi|^2 = int H0 |Pi^- Phi|^2

    Pi is the chirality projection B (condition="chirality") or the MIT projection P
    (condition="mit"). The identity holds for eigenspinors of the operator the
    projections anticommute with.
    """
    if not field.is_boundary:
        raise UnsupportedBasisError("Projection symmetry is checked on boundary fields")
    domain, basis = field.domain, field.boundary
    if condition == "chirality":
        plus, minus = (chirality_projection(domain, s, basis=basis) for s in (1, -1))
    elif condition == "mit":
        plus, minus = (mit_projection(domain, s, basis=basis) for s in (1, -1))
    else:
        raise ValueError(f"Condition must be 'chirality' or 'mit', got {condition!r}")

    weights = basis.node_weights()
    H0 = domain.mean_curvature if H0 is None else H0
    H0 = np.broadcast_to(np.asarray(H0, dtype=float), weights.shape)

    def weighted(op):
        values = basis.synthesize(op.apply(field.coefficients))
        return float(np.sum(weights * H0 * np.sum(np.abs(values) ** 2, axis=-1)))

    a, b = weighted(plus), weighted(minus)
    return abs(a - b) / max(1.0, a + b)
