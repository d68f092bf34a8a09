"""Complex Clifford algebra representations via an iterated tensor (Jordan-Wigner) construction"""

import logging
from functools import lru_cache, reduce
from typing import Dict, Any, List, Optional

import numpy as np

from ..core.errors import DimensionMismatchError, InvalidDimensionError, PreconditionError

logger = logging.getLogger(__name__)

MAX_DIMENSION = 16

_I2 = np.eye(2, dtype=np.complex128)
_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

CONVENTION: Dict[str, str] = {
    "clifford_relation": "gamma_i gamma_j + gamma_j gamma_i = -2 delta_ij Id",
    "adjoint": "gamma_i skew-Hermitian for <a, b> = sum a_k conj(b_k)",
    "construction": "gamma_{2a} = i Z^(a) X I..., gamma_{2a+1} = i Z^(a) Y I..., odd n: gamma_n = i Z^(m)",
    "chirality": "G0 = i^(n/2) gamma_1 ... gamma_n (even n)",
    "twisted_ambient": "D~(+/-) = D -/+ (n/2) i",
    "twisted_extrinsic": "bold D~(+/-) = bold D +/- (n-1)/2 i gamma(nu)",
}


def _kron_all(factors: List[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, factors, np.ones((1, 1), dtype=np.complex128))


class CliffordRep:
    """Immutable complex spin representation of Cl(n)

    Attributes:
        n: Ambient dimension
        spinor_dim: 2^floor(n/2)
        gammas: Tuple of n skew-Hermitian matrices squaring to -Id
        volume_element: Chirality operator G0 for even n, None for odd n
        convention: Record of sign conventions
    """

    def __init__(self, n: int, gammas: List[np.ndarray], volume_element: Optional[np.ndarray]):
        self.n = n
        self.spinor_dim = gammas[0].shape[0]
        for g in gammas:
            g.setflags(write=False)
        self.gammas = tuple(gammas)
        self._stack = np.stack(gammas)
        self._stack.setflags(write=False)
        if volume_element is not None:
            volume_element.setflags(write=False)
        self.volume_element = volume_element
        self.convention = dict(CONVENTION)

    def gamma(self, v: np.ndarray) -> np.ndarray:
        """Matrix of Clifford multiplication by v

        Args:
            v: Real n-vector, or array of shape (..., n)

        Returns:
            Matrix (spinor_dim, spinor_dim), or stacked (..., spinor_dim, spinor_dim)
        """
        v = np.asarray(v, dtype=float)
        if v.shape[-1] != self.n:
            raise DimensionMismatchError(
                f"Vector must have {self.n} components, got {v.shape[-1]}"
            )
        return np.tensordot(v, self._stack, axes=([-1], [0]))

    @property
    def has_chirality(self) -> bool:
        return self.volume_element is not None

    def __repr__(self) -> str:
        return f"CliffordRep(n={self.n}, spinor_dim={self.spinor_dim})"


@lru_cache(maxsize=None)
def _cached_rep(n: int) -> CliffordRep:
    m = n // 2
    gammas: List[np.ndarray] = []
    for a in range(m):
        for pauli in (_X, _Y):
            factors = [_Z] * a + [pauli] + [_I2] * (m - a - 1)
            gammas.append(1j * _kron_all(factors))
    if n % 2 == 1:
        gammas.append(1j * _kron_all([_Z] * m))

    volume = None
    if n % 2 == 0:
        product = reduce(np.matmul, gammas)
        volume = (1j ** m) * product
        # exact +-1/+-i entries; strip the signed zeros the powers of i leave behind
        volume = np.round(volume.real) + 1j * np.round(volume.imag)

    logger.debug("Built Clifford representation n=%d spinor_dim=%d", n, 2**m)
    return CliffordRep(n, gammas, volume)


def build_clifford_rep(n: int) -> CliffordRep:
    """Build the complex spin representation of Cl(n)

    Deterministic: equal n returns entry-wise identical matrices.

    Args:
        n: Ambient dimension (>= 2)

    Returns:
        CliffordRep

    Raises:
        InvalidDimensionError: If n < 2 or n exceeds MAX_DIMENSION
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise InvalidDimensionError(f"Dimension must be an integer, got {n!r}")
    if n < 2:
        raise InvalidDimensionError(f"Dimension must be >= 2, got {n}")
    if n > MAX_DIMENSION:
        raise InvalidDimensionError(f"Dimension must be <= {MAX_DIMENSION}, got {n}")
    return _cached_rep(int(n))


def _check_spinor(rep: CliffordRep, s: np.ndarray) -> np.ndarray:
    s = np.asarray(s, dtype=np.complex128)
    if s.shape[-1] != rep.spinor_dim:
        raise DimensionMismatchError(
            f"Spinor must have {rep.spinor_dim} components, got {s.shape[-1]}"
        )
    return s


def clifford_mul(rep: CliffordRep, v: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Clifford multiplication (sum_i v_i gamma_i) s

    Broadcasts over leading axes of v and s.
    """
    s = _check_spinor(rep, s)
    return np.einsum("...ij,...j->...i", rep.gamma(v), s)


def tangential_clifford(
    rep: CliffordRep,
    x: np.ndarray,
    nu: np.ndarray,
    s: np.ndarray,
    tol: float = 1e-12,
) -> np.ndarray:
    """Boundary Clifford multiplication gamma^S(x) s = gamma(x) gamma(nu) s

    Raises:
        PreconditionError: If nu is not unit or x is not orthogonal to nu
    """
    x = np.asarray(x, dtype=float)
    nu = np.asarray(nu, dtype=float)
    nu_norm = np.linalg.norm(nu, axis=-1)
    if np.any(np.abs(nu_norm - 1.0) > tol):
        raise PreconditionError(f"Normal must be a unit vector, got norm {np.max(nu_norm)}")
    overlap = np.abs(np.sum(x * nu, axis=-1))
    if np.any(overlap > tol * np.maximum(1.0, np.linalg.norm(x, axis=-1))):
        raise PreconditionError(
            f"Tangent vector must be orthogonal to the normal, got <x, nu> = {np.max(overlap)}"
        )
    return clifford_mul(rep, x, clifford_mul(rep, nu, s))


def commutator_defect(rep: CliffordRep) -> float:
    """Max entry of gamma_i gamma_j + gamma_j gamma_i + 2 delta_ij Id over all pairs"""
    eye = np.eye(rep.spinor_dim)
    worst = 0.0
    for i, gi in enumerate(rep.gammas):
        for j, gj in enumerate(rep.gammas):
            anti = gi @ gj + gj @ gi + (2.0 * eye if i == j else 0.0)
            worst = max(worst, float(np.max(np.abs(anti))))
    return worst


def check_rep(rep: CliffordRep) -> Dict[str, Any]:
    """Residual of every representation invariant

    Returns:
        Dictionary of max-norm residuals; chirality entries are None for odd n
    """
    eye = np.eye(rep.spinor_dim)
    skew = max(float(np.max(np.abs(g + g.conj().T))) for g in rep.gammas)
    result: Dict[str, Any] = {
        "anticommutation": commutator_defect(rep),
        "skew_hermitian": skew,
        "chirality_square": None,
        "chirality_hermitian": None,
        "chirality_anticommutes": None,
        "chirality_unitary": None,
    }
    G = rep.volume_element
    if G is not None:
        result["chirality_square"] = float(np.max(np.abs(G @ G - eye)))
        result["chirality_hermitian"] = float(np.max(np.abs(G - G.conj().T)))
        result["chirality_anticommutes"] = max(
            float(np.max(np.abs(G @ g + g @ G))) for g in rep.gammas
        )
        result["chirality_unitary"] = float(np.max(np.abs(G.conj().T @ G - eye)))
    return result
