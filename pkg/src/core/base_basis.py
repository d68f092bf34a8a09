"""Abstract base class for spectral bases on boundary spheres"""

from abc import ABC, abstractmethod
from typing import List, Optional, Tuple

import numpy as np

from .errors import DimensionMismatchError, UnsupportedBasisError


class BaseBoundaryBasis(ABC):
    """Abstract base class for boundary spinor bases

    Coefficients are flat complex vectors ordered [label][component][k]:
    labels are half-integer azimuthal quantum numbers q, components are the two
    spinor components in the intrinsic boundary frame, and k counts the
    polar basis functions of a label (one on the circle).

    Operators are block-diagonal over labels, so every subclass provides
    per-label blocks of size ``block_size``.
    """

    name: str = "boundary"
    n: int = 0

    def __init__(self, radius: float, name: Optional[str] = None):
        """Initialize basis

        Args:
            radius: Intrinsic radius of the boundary sphere
            name: Optional basis name
        """
        if not radius > 0:
            raise ValueError(f"Radius must be > 0, got {radius}")
        self.radius = float(radius)
        if name:
            self.name = name

    @property
    @abstractmethod
    def labels(self) -> np.ndarray:
        """Half-integer azimuthal labels, ascending"""

    @property
    @abstractmethod
    def polar_size(self) -> int:
        """Number of polar basis functions per label and component"""

    @property
    def block_size(self) -> int:
        return 2 * self.polar_size

    @property
    def size(self) -> int:
        return len(self.labels) * self.block_size

    @property
    @abstractmethod
    def measure_scale(self) -> float:
        """Factor s with <f, g>_{L2} = s * vdot(coeffs_g, coeffs_f)"""

    @property
    @abstractmethod
    def max_degree(self) -> int:
        """Largest Cartesian polynomial degree whose restriction the basis represents exactly"""

    @abstractmethod
    def node_angles(self) -> Tuple[np.ndarray, ...]:
        """Flattened angular coordinates of the quadrature nodes"""

    @abstractmethod
    def node_weights(self) -> np.ndarray:
        """Quadrature weights at the nodes for the intrinsic measure"""

    @abstractmethod
    def angles_of(self, x: np.ndarray) -> Tuple[np.ndarray, ...]:
        """Angular coordinates of points (any nonzero radius)"""

    @abstractmethod
    def directions(self, angles: Optional[Tuple[np.ndarray, ...]] = None) -> np.ndarray:
        """Unit outward directions (P, n) at the given angles (default: nodes)"""

    @abstractmethod
    def tangent_frame(self, angles: Optional[Tuple[np.ndarray, ...]] = None) -> np.ndarray:
        """Unit tangent frame (P, n - 1, n) matching tangent_cliffords"""

    @abstractmethod
    def connection_terms(
        self, values: np.ndarray, angles: Optional[Tuple[np.ndarray, ...]] = None
    ) -> List[np.ndarray]:
        """Spin connection contribution of each frame vector on intrinsic values"""

    @abstractmethod
    def frame_rotation(self, angles: Tuple[np.ndarray, ...]) -> np.ndarray:
        """Unitary maps Q with psi_intrinsic = Q psi_cartesian, shape (P, 2, 2)"""

    @abstractmethod
    def synthesize(self, coeffs: np.ndarray, angles: Optional[Tuple[np.ndarray, ...]] = None) -> np.ndarray:
        """Intrinsic spinor values (P, 2) at the nodes (or at given angles)"""

    @abstractmethod
    def angular_derivatives(self, coeffs: np.ndarray) -> List[np.ndarray]:
        """Derivatives of intrinsic components along the unit intrinsic frame, without connection terms"""

    @abstractmethod
    def analyze(self, values: np.ndarray) -> np.ndarray:
        """Project intrinsic node values (P, 2) onto coefficients"""

    @abstractmethod
    def dirac_block(self, label: float) -> np.ndarray:
        """Extrinsic Dirac block for one label on the unit sphere"""

    @abstractmethod
    def normal_block(self, label: float) -> np.ndarray:
        """Block of Clifford multiplication by the inward normal"""

    def chirality_block(self, label: float) -> np.ndarray:
        """Block of the chirality operator G (even ambient dimension only)"""
        raise UnsupportedBasisError(
            f"Chirality operator is only available in even dimension, got n={self.n}"
        )

    @property
    @abstractmethod
    def tangent_cliffords(self) -> List[np.ndarray]:
        """Intrinsic matrices of gamma^S(e_a) for the unit tangent frame"""

    def label_slice(self, index: int) -> slice:
        """Coefficient slice of the index-th label"""
        start = index * self.block_size
        return slice(start, start + self.block_size)

    def inner(self, f: np.ndarray, g: np.ndarray) -> complex:
        """L2 product <f, g> of two coefficient vectors (linear in f)"""
        return complex(self.measure_scale * np.vdot(self._check(g), self._check(f)))

    def norm(self, f: np.ndarray) -> float:
        return float(np.sqrt(max(self.inner(f, f).real, 0.0)))

    def _check(self, coeffs: np.ndarray) -> np.ndarray:
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        if coeffs.shape != (self.size,):
            raise DimensionMismatchError(
                f"Coefficient vector must have shape ({self.size},), got {coeffs.shape}"
            )
        return coeffs

    def _validate_resolution(self, value: int, name: str, minimum: int = 2, maximum: int = 4096):
        """Validate a resolution parameter

        Raises:
            ValueError: If the value is not an even integer in range
        """
        if not isinstance(value, (int, np.integer)):
            raise ValueError(f"{name} must be an integer, got {type(value)}")
        if value < minimum:
            raise ValueError(f"{name} must be >= {minimum}, got {value}")
        if value > maximum:
            raise ValueError(f"{name} must be <= {maximum}, got {value}")
        if value % 2:
            raise ValueError(f"{name} must be even, got {value}")

    def resolution_key(self) -> tuple:
        """Parameters that fix the coefficient layout and the quadrature nodes"""
        return (type(self).__name__, self.radius, len(self.labels), self.polar_size)

    def same_as(self, other: object) -> bool:
        """True when other is this basis or an equivalent one at the same resolution"""
        if other is self:
            return True
        return isinstance(other, BaseBoundaryBasis) and self.resolution_key() == other.resolution_key()

    def descriptor(self) -> dict:
        return {"basis": self.name, "radius": self.radius, "labels": len(self.labels), "polar_size": self.polar_size}

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(radius={self.radius}, labels={len(self.labels)}, polar_size={self.polar_size})"
