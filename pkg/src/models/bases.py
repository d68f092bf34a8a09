"""Spectral bases for spinors on the boundary circle and the boundary 2-sphere

Intrinsic trivializations encode the bounding spin structure: on the circle the
intrinsic components are antiperiodic Fourier series e^{i q theta} with half-integer
q; on the sphere, in the (e_theta, e_phi) frame, each half-integer azimuthal mode
e^{i q phi} carries Jacobi-weighted polar functions sin(t/2)^a cos(t/2)^b P_k^(a,b)(cos t)
that are regular at both poles.
"""

import logging
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np
from scipy import special

from ..core.base_basis import BaseBoundaryBasis
from ..core.errors import UnsupportedBasisError
from .domain import ModelDomain

logger = logging.getLogger(__name__)

_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def half_integer_labels(count: int) -> np.ndarray:
    """The count half-integers symmetric about zero: -(count-1)/2, ..., (count-1)/2"""
    return np.arange(count) - (count - 1) / 2.0


class FourierS1Basis(BaseBoundaryBasis):
    """Antiperiodic Fourier basis on the boundary circle (n = 2)

    psi_int = diag(e^{i theta/2}, e^{-i theta/2}) psi_cart, so the upper Cartesian
    component of label q oscillates at frequency q - 1/2 and the lower at q + 1/2.
    """

    name = "fourier-S1"
    n = 2

    def __init__(self, modes: int, radius: float, nodes: Optional[int] = None):
        super().__init__(radius)
        self._validate_resolution(modes, "Fourier mode count")
        self.modes = int(modes)
        self.node_count = int(nodes) if nodes else 2 * self.modes
        self._validate_resolution(self.node_count, "Node count", minimum=self.modes + 1)
        self._labels = half_integer_labels(self.modes)
        self._theta = 2.0 * np.pi * np.arange(self.node_count) / self.node_count

    @property
    def labels(self) -> np.ndarray:
        return self._labels

    @property
    def polar_size(self) -> int:
        return 1

    @property
    def measure_scale(self) -> float:
        return 2.0 * np.pi * self.radius

    @property
    def max_degree(self) -> int:
        return self.modes // 2 - 1

    def resolution_key(self) -> tuple:
        return super().resolution_key() + (self.node_count,)

    def node_angles(self) -> Tuple[np.ndarray, ...]:
        return (self._theta,)

    def node_weights(self) -> np.ndarray:
        return np.full(self.node_count, 2.0 * np.pi * self.radius / self.node_count)

    def angles_of(self, x: np.ndarray) -> Tuple[np.ndarray, ...]:
        x = np.atleast_2d(x)
        return (np.arctan2(x[:, 1], x[:, 0]),)

    def directions(self, angles: Optional[Tuple[np.ndarray, ...]] = None) -> np.ndarray:
        """Unit outward directions at the given angles (default: nodes), shape (P, 2)"""
        (theta,) = angles or self.node_angles()
        return np.stack([np.cos(theta), np.sin(theta)], axis=-1)

    def tangent_frame(self, angles: Optional[Tuple[np.ndarray, ...]] = None) -> np.ndarray:
        """Unit tangent frame (P, 1, 2): counterclockwise T"""
        (theta,) = angles or self.node_angles()
        return np.stack([-np.sin(theta), np.cos(theta)], axis=-1)[:, None, :]

    def frame_rotation(self, angles: Tuple[np.ndarray, ...]) -> np.ndarray:
        (theta,) = angles
        Q = np.zeros((theta.size, 2, 2), dtype=np.complex128)
        Q[:, 0, 0] = np.exp(0.5j * theta)
        Q[:, 1, 1] = np.exp(-0.5j * theta)
        return Q

    def _coeff_grid(self, coeffs: np.ndarray) -> np.ndarray:
        return self._check(coeffs).reshape(self.modes, 2)

    def synthesize(self, coeffs: np.ndarray, angles: Optional[Tuple[np.ndarray, ...]] = None) -> np.ndarray:
        (theta,) = angles or self.node_angles()
        phases = np.exp(1j * np.outer(theta, self._labels))
        return phases @ self._coeff_grid(coeffs)

    def angular_derivatives(self, coeffs: np.ndarray) -> List[np.ndarray]:
        grid = self._coeff_grid(coeffs) * (1j * self._labels / self.radius)[:, None]
        phases = np.exp(1j * np.outer(self._theta, self._labels))
        return [phases @ grid]

    def analyze(self, values: np.ndarray) -> np.ndarray:
        values = np.asarray(values, dtype=np.complex128).reshape(self.node_count, 2)
        phases = np.exp(-1j * np.outer(self._labels, self._theta))
        return (phases @ values / self.node_count).reshape(-1)

    def dirac_block(self, label: float) -> np.ndarray:
        return np.diag([label, -label]).astype(np.complex128)

    def normal_block(self, label: float) -> np.ndarray:
        return -1j * _X

    def chirality_block(self, label: float) -> np.ndarray:
        return _Z.copy()

    @property
    def tangent_cliffords(self) -> List[np.ndarray]:
        return [-1j * _Z]

    def connection_terms(
        self, values: np.ndarray, angles: Optional[Tuple[np.ndarray, ...]] = None
    ) -> List[np.ndarray]:
        """Spin connection contribution per frame vector (flat in the rotating trivialization)"""
        return [np.zeros_like(values)]


@lru_cache(maxsize=None)
def _gauss_legendre(count: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = special.roots_legendre(count)
    return x, w


def _polar_functions(q: float, component: int, K: int, theta: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Unnormalized polar functions and their theta-derivatives, shapes (K, P)"""
    if component == 0:
        a, b = abs(q - 0.5), abs(q + 0.5)
    else:
        a, b = abs(q + 0.5), abs(q - 0.5)
    a, b = int(round(a)), int(round(b))
    s, c = np.sin(theta / 2.0), np.cos(theta / 2.0)
    x = np.cos(theta)
    envelope = s**a * c**b
    # d/dtheta of s^a c^b, written without negative powers
    d_envelope = np.zeros_like(theta)
    if a > 0:
        d_envelope = d_envelope + 0.5 * a * s ** (a - 1) * c ** (b + 1)
    if b > 0:
        d_envelope = d_envelope - 0.5 * b * s ** (a + 1) * c ** (b - 1)
    values = np.empty((K, theta.size))
    derivs = np.empty((K, theta.size))
    for k in range(K):
        P = special.eval_jacobi(k, a, b, x)
        if k > 0:
            dP = 0.5 * (k + a + b + 1) * special.eval_jacobi(k - 1, a + 1, b + 1, x)
        else:
            dP = np.zeros_like(x)
        values[k] = envelope * P
        # dx/dtheta = -sin(theta) = -2 s c
        derivs[k] = d_envelope * P - envelope * dP * 2.0 * s * c
    return values, derivs


class CollocationS2Basis(BaseBoundaryBasis):
    """Per-azimuthal-mode polar basis on the boundary 2-sphere (n = 3)

    Theta nodes are Gauss-Legendre roots in cos(theta), so the poles are never
    evaluated; phi nodes are equispaced. Polar functions are orthonormal for
    2 pi sum_j w_j f(x_j) g(x_j), which is exact for every product used.
    """

    name = "collocation-S2"
    n = 3

    def __init__(self, theta_nodes: int, radius: float, phi_nodes: Optional[int] = None):
        super().__init__(radius)
        self._validate_resolution(theta_nodes, "Theta node count")
        self.theta_nodes = int(theta_nodes)
        self.phi_nodes = int(phi_nodes) if phi_nodes else 2 * self.theta_nodes
        self._validate_resolution(self.phi_nodes, "Phi node count", minimum=self.theta_nodes)
        self._labels = half_integer_labels(self.theta_nodes)
        self.K = self.theta_nodes // 2
        x, w = _gauss_legendre(self.theta_nodes)
        self._x = x
        self._w = w
        self._theta = np.arccos(x)
        self._phi = 2.0 * np.pi * np.arange(self.phi_nodes) / self.phi_nodes
        self._tables = {}
        self._norms = {}

    @property
    def labels(self) -> np.ndarray:
        return self._labels

    @property
    def polar_size(self) -> int:
        return self.K

    @property
    def measure_scale(self) -> float:
        return self.radius**2

    @property
    def max_degree(self) -> int:
        return self.K - 1

    def resolution_key(self) -> tuple:
        return super().resolution_key() + (self.theta_nodes, self.phi_nodes)

    def node_angles(self) -> Tuple[np.ndarray, ...]:
        theta = np.repeat(self._theta, self.phi_nodes)
        phi = np.tile(self._phi, self.theta_nodes)
        return theta, phi

    def node_weights(self) -> np.ndarray:
        w = np.repeat(self._w, self.phi_nodes) * (2.0 * np.pi / self.phi_nodes)
        return w * self.radius**2

    def angles_of(self, x: np.ndarray) -> Tuple[np.ndarray, ...]:
        x = np.atleast_2d(x)
        r = np.linalg.norm(x, axis=-1)
        theta = np.arccos(np.clip(x[:, 2] / r, -1.0, 1.0))
        phi = np.mod(np.arctan2(x[:, 1], x[:, 0]), 2.0 * np.pi)
        return theta, phi

    def directions(self, angles: Optional[Tuple[np.ndarray, ...]] = None) -> np.ndarray:
        theta, phi = angles or self.node_angles()
        return np.stack(
            [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], axis=-1
        )

    def tangent_frame(self, angles: Optional[Tuple[np.ndarray, ...]] = None) -> np.ndarray:
        """Unit tangent frame (P, 2, 3): (e_theta, e_phi)"""
        theta, phi = angles or self.node_angles()
        e_theta = np.stack(
            [np.cos(theta) * np.cos(phi), np.cos(theta) * np.sin(phi), -np.sin(theta)], axis=-1
        )
        e_phi = np.stack([-np.sin(phi), np.cos(phi), np.zeros_like(phi)], axis=-1)
        return np.stack([e_theta, e_phi], axis=1)

    def frame_rotation(self, angles: Tuple[np.ndarray, ...]) -> np.ndarray:
        theta, phi = angles
        s, c = np.sin(theta / 2.0), np.cos(theta / 2.0)
        ep, em = np.exp(0.5j * phi), np.exp(-0.5j * phi)
        inverse_spin = np.empty((theta.size, 2, 2), dtype=np.complex128)
        inverse_spin[:, 0, 0] = c * ep
        inverse_spin[:, 0, 1] = s * em
        inverse_spin[:, 1, 0] = -s * ep
        inverse_spin[:, 1, 1] = c * em
        phase = np.diag([np.exp(-0.25j * np.pi), np.exp(0.25j * np.pi)])
        return np.einsum("ij,pjk->pik", phase, inverse_spin)

    def _table(self, index: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Normalized polar values/derivatives at the theta nodes for label index"""
        if index not in self._tables:
            q = self._labels[index]
            up, d_up = _polar_functions(q, 0, self.K, self._theta)
            lo, d_lo = _polar_functions(q, 1, self.K, self._theta)
            norm_up = np.sqrt(2.0 * np.pi * (up**2) @ self._w)
            norm_lo = np.sqrt(2.0 * np.pi * (lo**2) @ self._w)
            self._norms[index] = (norm_up, norm_lo)
            self._tables[index] = (
                up / norm_up[:, None],
                d_up / norm_up[:, None],
                lo / norm_lo[:, None],
                d_lo / norm_lo[:, None],
            )
        return self._tables[index]

    def _polar_at(self, index: int, theta: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Normalized polar values at arbitrary angles, shapes (K, P)"""
        self._table(index)
        norm_up, norm_lo = self._norms[index]
        q = self._labels[index]
        up, _ = _polar_functions(q, 0, self.K, theta)
        lo, _ = _polar_functions(q, 1, self.K, theta)
        return up / norm_up[:, None], lo / norm_lo[:, None]

    def _coeff_grid(self, coeffs: np.ndarray) -> np.ndarray:
        return self._check(coeffs).reshape(len(self._labels), 2, self.K)

    def _synthesize_modes(self, coeffs: np.ndarray, derivative: bool = False) -> np.ndarray:
        """Per-label polar profiles at the theta nodes, shape (labels, theta_nodes, 2)"""
        grid = self._coeff_grid(coeffs)
        out = np.zeros((len(self._labels), self.theta_nodes, 2), dtype=np.complex128)
        for i in range(len(self._labels)):
            if not np.any(grid[i]):
                continue
            up, d_up, lo, d_lo = self._table(i)
            out[i, :, 0] = grid[i, 0] @ (d_up if derivative else up)
            out[i, :, 1] = grid[i, 1] @ (d_lo if derivative else lo)
        return out

    def _to_nodes(self, profiles: np.ndarray, factor: Optional[np.ndarray] = None) -> np.ndarray:
        """Sum label profiles against e^{i q phi}; rows ordered (theta, phi)"""
        if factor is not None:
            profiles = profiles * factor[:, None, None]
        phases = np.exp(1j * np.outer(self._phi, self._labels))
        values = np.einsum("fl,ltc->tfc", phases, profiles)
        return values.reshape(-1, 2)

    def synthesize(self, coeffs: np.ndarray, angles: Optional[Tuple[np.ndarray, ...]] = None) -> np.ndarray:
        if angles is None:
            return self._to_nodes(self._synthesize_modes(coeffs))
        theta, phi = angles
        grid = self._coeff_grid(coeffs)
        out = np.zeros((theta.size, 2), dtype=np.complex128)
        for i, q in enumerate(self._labels):
            if not np.any(grid[i]):
                continue
            up, lo = self._polar_at(i, theta)
            phase = np.exp(1j * q * phi)
            out[:, 0] += phase * (grid[i, 0] @ up)
            out[:, 1] += phase * (grid[i, 1] @ lo)
        return out

    def angular_derivatives(self, coeffs: np.ndarray) -> List[np.ndarray]:
        d_theta = self._to_nodes(self._synthesize_modes(coeffs, derivative=True))
        d_phi = self._to_nodes(self._synthesize_modes(coeffs), factor=1j * self._labels)
        sin_theta = np.repeat(np.sin(self._theta), self.phi_nodes)[:, None]
        return [d_theta / self.radius, d_phi / (sin_theta * self.radius)]

    def analyze(self, values: np.ndarray) -> np.ndarray:
        values = np.asarray(values, dtype=np.complex128).reshape(self.theta_nodes, self.phi_nodes, 2)
        phases = np.exp(-1j * np.outer(self._labels, self._phi))
        profiles = np.einsum("lf,tfc->ltc", phases, values) / self.phi_nodes
        grid = np.zeros((len(self._labels), 2, self.K), dtype=np.complex128)
        for i in range(len(self._labels)):
            up, _, lo, _ = self._table(i)
            grid[i, 0] = 2.0 * np.pi * up @ (self._w * profiles[i, :, 0])
            grid[i, 1] = 2.0 * np.pi * lo @ (self._w * profiles[i, :, 1])
        return grid.reshape(-1)

    def dirac_block(self, label: float) -> np.ndarray:
        index = int(np.argmin(np.abs(self._labels - label)))
        q = self._labels[index]
        up, d_up, lo, d_lo = self._table(index)
        half_cot = 0.5 * np.cos(self._theta) / np.sin(self._theta)
        q_sin = q / np.sin(self._theta)
        # D_q = [[0, i(d + cot/2 + q/sin)], [i(d + cot/2 - q/sin), 0]]
        upper_from_lower = 1j * (d_lo + (half_cot + q_sin) * lo)
        lower_from_upper = 1j * (d_up + (half_cot - q_sin) * up)
        weights = 2.0 * np.pi * self._w
        A01 = (up * weights) @ upper_from_lower.T
        A10 = (lo * weights) @ lower_from_upper.T
        K = self.K
        block = np.zeros((2 * K, 2 * K), dtype=np.complex128)
        block[:K, K:] = A01
        block[K:, :K] = A10
        return block

    def normal_block(self, label: float) -> np.ndarray:
        K = self.K
        return np.diag(np.concatenate([-1j * np.ones(K), 1j * np.ones(K)]))

    @property
    def tangent_cliffords(self) -> List[np.ndarray]:
        return [1j * _X, 1j * _Y]

    def connection_terms(
        self, values: np.ndarray, angles: Optional[Tuple[np.ndarray, ...]] = None
    ) -> List[np.ndarray]:
        """Spin connection contribution per frame vector: 1/2 cot(theta) gamma_theta gamma_phi on e_phi"""
        theta, _ = angles or self.node_angles()
        half_cot = 0.5 * np.cos(theta) / np.sin(theta) / self.radius
        gamma_theta, gamma_phi = self.tangent_cliffords
        rotation = gamma_theta @ gamma_phi
        return [np.zeros_like(values), half_cot[:, None] * (values @ rotation.T)]


def boundary_basis(domain: ModelDomain) -> BaseBoundaryBasis:
    """Default boundary basis of a domain at its configured resolution

    Raises:
        UnsupportedBasisError: If n is not 2 or 3
    """
    if domain.n == 2:
        return FourierS1Basis(int(domain.resolution["fourier_modes"]), domain.induced_radius)
    if domain.n == 3:
        return CollocationS2Basis(int(domain.resolution["theta_nodes"]), domain.induced_radius)
    raise UnsupportedBasisError(
        f"Boundary discretization is only available for n in (2, 3), got n={domain.n}"
    )
