"""Extrinsic geometry of the boundary sphere of a model domain"""

from typing import Callable, Dict

import numpy as np

from ..core.rng import make_rng
from .domain import ModelDomain


class ExtrinsicData:
    """Inward normal, Weingarten map and mean curvature of the boundary

    All vectors are in orthonormal-frame components at boundary points given in
    Cartesian coordinates.

    Attributes:
        nu: Callable x -> inward unit normal, shape (P, n)
        H: Mean curvature (constant on model boundaries)
        induced_radius: Intrinsic radius of the boundary sphere
        gauss_residual: Max Gauss equation defect over sampled frames
        codazzi_residual: Max Codazzi equation defect over sampled frames
        weingarten_residual: Max defect of A = -nabla nu (finite differences)
    """

    def __init__(
        self,
        domain: ModelDomain,
        nu: Callable[[np.ndarray], np.ndarray],
        H: float,
        induced_radius: float,
    ):
        self.domain = domain
        self.nu = nu
        self.H = float(H)
        self.induced_radius = float(induced_radius)
        self.gauss_residual = float("nan")
        self.codazzi_residual = float("nan")
        self.weingarten_residual = float("nan")

    def A(self, x: np.ndarray) -> np.ndarray:
        """Weingarten map at boundary points as (P, n, n) matrices acting on tangent vectors"""
        nu = self.nu(x)
        n = nu.shape[-1]
        projector = np.eye(n)[None, :, :] - nu[:, :, None] * nu[:, None, :]
        return self.H * projector

    def mean_curvature(self, x: np.ndarray) -> np.ndarray:
        """Trace(A) / (n - 1) at boundary points, shape (P,)"""
        n = self.domain.n
        return np.trace(self.A(x), axis1=1, axis2=2) / (n - 1)

    def residuals(self) -> Dict[str, float]:
        return {
            "gauss": self.gauss_residual,
            "codazzi": self.codazzi_residual,
            "weingarten": self.weingarten_residual,
        }

    def __repr__(self) -> str:
        return f"ExtrinsicData(H={self.H}, induced_radius={self.induced_radius})"


def _tangent_vectors(rng: np.random.Generator, nu: np.ndarray, count: int) -> np.ndarray:
    v = rng.standard_normal((count,) + nu.shape)
    return v - np.sum(v * nu, axis=-1, keepdims=True) * nu


def _gauss_defect(data: ExtrinsicData, x: np.ndarray, rng: np.random.Generator) -> float:
    nu = data.nu(x)
    X, Y, Z = _tangent_vectors(rng, nu, 3)
    A = data.A(x)
    AX = np.einsum("pij,pj->pi", A, X)
    AY = np.einsum("pij,pj->pi", A, Y)

    def wedge(u, v, w):
        return np.sum(v * w, axis=-1)[:, None] * u - np.sum(u * w, axis=-1)[:, None] * v

    intrinsic = wedge(X, Y, Z) / data.induced_radius**2
    ambient = data.domain.sectional_curvature * wedge(X, Y, Z)
    extrinsic = np.sum(AY * Z, axis=-1)[:, None] * AX - np.sum(AX * Z, axis=-1)[:, None] * AY
    return float(np.max(np.abs(intrinsic - ambient - extrinsic)))


def _codazzi_defect(data: ExtrinsicData, x: np.ndarray, rng: np.random.Generator, h: float) -> float:
    # (nabla_X A) Y = X(H) Y for umbilic A; X(H) by centered differences along the sphere
    nu = data.nu(x)
    X, Y = _tangent_vectors(rng, nu, 2)
    domain = data.domain

    def dH(direction):
        plus = domain.boundary_points(x + h * direction)
        minus = domain.boundary_points(x - h * direction)
        return (data.mean_curvature(plus) - data.mean_curvature(minus)) / (2.0 * h)

    lhs = dH(X)[:, None] * Y - dH(Y)[:, None] * X
    return float(np.max(np.abs(lhs)))


def _weingarten_defect(data: ExtrinsicData, x: np.ndarray, rng: np.random.Generator, h: float) -> float:
    # A X = -nabla_X nu with nu as a coordinate field e^{-u} nu_frame
    domain = data.domain
    nu = data.nu(x)
    (X,) = _tangent_vectors(rng, nu, 1)

    def nu_coordinates(points):
        radial = -points / np.linalg.norm(points, axis=-1, keepdims=True)
        return np.exp(-domain.conformal_log(points))[:, None] * radial

    e_minus_u = np.exp(-domain.conformal_log(x))[:, None]
    Xc = e_minus_u * X
    derivative = (nu_coordinates(x + h * Xc) - nu_coordinates(x - h * Xc)) / (2.0 * h)
    grad_u = domain.conformal_gradient(x)
    Nc = nu_coordinates(x)
    # Levi-Civita of e^{2u} delta: nabla_X N = dN(X) + X(u) N + N(u) X - <X, N> grad u
    covariant = (
        derivative
        + np.sum(Xc * grad_u, axis=-1)[:, None] * Nc
        + np.sum(Nc * grad_u, axis=-1)[:, None] * Xc
        - np.sum(Xc * Nc, axis=-1)[:, None] * grad_u
    )
    covariant_frame = covariant / e_minus_u
    AX = np.einsum("pij,pj->pi", data.A(x), X)
    return float(np.max(np.abs(AX + covariant_frame)))


def boundary_geometry(domain: ModelDomain, samples: int = 100, seed: int = 0, fd_step: float = 1e-5) -> ExtrinsicData:
    """Extrinsic data of the boundary with Gauss, Codazzi and Weingarten residuals

    Args:
        domain: Model domain
        samples: Number of random boundary frames for the residual checks
        seed: Seed for the sampled frames
        fd_step: Step of the centered differences

    Returns:
        ExtrinsicData
    """
    data = ExtrinsicData(
        domain,
        nu=domain.inward_normal,
        H=domain.mean_curvature,
        induced_radius=domain.induced_radius,
    )
    rng = make_rng(seed, stream=201)
    x = domain.boundary_points(rng.standard_normal((samples, domain.n)))
    data.gauss_residual = _gauss_defect(data, x, rng)
    data.codazzi_residual = _codazzi_defect(data, x, rng, fd_step)
    data.weingarten_residual = _weingarten_defect(data, x, rng, fd_step)
    return data
