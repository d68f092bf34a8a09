"""Spinor fields on model domains and their boundaries"""

import itertools
import logging
from enum import Enum
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from ..core.base_basis import BaseBoundaryBasis
from ..core.config import default_config
from ..core.errors import (
    DegenerateInputError,
    DimensionMismatchError,
    PreconditionError,
    ResolutionMismatchError,
    UnsupportedBasisError,
)
from ..core.rng import make_rng
from .bases import boundary_basis
from .domain import ModelDomain

logger = logging.getLogger(__name__)

Evaluator = Callable[[np.ndarray], np.ndarray]


class FieldSupport(str, Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"


class FieldBasis(str, Enum):
    CARTESIAN_GRID = "cartesian-grid"
    FOURIER_S1 = "fourier-S1"
    COLLOCATION_S2 = "collocation-S2"
    RADIAL_X_ANGULAR = "radial-x-angular"


class SpinorField:
    """Coefficient representation of a spinor field

    Interior fields are evaluated at Cartesian points (P, n) and return spinor
    components in the orthonormal frame E_i = e^{-u} d_i, shape (P, spinor_dim).
    Coordinate Jacobians d_i psi have shape (P, n, spinor_dim); fields without an
    exact Jacobian fall back to centered differences.

    Boundary fields carry a BaseBoundaryBasis and a flat coefficient vector.

    metadata["kind"] is one of "polynomial", "closed_form", "extension", "derived"
    or "boundary". Derived fields (D psi, nabla_X psi, ...) are evaluated lazily
    and store an empty coefficient array.
    """

    def __init__(
        self,
        domain: ModelDomain,
        support: FieldSupport,
        basis: FieldBasis,
        coefficients: np.ndarray,
        metadata: Optional[Dict[str, Any]] = None,
        evaluator: Optional[Evaluator] = None,
        jacobian: Optional[Evaluator] = None,
        boundary: Optional[BaseBoundaryBasis] = None,
    ):
        self.domain = domain
        self.support = FieldSupport(support)
        self.basis = FieldBasis(basis)
        self.coefficients = np.asarray(coefficients, dtype=np.complex128)
        self.coefficients.setflags(write=False)
        self.metadata = dict(metadata or {})
        self._evaluator = evaluator
        self._jacobian = jacobian
        self.boundary = boundary
        self._validate()

    @property
    def spinor_dim(self) -> int:
        return self.domain.rep.spinor_dim

    @property
    def kind(self) -> str:
        return self.metadata.get("kind", "boundary" if self.is_boundary else "derived")

    @property
    def is_boundary(self) -> bool:
        return self.support is FieldSupport.BOUNDARY

    @property
    def has_exact_jacobian(self) -> bool:
        return self._jacobian is not None

    def _validate(self):
        d = self.spinor_dim
        if self.is_boundary:
            if self.boundary is None:
                raise UnsupportedBasisError("Boundary fields require a boundary basis")
            if self.basis.value != self.boundary.name:
                raise UnsupportedBasisError(
                    f"Basis {self.basis.value} does not match boundary basis {self.boundary.name}"
                )
            if self.coefficients.shape != (self.boundary.size,):
                raise DimensionMismatchError(
                    f"Boundary coefficients must have shape ({self.boundary.size},), "
                    f"got {self.coefficients.shape}"
                )
            return
        if self._evaluator is None:
            raise UnsupportedBasisError("Interior fields require an evaluator")
        if self.kind == "derived":
            return
        expected = {
            "polynomial": self.metadata.get("terms"),
            "closed_form": 1,
            "extension": self.metadata.get("modes"),
        }.get(self.kind)
        if expected is not None and self.coefficients.shape != (expected, d):
            raise DimensionMismatchError(
                f"Coefficients must have shape ({expected}, {d}), got {self.coefficients.shape}"
            )

    # interior evaluation

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """Spinor values at points, shape (P, spinor_dim)"""
        x = self._points(x)
        if self.is_boundary:
            angles = self.boundary.angles_of(x)
            intrinsic = self.boundary.synthesize(self.coefficients, angles)
            Q = self.boundary.frame_rotation(angles)
            return np.einsum("pji,pj->pi", Q.conj(), intrinsic)
        return self._evaluator(x)

    def jacobian(self, x: np.ndarray, method: str = "exact", h: Optional[float] = None) -> np.ndarray:
        """Coordinate partial derivatives d_i psi, shape (P, n, spinor_dim)

        Args:
            x: Points (P, n)
            method: "exact" (falls back to "fd" when unavailable) or "fd"
            h: Finite-difference step (defaults to tolerances.fd_step)
        """
        if self.is_boundary:
            raise UnsupportedBasisError("Coordinate Jacobians are defined for interior fields only")
        x = self._points(x)
        if method not in ("exact", "fd"):
            raise ValueError(f"Method must be 'exact' or 'fd', got {method!r}")
        if method == "exact" and self._jacobian is not None:
            return self._jacobian(x)
        step = h if h is not None else default_config().tolerance("fd_step")
        out = np.empty((x.shape[0], self.domain.n, self.spinor_dim), dtype=np.complex128)
        for i in range(self.domain.n):
            shift = np.zeros(self.domain.n)
            shift[i] = step
            out[:, i, :] = (self._evaluator(x + shift) - self._evaluator(x - shift)) / (2.0 * step)
        return out

    def _points(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        if x.shape[-1] != self.domain.n:
            raise DimensionMismatchError(
                f"Points must have {self.domain.n} coordinates, got {x.shape[-1]}"
            )
        return x

    # boundary access

    def intrinsic_values(self) -> np.ndarray:
        """Intrinsic-frame values at the boundary basis nodes, shape (P, 2)"""
        self._require_boundary()
        return self.boundary.synthesize(self.coefficients)

    def cartesian_values(self) -> np.ndarray:
        """Cartesian-frame values at the boundary basis nodes, shape (P, spinor_dim)"""
        self._require_boundary()
        Q = self.boundary.frame_rotation(self.boundary.node_angles())
        return np.einsum("pji,pj->pi", Q.conj(), self.intrinsic_values())

    def norm(self) -> float:
        """L2 norm over the boundary"""
        self._require_boundary()
        return self.boundary.norm(self.coefficients)

    def _require_boundary(self):
        if not self.is_boundary:
            raise UnsupportedBasisError("Operation requires a boundary field")

    # linear structure

    def with_coefficients(self, coefficients: np.ndarray, **metadata) -> "SpinorField":
        """Boundary field in the same basis with new coefficients"""
        self._require_boundary()
        meta = dict(self.metadata)
        meta.update(metadata)
        return SpinorField(
            self.domain, self.support, self.basis, coefficients, meta, boundary=self.boundary
        )

    def __add__(self, other: "SpinorField") -> "SpinorField":
        return linear_combination([(1.0, self), (1.0, other)])

    def __sub__(self, other: "SpinorField") -> "SpinorField":
        return linear_combination([(1.0, self), (-1.0, other)])

    def __mul__(self, scalar: complex) -> "SpinorField":
        return linear_combination([(scalar, self)])

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return (
            f"SpinorField(support={self.support.value}, basis={self.basis.value}, "
            f"kind={self.kind}, coefficients={self.coefficients.shape})"
        )


def derived_field(
    source: SpinorField,
    evaluator: Evaluator,
    description: str,
    jacobian: Optional[Evaluator] = None,
) -> SpinorField:
    """Lazily evaluated interior field built from another field"""
    meta = {"kind": "derived", "description": description, "source": source.kind}
    if "degree" in source.metadata:
        meta["degree"] = source.metadata["degree"]
    return SpinorField(
        source.domain,
        FieldSupport.INTERIOR,
        source.basis,
        np.zeros((0, source.spinor_dim)),
        meta,
        evaluator=evaluator,
        jacobian=jacobian,
    )


def linear_combination(terms: List[Tuple[complex, SpinorField]]) -> SpinorField:
    """Sum of scalar multiples of fields on the same domain and support"""
    if not terms:
        raise ValueError("Linear combination needs at least one term")
    first = terms[0][1]
    for _, f in terms[1:]:
        if f.domain is not first.domain or f.support is not first.support:
            raise DimensionMismatchError("Fields must share domain and support")
    if first.is_boundary:
        for _, f in terms[1:]:
            if not first.boundary.same_as(f.boundary):
                raise DimensionMismatchError("Boundary fields must share the same basis")
        coeffs = sum(complex(a) * f.coefficients for a, f in terms)
        return first.with_coefficients(coeffs)

    def evaluator(x):
        return sum(complex(a) * f.evaluate(x) for a, f in terms)

    jacobian = None
    if all(f.has_exact_jacobian for _, f in terms):

        def jacobian(x):
            return sum(complex(a) * f.jacobian(x) for a, f in terms)

    degrees = [f.metadata.get("degree") for _, f in terms]
    field = derived_field(first, evaluator, "linear-combination", jacobian)
    if all(d is not None for d in degrees):
        field.metadata["degree"] = max(degrees)
    return field


# canonical fields


def _check_psi0(domain: ModelDomain, psi0: np.ndarray) -> np.ndarray:
    psi0 = np.asarray(psi0, dtype=np.complex128).reshape(-1)
    if psi0.shape != (domain.rep.spinor_dim,):
        raise DimensionMismatchError(
            f"Spinor must have {domain.rep.spinor_dim} components, got {psi0.shape[0]}"
        )
    if not np.any(np.abs(psi0) > 0):
        raise DegenerateInputError("Spinor psi0 must be nonzero")
    return psi0


def constant_spinor(domain: ModelDomain, psi0: np.ndarray) -> SpinorField:
    """Field equal to psi0 in the orthonormal Cartesian frame"""
    psi0 = _check_psi0(domain, psi0)
    n, d = domain.n, domain.rep.spinor_dim

    def evaluator(x):
        return np.broadcast_to(psi0, (x.shape[0], d)).copy()

    def jacobian(x):
        return np.zeros((x.shape[0], n, d), dtype=np.complex128)

    return SpinorField(
        domain,
        FieldSupport.INTERIOR,
        FieldBasis.CARTESIAN_GRID,
        psi0[None, :],
        {"kind": "closed_form", "form": "constant", "degree": 0},
        evaluator=evaluator,
        jacobian=jacobian,
    )


def parallel_spinor(domain: ModelDomain, psi0: np.ndarray) -> SpinorField:
    """Parallel spinor psi = psi0 on a Euclidean ball

    Raises:
        PreconditionError: If the domain is not Euclidean
        DegenerateInputError: If psi0 = 0
    """
    if domain.is_hyperbolic:
        raise PreconditionError("Parallel spinors require a euclidean-ball domain")
    field = constant_spinor(domain, psi0)
    field.metadata["form"] = "parallel"
    return field


def _check_sign(sign: int) -> int:
    if sign not in (1, -1):
        raise ValueError(f"Sign must be +1 or -1, got {sign}")
    return int(sign)


def killing_constant(sign: int) -> complex:
    """Killing number c with nabla_X psi = c gamma(X) psi for the imaginary Killing spinor of this sign"""
    return -0.5j * _check_sign(sign)


def imaginary_killing_spinor(domain: ModelDomain, sign: int, psi0: np.ndarray) -> SpinorField:
    """Imaginary Killing spinor on the Poincare ball

    psi(x) = e^{u/2} (psi0 - sign * i * gamma(x) psi0) satisfies
    nabla_X psi = -sign (i/2) gamma(X) psi, hence D psi = sign (n/2) i psi.

    Raises:
        PreconditionError: If the domain is not hyperbolic
    """
    if not domain.is_hyperbolic:
        raise PreconditionError("Imaginary Killing spinors require a hyperbolic-ball domain")
    sign = _check_sign(sign)
    psi0 = _check_psi0(domain, psi0)
    rep = domain.rep
    gamma_psi0 = np.stack([g @ psi0 for g in rep.gammas])  # (n, d)

    def evaluator(x):
        half = np.exp(0.5 * domain.conformal_log(x))[:, None]
        return half * (psi0[None, :] - sign * 1j * x @ gamma_psi0)

    def jacobian(x):
        half = np.exp(0.5 * domain.conformal_log(x))
        grad_u = domain.conformal_gradient(x)
        psi = evaluator(x)
        return 0.5 * grad_u[:, :, None] * psi[:, None, :] + (
            half[:, None, None] * (-sign * 1j) * gamma_psi0[None, :, :]
        )

    return SpinorField(
        domain,
        FieldSupport.INTERIOR,
        FieldBasis.CARTESIAN_GRID,
        psi0[None, :],
        {"kind": "closed_form", "form": "imaginary-killing", "sign": sign, "degree": 1},
        evaluator=evaluator,
        jacobian=jacobian,
    )


@lru_cache(maxsize=None)
def monomial_exponents(n: int, degree: int) -> Tuple[Tuple[int, ...], ...]:
    """All exponent tuples of total degree <= degree, graded then lexicographic"""
    out = []
    for total in range(degree + 1):
        for alpha in itertools.product(range(total, -1, -1), repeat=n):
            if sum(alpha) == total:
                out.append(alpha)
    return tuple(out)


def polynomial_field(domain: ModelDomain, coefficients: np.ndarray, degree: int) -> SpinorField:
    """Field with Cartesian polynomial components sum_alpha c_alpha x^alpha

    Args:
        domain: Model domain
        coefficients: Complex array (terms, spinor_dim) ordered as monomial_exponents(n, degree)
        degree: Total degree

    Returns:
        SpinorField with exact Jacobian
    """
    if degree < 0:
        raise ValueError(f"Degree must be >= 0, got {degree}")
    exponents = np.array(monomial_exponents(domain.n, degree), dtype=int)
    coefficients = np.asarray(coefficients, dtype=np.complex128)
    expected = (exponents.shape[0], domain.rep.spinor_dim)
    if coefficients.shape != expected:
        raise DimensionMismatchError(
            f"Polynomial coefficients must have shape {expected}, got {coefficients.shape}"
        )

    def powers(x, alpha):
        return np.prod(x[:, None, :] ** alpha[None, :, :], axis=-1)

    def evaluator(x):
        return powers(x, exponents) @ coefficients

    def jacobian(x):
        out = np.empty((x.shape[0], domain.n, domain.rep.spinor_dim), dtype=np.complex128)
        for i in range(domain.n):
            lowered = exponents.copy()
            factor = lowered[:, i].astype(float)
            lowered[:, i] = np.maximum(lowered[:, i] - 1, 0)
            out[:, i, :] = (powers(x, lowered) * factor[None, :]) @ coefficients
        return out

    return SpinorField(
        domain,
        FieldSupport.INTERIOR,
        FieldBasis.CARTESIAN_GRID,
        coefficients,
        {"kind": "polynomial", "degree": int(degree), "terms": exponents.shape[0]},
        evaluator=evaluator,
        jacobian=jacobian,
    )


def random_polynomial_field(domain: ModelDomain, seed: int, degree: int = 3, stream: int = 0) -> SpinorField:
    """Seeded polynomial field with standard complex Gaussian coefficients"""
    rng = make_rng(seed, stream=1000 + stream)
    terms = len(monomial_exponents(domain.n, degree))
    shape = (terms, domain.rep.spinor_dim)
    coeffs = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    field = polynomial_field(domain, coeffs, degree)
    field.metadata.update({"seed": int(seed), "stream": int(stream)})
    return field


def restrict_to_boundary(field: SpinorField, basis: Optional[BaseBoundaryBasis] = None) -> SpinorField:
    """Restrict an interior field to the boundary sphere and expand it in the boundary basis

    Args:
        field: Interior field
        basis: Boundary basis (defaults to the domain's configured basis)

    Returns:
        Boundary SpinorField

    Raises:
        PreconditionError: If the field is not an interior field
        ResolutionMismatchError: If the field's degree or mode count exceeds the basis
    """
    if field.is_boundary:
        raise PreconditionError("Restriction requires an interior field")
    domain = field.domain
    basis = basis or boundary_basis(domain)
    if abs(basis.radius - domain.induced_radius) > 1e-12 * max(1.0, domain.induced_radius):
        raise ResolutionMismatchError(
            f"Basis radius {basis.radius} does not match boundary radius {domain.induced_radius}"
        )

    degree = field.metadata.get("degree")
    if degree is not None and degree > basis.max_degree:
        raise ResolutionMismatchError(
            f"Field degree {degree} exceeds boundary basis capacity {basis.max_degree}"
        )
    modes = field.metadata.get("boundary_labels")
    if modes is not None and modes > len(basis.labels):
        raise ResolutionMismatchError(
            f"Field carries {modes} angular modes, boundary basis has {len(basis.labels)}"
        )

    angles = basis.node_angles()
    points = domain.boundary_points(basis.directions(angles))
    values = field.evaluate(points)
    Q = basis.frame_rotation(angles)
    intrinsic = np.einsum("pij,pj->pi", Q, values)
    coeffs = basis.analyze(intrinsic)

    meta = {"kind": "boundary", "restricted_from": field.kind}
    for key in ("form", "sign", "degree"):
        if key in field.metadata:
            meta[key] = field.metadata[key]
    return SpinorField(
        domain,
        FieldSupport.BOUNDARY,
        FieldBasis(basis.name),
        coeffs,
        meta,
        boundary=basis,
    )


def boundary_field(domain: ModelDomain, coefficients: np.ndarray, basis: Optional[BaseBoundaryBasis] = None, **metadata) -> SpinorField:
    """Boundary field from raw coefficients"""
    basis = basis or boundary_basis(domain)
    meta = {"kind": "boundary"}
    meta.update(metadata)
    return SpinorField(
        domain, FieldSupport.BOUNDARY, FieldBasis(basis.name), coefficients, meta, boundary=basis
    )


def random_boundary_field(domain: ModelDomain, seed: int, basis: Optional[BaseBoundaryBasis] = None, max_label: float = 4.5, stream: int = 0) -> SpinorField:
    """Seeded smooth boundary field supported on labels |q| <= max_label"""
    basis = basis or boundary_basis(domain)
    rng = make_rng(seed, stream=2000 + stream)
    coeffs = np.zeros(basis.size, dtype=np.complex128)
    for i, q in enumerate(basis.labels):
        if abs(q) > max_label:
            continue
        sl = basis.label_slice(i)
        block = rng.standard_normal(basis.block_size) + 1j * rng.standard_normal(basis.block_size)
        if basis.polar_size > 1:
            # keep low polar degree so the field stays smooth
            keep = np.tile(np.arange(basis.polar_size) < 4, 2)
            block = block * keep
        coeffs[sl] = block / np.sqrt(2.0)
    return boundary_field(domain, coeffs, basis, seed=int(seed))
