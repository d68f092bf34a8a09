"""Extension of boundary data on the circle to harmonic spinors on the disk

Per Fourier mode k the solutions of D psi = 0 (Euclidean) or of the shifted
equation on the Poincare disk are

    psi = e^{-u/2} ( f(r) e^{i k theta}, g(r) e^{i (k+1) theta} )

with f' - k f / r = tau lambda g and g' + (k + 1) g / r = tau lambda f, where
lambda = e^u = sum l_j r^{2j} (l = (1, 0, ...) flat, (2, 2, ...) hyperbolic) and tau
the shift sign. The regular solution of each mode is a power series in r^2; the
boundary condition fixes one complex amplitude per label q = k + 1/2.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as P

from ..core.config import default_config
from ..core.errors import (
    NumericalInvertibilityError,
    PreconditionError,
    ResolutionMismatchError,
    UnsupportedBasisError,
)
from ..models.bases import FourierS1Basis
from ..models.domain import ModelDomain
from ..models.fields import FieldBasis, FieldSupport, SpinorField

logger = logging.getLogger(__name__)


class BoundaryCondition(str, Enum):
    MIT_PLUS = "MIT+"
    MIT_MINUS = "MIT-"
    CHI_PLUS = "CHI+"
    CHI_MINUS = "CHI-"

    @property
    def sign(self) -> int:
        return 1 if self.value.endswith("+") else -1

    @property
    def is_chiral(self) -> bool:
        return self.value.startswith("CHI")

    def functional(self) -> np.ndarray:
        """Row w with w . v = the component of v kept by the projection (intrinsic frame)"""
        s = self.sign
        if self.is_chiral:
            return np.array([1.0, 1j * s])
        return np.array([1.0, float(s)])

    @classmethod
    def parse(cls, value: Union[str, "BoundaryCondition"]) -> "BoundaryCondition":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper().replace("CHIRAL", "CHI"))
        except ValueError:
            raise ValueError(f"Boundary condition must be one of MIT+, MIT-, CHI+, CHI-, got {value!r}")


def shift_sign(domain: ModelDomain, condition: BoundaryCondition) -> int:
    """tau in the mode equations: 0 on flat disks, the opposite of the condition sign otherwise"""
    return -condition.sign if domain.is_hyperbolic else 0


@dataclass(frozen=True)
class ModeSeries:
    """Regular mode solution f = r^p_f A(r^2), g = r^p_g B(r^2) with the conformal factor left out"""

    k: int
    A: np.ndarray
    B: np.ndarray

    @property
    def holomorphic(self) -> bool:
        return self.k >= 0

    def trace(self, r: float) -> Tuple[float, float]:
        t = r * r
        if self.holomorphic:
            return r**self.k * P.polyval(t, self.A), r ** (self.k + 1) * P.polyval(t, self.B)
        kp = -self.k - 1
        return r ** (kp + 1) * P.polyval(t, self.A), r**kp * P.polyval(t, self.B)


def mode_series(k: int, tau: int, hyperbolic: bool, radius: float, max_terms: int) -> ModeSeries:
    """Series coefficients of the regular solution of mode k, truncated where terms drop below 1e-18"""
    if tau == 0:
        one, zero = np.array([1.0]), np.array([0.0])
        return ModeSeries(k, one, zero) if k >= 0 else ModeSeries(k, zero, one)

    # lambda = weight * sum r^{2j} (hyperbolic) or 1 (flat); its convolutions are running sums
    weight = 2.0 if hyperbolic else 1.0
    kk = k if k >= 0 else -k - 1
    t = radius * radius
    lead, follow = [1.0], []
    lead_sum = follow_sum = 0.0
    scale = 1.0
    for J in range(max_terms):
        lead_sum = lead_sum + lead[J] if hyperbolic else lead[J]
        follow.append(tau * weight * lead_sum / (2 * kk + 2 + 2 * J))
        follow_sum = follow_sum + follow[J] if hyperbolic else follow[J]
        lead.append(tau * weight * follow_sum / (2 * J + 2))
        tail = max(abs(lead[-1]) * t ** (J + 1), abs(follow[-1]) * t**J)
        scale = max(scale, tail)
        if tail < 1e-18 * scale:
            break
    else:
        logger.warning("Mode %d series hit the %d-term cap at r=%.3f", k, max_terms, radius)
    lead, follow = np.array(lead), np.array(follow)
    # k >= 0: f carries the leading coefficient; k < 0 the roles of f and g swap
    return ModeSeries(k, lead, follow) if k >= 0 else ModeSeries(k, follow, lead)


def _mode_terms(series: ModeSeries, w: np.ndarray, t: np.ndarray):
    """Values and Wirtinger derivatives (d_z, d_zbar) of both components of one mode"""
    k = series.k
    out = []
    for component, coeffs in enumerate((series.A, series.B)):
        S = P.polyval(t, coeffs)
        dS = P.polyval(t, P.polyder(coeffs)) if coeffs.size > 1 else np.zeros_like(t)
        if series.holomorphic:
            m = k + component
            base = w**m
            lowered = m * w ** max(m - 1, 0)
            value = base * S
            d_z = lowered * S + np.conj(w) * base * dS
            d_zbar = w * base * dS
        else:
            m = -k - component
            wb = np.conj(w)
            base = wb**m
            lowered = m * wb ** max(m - 1, 0)
            value = base * S
            d_z = wb * base * dS
            d_zbar = lowered * S + w * base * dS
        out.append((value, d_z, d_zbar))
    return out


def _extension_field(
    domain: ModelDomain,
    amplitudes: Dict[int, complex],
    series: Dict[int, ModeSeries],
    trace: np.ndarray,
    metadata: Dict,
) -> SpinorField:
    active = [(k, c) for k, c in amplitudes.items() if c != 0]

    def components(x: np.ndarray, with_derivatives: bool):
        w = x[:, 0] + 1j * x[:, 1]
        t = np.real(w * np.conj(w))
        values = np.zeros((x.shape[0], 2), dtype=np.complex128)
        d_z = np.zeros_like(values)
        d_zbar = np.zeros_like(values)
        for k, c in active:
            for j, (v, dz, dzb) in enumerate(_mode_terms(series[k], w, t)):
                values[:, j] += c * v
                if with_derivatives:
                    d_z[:, j] += c * dz
                    d_zbar[:, j] += c * dzb
        return values, d_z, d_zbar

    def evaluator(x):
        values, _, _ = components(x, False)
        if domain.is_hyperbolic:
            values *= np.exp(-0.5 * domain.conformal_log(x))[:, None]
        return values

    def jacobian(x):
        values, d_z, d_zbar = components(x, True)
        jac = np.stack([d_z + d_zbar, 1j * (d_z - d_zbar)], axis=1)
        if domain.is_hyperbolic:
            factor = np.exp(-0.5 * domain.conformal_log(x))
            grad = -0.5 * domain.conformal_gradient(x)
            jac = factor[:, None, None] * (jac + grad[:, :, None] * values[:, None, :])
        return jac

    return SpinorField(
        domain,
        FieldSupport.INTERIOR,
        FieldBasis.RADIAL_X_ANGULAR,
        trace,
        metadata,
        evaluator=evaluator,
        jacobian=jacobian,
    )


def extend_harmonic(
    domain: ModelDomain,
    boundary_data: SpinorField,
    condition: Union[str, BoundaryCondition] = BoundaryCondition.MIT_PLUS,
) -> SpinorField:
    """Solve D psi = 0 (flat) or the shifted equation (hyperbolic) with projected boundary data

    The projection selected by the condition applied to the trace of psi equals the
    projection of the data. On hyperbolic disks CHI+/- and MIT+/- solve D~^-/+.

    Raises:
        UnsupportedBasisError: Unless n = 2 with Fourier boundary data
        ResolutionMismatchError: If the data basis does not match the boundary circle
        NumericalInvertibilityError: If a mode system is singular
    """
    condition = BoundaryCondition.parse(condition)
    if domain.n != 2:
        raise UnsupportedBasisError(f"Interior extension is implemented for n = 2, got n={domain.n}")
    if not boundary_data.is_boundary:
        raise PreconditionError("Extension needs boundary data")
    basis = boundary_data.boundary
    if not isinstance(basis, FourierS1Basis):
        raise UnsupportedBasisError(f"Extension needs Fourier boundary data, got {basis.name}")
    if abs(basis.radius - domain.induced_radius) > 1e-12 * max(1.0, domain.induced_radius):
        raise ResolutionMismatchError(
            f"Data radius {basis.radius} does not match boundary radius {domain.induced_radius}"
        )

    config = default_config()
    tau = shift_sign(domain, condition)
    a = domain.euclidean_radius
    damping = float(np.exp(-0.5 * domain.conformal_log(np.array([[a, 0.0]]))[0]))
    singular = config.tolerance("singular_mode")
    max_terms = int(config.resolution("series_terms"))
    row = condition.functional()
    grid = boundary_data.coefficients.reshape(len(basis.labels), 2)

    amplitudes: Dict[int, complex] = {}
    series: Dict[int, ModeSeries] = {}
    trace = np.zeros((len(basis.labels), 2), dtype=np.complex128)
    for i, q in enumerate(basis.labels):
        k = int(round(q - 0.5))
        s = mode_series(k, tau, domain.is_hyperbolic, a, max_terms)
        f, g = s.trace(a)
        mode_trace = damping * np.array([f, g])
        denominator = row @ mode_trace
        if abs(denominator) < singular * max(1e-300, float(np.max(np.abs(mode_trace)))):
            raise NumericalInvertibilityError(
                f"Boundary system of mode k={k} is singular under {condition.value}"
            )
        c = complex(row @ grid[i]) / denominator
        series[k] = s
        amplitudes[k] = c
        trace[i] = c * mode_trace

    logger.debug(
        "Extended %d labels under %s (tau=%d), max amplitude %.3e",
        len(basis.labels), condition.value, tau, max(abs(c) for c in amplitudes.values()),
    )
    metadata = {
        "kind": "extension",
        "modes": len(basis.labels),
        "condition": condition.value,
        "tau": tau,
        "boundary_labels": len(basis.labels),
    }
    return _extension_field(domain, amplitudes, series, trace, metadata)
