"""Rigidity pipelines: boundary hypothesis, extension, parallel or Killing conclusion

Each pipeline checks the boundary Dirac equation of the data, extends it into the
disk under the selected projection condition, measures the extension's defect and
its parallelism (flat) or Killing property (hyperbolic), and repeats the boundary
check on noise-perturbed data as a negative control.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Union

import numpy as np

from ..core.config import default_config
from ..core.errors import DegenerateInputError, PreconditionError, UnsupportedBasisError
from ..models.domain import ModelDomain
from ..models.fields import SpinorField, killing_constant, random_boundary_field, restrict_to_boundary
from ..operators.boundary import (
    assemble_extrinsic_dirac,
    assemble_twisted_dirac,
    chirality_projection,
    mit_projection,
)
from ..operators.matrix import OperatorMatrix
from ..operators.pointwise import ambient_dirac, frame_derivatives, killing_residual
from .extension import BoundaryCondition, extend_harmonic
from .identities import scalar_multiply

logger = logging.getLogger(__name__)


@dataclass
class RigidityReport:
    """Residuals of a rigidity pipeline

    All residuals are relative to the size of the data or of the extension. pass is
    true iff every residual is below its threshold and the negative control is detected.
    """

    boundary_dirac_residual: float
    extension_dirac_residual: float
    boundary_match_residual: float
    parallelism_residual: float
    H0_equals_H_residual: float
    energy_balance: float
    negative_control: Dict[str, Any] = field(default_factory=dict)
    thresholds: Dict[str, float] = field(default_factory=dict)
    params: Dict[str, Any] = field(default_factory=dict)

    _CHECKS = (
        ("boundary_dirac", "boundary_dirac_residual"),
        ("extension_dirac", "extension_dirac_residual"),
        ("boundary_match", "boundary_match_residual"),
        ("parallelism", "parallelism_residual"),
        ("mean_curvature", "H0_equals_H_residual"),
        ("energy_balance", "energy_balance"),
    )

    def rows(self) -> List[Dict[str, Any]]:
        """One {check, value, threshold, pass} row per residual plus the negative control"""
        out = []
        for key, attr in self._CHECKS:
            value = float(getattr(self, attr))
            threshold = float(self.thresholds[key])
            out.append({"check": key, "value": value, "threshold": threshold, "pass": abs(value) < threshold})
        control = self.negative_control
        out.append(
            {
                "check": "negative_control",
                "value": float(control.get("boundary_dirac_residual", 0.0)),
                "threshold": float(self.thresholds["boundary_dirac"]),
                "pass": bool(control.get("detected", False)),
            }
        )
        return out

    @property
    def passed(self) -> bool:
        return all(row["pass"] for row in self.rows())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "boundary_dirac_residual": self.boundary_dirac_residual,
            "extension_dirac_residual": self.extension_dirac_residual,
            "boundary_match_residual": self.boundary_match_residual,
            "parallelism_residual": self.parallelism_residual,
            "H0_equals_H_residual": self.H0_equals_H_residual,
            "energy_balance": self.energy_balance,
            "negative_control": dict(self.negative_control),
            "params": dict(self.params),
            "pass": self.passed,
        }


def _check_H0(domain: ModelDomain, H0: Union[float, np.ndarray, None]) -> Union[float, np.ndarray]:
    H = domain.mean_curvature
    if H0 is None:
        return H
    values = np.asarray(H0, dtype=float)
    tol = default_config().threshold("mean_curvature")
    if np.any(values < -tol) or np.any(values > H + tol):
        raise PreconditionError(
            f"H0 must satisfy 0 <= H0 <= H = {H:.6g}, got range [{values.min():.6g}, {values.max():.6g}]"
        )
    return float(values) if values.ndim == 0 else values


def _boundary_dirac_residual(op: OperatorMatrix, data: SpinorField, H0) -> float:
    basis = data.boundary
    phi = data.coefficients
    target = 0.5 * (data.domain.n - 1) * scalar_multiply(data, H0, phi)
    return basis.norm(op.apply(phi) - target) / basis.norm(phi)


def _negative_control(op: OperatorMatrix, data: SpinorField, H0, seed: int) -> Dict[str, Any]:
    config = default_config()
    noise = float(config.get("negative_control.noise"))
    perturbation = random_boundary_field(data.domain, seed, basis=data.boundary, stream=7)
    scale = noise * data.norm() / max(perturbation.norm(), 1e-300)
    perturbed = data + perturbation * scale
    residual = _boundary_dirac_residual(op, perturbed, H0)
    return {
        "noise": noise,
        "seed": int(seed),
        "boundary_dirac_residual": residual,
        "detected": residual >= config.threshold("boundary_dirac"),
    }


def _max_relative(values: np.ndarray, reference: np.ndarray) -> float:
    return float(np.max(np.abs(values))) / max(float(np.max(np.abs(reference))), 1e-300)


def _prepare(domain: ModelDomain, data: SpinorField) -> SpinorField:
    if not data.is_boundary:
        raise PreconditionError("Rigidity pipelines take boundary data")
    if data.domain is not domain:
        raise PreconditionError("Boundary data does not live on the given domain")
    if data.norm() == 0.0:
        raise DegenerateInputError("Boundary data must be nonzero")
    return data


def _energy_balance(domain: ModelDomain, trace: SpinorField, op: OperatorMatrix, norm: float) -> float:
    """int (Re<Dext Psi, Psi> - (n-1)/2 H |Psi|^2) over the boundary, relative to ||Phi||^2"""
    basis = trace.boundary
    psi = trace.coefficients
    pairing = basis.inner(op.apply(psi), psi).real
    mean = 0.5 * (domain.n - 1) * domain.mean_curvature * basis.norm(psi) ** 2
    return (pairing - mean) / norm**2


def rigidity_experiment(
    domain: ModelDomain,
    boundary_data: SpinorField,
    H0: Union[float, np.ndarray, None] = None,
    condition: Union[str, BoundaryCondition] = BoundaryCondition.MIT_PLUS,
    seed: int = 0,
    samples: int = 200,
) -> RigidityReport:
    """Flat pipeline: Dext Phi = (n-1)/2 H0 Phi, MIT extension, parallel extension, H0 = H

    Raises:
        PreconditionError: If the domain is hyperbolic or H0 leaves [0, H]
        DegenerateInputError: If the data vanishes
    """
    if domain.is_hyperbolic:
        raise PreconditionError("rigidity_experiment needs a euclidean-ball domain")
    data = _prepare(domain, boundary_data)
    H0 = _check_H0(domain, H0)
    config = default_config()
    condition = BoundaryCondition.parse(condition)
    basis = data.boundary

    dirac = assemble_extrinsic_dirac(domain, basis=basis)
    boundary_residual = _boundary_dirac_residual(dirac, data, H0)

    extension = extend_harmonic(domain, data, condition)
    x = domain.interior_samples(samples, seed=seed)
    psi = extension.evaluate(x)
    extension_residual = _max_relative(ambient_dirac(domain, extension).evaluate(x), psi)
    parallelism = _max_relative(frame_derivatives(extension, x), psi)

    trace = restrict_to_boundary(extension, basis)
    projection = (
        chirality_projection(domain, condition.sign, basis=basis)
        if condition.is_chiral
        else mit_projection(domain, condition.sign, basis=basis)
    )
    match = basis.norm(projection.apply(trace.coefficients - data.coefficients)) / data.norm()
    H_gap = float(np.max(np.abs(np.asarray(H0) - domain.mean_curvature)))

    report = RigidityReport(
        boundary_dirac_residual=boundary_residual,
        extension_dirac_residual=extension_residual,
        boundary_match_residual=match,
        parallelism_residual=parallelism,
        H0_equals_H_residual=H_gap,
        energy_balance=_energy_balance(domain, trace, dirac, data.norm()),
        negative_control=_negative_control(dirac, data, H0, seed),
        thresholds=_thresholds(config, "parallelism"),
        params={"domain": domain.descriptor(), "condition": condition.value, "seed": seed},
    )
    logger.info("Rigidity experiment on %r: pass=%s", domain, report.passed)
    return report


def hyperbolic_rigidity_experiment(
    domain: ModelDomain,
    boundary_data: SpinorField,
    H0: Union[float, np.ndarray, None] = None,
    sign: int = 1,
    seed: int = 0,
    samples: int = 200,
) -> RigidityReport:
    """Hyperbolic pipeline: Dext~ Phi = (n-1)/2 H0 Phi, chiral extension solving D~ psi = 0,
    imaginary Killing extension, H0 = H

    The chirality condition of opposite sign is used, so the extension solves the
    shifted equation of this sign.

    Raises:
        UnsupportedBasisError: For odd n
        PreconditionError: If the domain is flat or H0 leaves [0, H]
        DegenerateInputError: If the data vanishes
    """
    if not domain.is_hyperbolic:
        raise PreconditionError("hyperbolic_rigidity_experiment needs a hyperbolic-ball domain")
    if not domain.rep.has_chirality:
        raise UnsupportedBasisError(f"Chirality condition requires even n, got n={domain.n}")
    if sign not in (1, -1):
        raise ValueError(f"Sign must be +1 or -1, got {sign}")
    data = _prepare(domain, boundary_data)
    H0 = _check_H0(domain, H0)
    config = default_config()
    condition = BoundaryCondition.CHI_MINUS if sign > 0 else BoundaryCondition.CHI_PLUS
    basis = data.boundary

    twisted = assemble_twisted_dirac(domain, sign, basis=basis)
    boundary_residual = _boundary_dirac_residual(twisted, data, H0)

    extension = extend_harmonic(domain, data, condition)
    x = domain.interior_samples(samples, seed=seed)
    psi = extension.evaluate(x)
    extension_residual = _max_relative(ambient_dirac(domain, extension, sign=sign).evaluate(x), psi)
    killing = killing_residual(extension, killing_constant(sign), x) / max(float(np.max(np.abs(psi))), 1e-300)

    trace = restrict_to_boundary(extension, basis)
    projection = chirality_projection(domain, condition.sign, basis=basis)
    match = basis.norm(projection.apply(trace.coefficients - data.coefficients)) / data.norm()
    H_gap = float(np.max(np.abs(np.asarray(H0) - domain.mean_curvature)))

    report = RigidityReport(
        boundary_dirac_residual=boundary_residual,
        extension_dirac_residual=extension_residual,
        boundary_match_residual=match,
        parallelism_residual=killing,
        H0_equals_H_residual=H_gap,
        energy_balance=_energy_balance(domain, trace, twisted, data.norm()),
        negative_control=_negative_control(twisted, data, H0, seed),
        thresholds=_thresholds(config, "killing"),
        params={
            "domain": domain.descriptor(),
            "condition": condition.value,
            "sign": sign,
            "seed": seed,
        },
    )
    logger.info("Hyperbolic rigidity experiment on %r: pass=%s", domain, report.passed)
    return report


def _thresholds(config, parallel_key: str) -> Dict[str, float]:
    return {
        "boundary_dirac": config.threshold("boundary_dirac"),
        "extension_dirac": config.threshold("extension_dirac"),
        "boundary_match": config.threshold("boundary_match"),
        "parallelism": config.threshold(parallel_key),
        "mean_curvature": config.threshold("mean_curvature"),
        "energy_balance": config.threshold("energy_balance"),
    }
