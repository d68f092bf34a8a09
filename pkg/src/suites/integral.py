"""Integrated and pointwise identity suites: Reilly, Green, Gauss and energy-momentum"""

import logging

import numpy as np

from ..analytics.reports import Check
from ..core.base_suite import BaseSuite
from ..core.config import default_config
from ..integrals.energy import energy_momentum_residual, projection_symmetry_residual
from ..integrals.reilly import green_residual, hyperbolic_reilly_residual, reilly_convergence, reilly_residual
from ..models.fields import imaginary_killing_spinor, parallel_spinor, restrict_to_boundary
from ..models.geometry import boundary_geometry
from ..operators.boundary import assemble_extrinsic_dirac
from ..operators.intrinsic import extrinsic_killing_residual, gauss_formula_residual
from ..operators.pointwise import dirac_boundary_relation_residual, lichnerowicz_residual
from ..solve.spectrum import spectrum
from .registry import register
from .utils import build_domain, random_fields, relative, seeded_spinor

logger = logging.getLogger(__name__)


def _reilly_relative(report) -> float:
    scale = max(abs(report.lhs_interior), abs(report.rhs_boundary))
    return relative(report.residual, scale)


@register
class ReillySuite(BaseSuite):
    name = "reilly"
    description = "Spinorial Reilly and Green formulas on Euclidean balls, with a step-halving convergence study"
    required = ("n", "radius")
    dimensions = (2, 3)
    kinds = ("euclidean-ball",)

    def execute(self, config, report):
        cfg = default_config()
        domain = build_domain(config)
        threshold = cfg.threshold("reilly")

        parallel = parallel_spinor(domain, seeded_spinor(domain, config.seed))
        report.below("parallel_reilly", _reilly_relative(reilly_residual(domain, parallel)), threshold)

        fields = random_fields(domain, config.seed)
        worst_reilly = worst_green = worst_lichnerowicz = 0.0
        for field in fields:
            worst_reilly = max(worst_reilly, _reilly_relative(reilly_residual(domain, field)))
            worst_green = max(worst_green, abs(green_residual(domain, field)))
            worst_lichnerowicz = max(worst_lichnerowicz, lichnerowicz_residual(field, seed=config.seed))
        report.below("random_reilly", worst_reilly, threshold)
        report.below("green", worst_green, cfg.threshold("green"))
        report.below("lichnerowicz", worst_lichnerowicz, cfg.threshold("lichnerowicz"))

        study = reilly_convergence(domain, fields[0])
        report.add(Check.flag("reilly_convergence", study["min_ratio"], study["pass"], study["threshold"]))
        logger.info("Reilly ratios %s", ", ".join(f"{r:.2f}" for r in study["ratios"]))


@register
class HyperbolicReillySuite(BaseSuite):
    name = "hyperbolic-reilly"
    description = "Reilly formula for the shifted operators on hyperbolic balls"
    required = ("n", "radius")
    dimensions = (2, 3)

    def params(self, config):
        return {"n": config.n, "kind": "hyperbolic-ball", "radius": config.radius}

    def execute(self, config, report):
        threshold = default_config().threshold("hyperbolic_reilly")
        domain = build_domain(config.with_suite(config.suite, kind="hyperbolic-ball"))
        psi0 = seeded_spinor(domain, config.seed)
        fields = random_fields(domain, config.seed)
        for sign in (1, -1):
            label = "+" if sign > 0 else "-"
            killing = imaginary_killing_spinor(domain, sign, psi0)
            result = hyperbolic_reilly_residual(domain, killing, sign)
            report.below(f"killing{label}_reilly", _reilly_relative(result), threshold)
            worst = max(_reilly_relative(hyperbolic_reilly_residual(domain, f, sign)) for f in fields)
            report.below(f"random{label}_reilly", worst, threshold)
            study = reilly_convergence(domain, fields[0], steps=(2e-2, 1e-2), sign=sign)
            report.add(Check.flag(f"random{label}_convergence", study["min_ratio"], study["pass"], study["threshold"]))


@register
class GaussSuite(BaseSuite):
    name = "gauss"
    description = "Boundary Dirac relation, spinorial Gauss formula and extrinsic boundary geometry"
    required = ("n", "kind", "radius")
    dimensions = (2, 3)

    def execute(self, config, report):
        cfg = default_config()
        domain = build_domain(config)
        threshold = cfg.threshold("pointwise")

        fields = random_fields(domain, config.seed)
        relation = max(dirac_boundary_relation_residual(f) for f in fields)
        gauss = max(gauss_formula_residual(f, seed=config.seed) for f in fields)
        report.below("dirac_boundary_relation", relation, threshold)
        report.below("gauss_formula", gauss, threshold)

        geometry = boundary_geometry(domain, seed=config.seed)
        for key, value in geometry.residuals().items():
            report.below(f"geometry_{key}", value, threshold)
        report.below("mean_curvature", abs(geometry.H - domain.mean_curvature), cfg.tolerance("equality"))

        if not domain.is_hyperbolic:
            data = restrict_to_boundary(parallel_spinor(domain, seeded_spinor(domain, config.seed)))
            report.below("restricted_parallel_killing", extrinsic_killing_residual(data), threshold)


@register
class EnergyMomentumSuite(BaseSuite):
    name = "energy-momentum"
    description = "Energy-momentum tensor of restricted parallel spinors and projection symmetry of eigenspinors"
    required = ("n", "radius")
    dimensions = (2, 3)
    kinds = ("euclidean-ball",)

    def execute(self, config, report):
        threshold = default_config().threshold("energy_momentum")
        domain = build_domain(config)
        data = restrict_to_boundary(parallel_spinor(domain, seeded_spinor(domain, config.seed)))
        report.below("two_T_equals_A", energy_momentum_residual(data), threshold)

        # first eigenspinor of the extrinsic Dirac operator
        dirac = assemble_extrinsic_dirac(domain, basis=data.boundary)
        result = spectrum(dirac)
        index = int(np.argmin(np.where(result.eigenvalues > 0, result.eigenvalues, np.inf)))
        eigenspinor = data.with_coefficients(result.vector(index), form="eigenspinor")
        report.below("mit_symmetry", projection_symmetry_residual(eigenspinor, "mit"), threshold)
        if domain.rep.has_chirality:
            report.below("chirality_symmetry", projection_symmetry_residual(eigenspinor, "chirality"), threshold)

