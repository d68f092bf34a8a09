"""Spectral suites: extrinsic Dirac spectrum, the hyperbolic eigenvalue bound and Psi+/-"""

import logging

import numpy as np

from ..core.base_suite import BaseSuite
from ..core.config import default_config
from ..models.domain import domain_from_alpha
from ..operators.boundary import assemble_extrinsic_dirac
from ..solve.hyperbolic import hmr_sweep, psi_pm_construct
from ..solve.spectrum import spectrum
from .registry import register
from .utils import build_domain, relative, seeded_spinor

logger = logging.getLogger(__name__)

HMR_RADII = (0.5, 1.0, 2.0)
# multiplicity of +lambda_1 on S1 and S2 (the magnitude list repeats it for -lambda_1)
FIRST_MULTIPLICITY = {2: 2, 3: 2}


def _positive_below(values: np.ndarray, limit: float) -> np.ndarray:
    return np.sort(values[(values > 0) & (values <= limit)])


@register
class SpectrumSuite(BaseSuite):
    name = "spectrum"
    description = "Extrinsic Dirac spectrum: first eigenvalue, lattice, symmetry, two-resolution agreement"
    required = ("n", "kind", "radius")
    dimensions = (2, 3)

    def execute(self, config, report):
        cfg = default_config()
        domain = build_domain(config)
        n, R = domain.n, domain.induced_radius
        dirac = assemble_extrinsic_dirac(domain)
        result = spectrum(dirac)
        scale = dirac.norm()

        trusted = result.trusted()
        report.eigenvalues = np.sort(np.abs(trusted)).tolist()

        report.below("eigen_residual", relative(result.residual, scale), cfg.tolerance("eigen_residual"))
        report.below("symmetric", relative(result.symmetry_defect(), scale), cfg.tolerance("symmetry"))

        first = 0.5 * (n - 1) / R
        lambda1 = result.smallest_positive
        report.below("lambda1", abs(lambda1 - first), cfg.tolerance("equality"))
        multiplicity = result.multiplicity(lambda1, tol=1e-6)
        report.below("lambda1_multiplicity", abs(multiplicity - FIRST_MULTIPLICITY[n]), 0.5)

        # eigenvalues of the round sphere of radius R are (k + (n-1)/2) / R
        scaled = np.abs(trusted) * R - 0.5 * (n - 1)
        lattice = float(np.max(np.abs(scaled - np.round(scaled)), initial=0.0))
        report.below("lattice", lattice, cfg.tolerance("equality"))

        key = "fourier_modes" if n == 2 else "theta_nodes"
        coarse_truncation = max(2, int(domain.resolution[key]) // 2)
        coarse = spectrum(assemble_extrinsic_dirac(domain, truncation=coarse_truncation))
        limit = coarse.cutoff
        fine_values = _positive_below(result.eigenvalues, limit)
        coarse_values = _positive_below(coarse.eigenvalues, limit)
        count = min(fine_values.size, coarse_values.size)
        agreement = float(np.max(np.abs(fine_values[:count] - coarse_values[:count]), initial=0.0))
        report.below("two_resolution_agreement", agreement, cfg.threshold("resolution_agreement"))
        report.below("two_resolution_count", abs(fine_values.size - coarse_values.size), 0.5)
        logger.info("Spectrum n=%d R=%.3f: lambda1=%.12f (x%d)", n, R, lambda1, multiplicity)


@register
class HMRSuite(BaseSuite):
    name = "hmr"
    description = "First twisted eigenvalue against (n-1)/2 inf H on hyperbolic balls, radii 0.5, 1, 2"
    required = ("n",)
    dimensions = (2, 3)

    def execute(self, config, report):
        tolerance = default_config().threshold("hmr_upper")
        eigenvalues = []
        for sign in (1, -1):
            for item in hmr_sweep(config.n, HMR_RADII, sign, config.resolution()):
                label = f"rho={item.radius:g}{'+' if sign > 0 else '-'}"
                report.add_rows(
                    [
                        {"check": "gap_nonnegative", "value": item.gap, "threshold": item.lower, "pass": item.passed},
                        {"check": "equality", "value": item.gap, "threshold": tolerance, "pass": item.equality},
                    ],
                    prefix=f"{label}.",
                )
                eigenvalues.append(item.lambda1)
        report.eigenvalues = eigenvalues


@register
class PsiPMSuite(BaseSuite):
    name = "psi-pm"
    description = "Psi+/- eigenspinors of the twisted operators on the hyperbolic ball with coth(rho) = alpha"
    required = ("n", "alpha")
    dimensions = (2, 3)

    def execute(self, config, report):
        threshold = default_config().threshold("psi_pm")
        domain = domain_from_alpha(config.n, config.alpha, config.resolution())
        psi0 = seeded_spinor(domain, config.seed)
        for sign in (1, -1):
            _, residual = psi_pm_construct(domain, config.alpha, sign, psi0)
            report.below(f"psi{'+' if sign > 0 else '-'}_eigen_residual", residual, threshold)
        report.eigenvalues = [0.5 * (config.n - 1) * config.alpha]

    def params(self, config):
        return {"n": config.n, "alpha": config.alpha, "kind": "hyperbolic-ball"}
