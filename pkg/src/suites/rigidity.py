"""Rigidity suites: known-answer equality pipelines on the flat and hyperbolic disk"""

import logging

from ..core.base_suite import BaseSuite
from ..core.config import default_config
from ..models.fields import imaginary_killing_spinor, parallel_spinor, restrict_to_boundary
from ..solve.identities import extension_linearity_residual, integration_by_parts_residual, intertwining_residual
from ..solve.rigidity import hyperbolic_rigidity_experiment, rigidity_experiment
from .registry import register
from .utils import build_domain, seeded_spinor

logger = logging.getLogger(__name__)


@register
class RigiditySuite(BaseSuite):
    name = "rigidity"
    description = "Equality case on the flat disk: boundary data of a parallel spinor, MIT extension, H0 = H"
    required = ("n", "radius")
    dimensions = (2,)
    kinds = ("euclidean-ball",)

    def execute(self, config, report):
        cfg = default_config()
        domain = build_domain(config)
        data = restrict_to_boundary(parallel_spinor(domain, seeded_spinor(domain, config.seed)))

        result = rigidity_experiment(domain, data, seed=config.seed)
        report.add_rows(result.rows())

        identity_tol = cfg.tolerance("operator_identity")
        for sign in (1, -1):
            label = "+" if sign > 0 else "-"
            report.below(f"integration_by_parts{label}", integration_by_parts_residual(data, sign), identity_tol)
            report.below(f"intertwining{label}", intertwining_residual(data, sign=sign), cfg.threshold("boundary_dirac"))

        other = restrict_to_boundary(parallel_spinor(domain, seeded_spinor(domain, config.seed, stream=1)))
        linearity = extension_linearity_residual(data, other, 2.0, -1.0j, seed=config.seed)
        report.below("extension_linearity", linearity, cfg.threshold("extension_dirac"))
        logger.info("Rigidity on the flat disk: pass=%s", result.passed)


@register
class HyperbolicRigiditySuite(BaseSuite):
    name = "hyperbolic-rigidity"
    description = "Equality case on the hyperbolic disk for both signs: Killing boundary data, chiral extension"
    required = ("n", "radius")
    dimensions = (2,)

    def params(self, config):
        return {"n": config.n, "kind": "hyperbolic-ball", "radius": config.radius}

    def execute(self, config, report):
        domain = build_domain(config.with_suite(config.suite, kind="hyperbolic-ball"))
        psi0 = seeded_spinor(domain, config.seed)
        for sign in (1, -1):
            data = restrict_to_boundary(imaginary_killing_spinor(domain, sign, psi0))
            result = hyperbolic_rigidity_experiment(domain, data, sign=sign, seed=config.seed)
            report.add_rows(result.rows(), prefix="plus." if sign > 0 else "minus.")
            logger.info("Rigidity on the hyperbolic disk, sign %+d: pass=%s", sign, result.passed)
