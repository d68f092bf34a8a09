"""Algebraic suites: Clifford representation and boundary operator identities"""

import logging

import numpy as np

from ..clifford.rep import build_clifford_rep, check_rep, clifford_mul, tangential_clifford
from ..core.base_suite import BaseSuite
from ..core.config import default_config
from ..core.rng import make_rng
from ..models.fields import imaginary_killing_spinor, killing_constant, parallel_spinor
from ..operators.boundary import (
    assemble_extrinsic_dirac,
    assemble_twisted_dirac,
    chirality_projection,
    mit_projection,
    normal_clifford,
)
from ..operators.matrix import OperatorMatrix
from ..operators.pointwise import ambient_dirac, killing_residual, twistor_energy_density
from ..solve.identities import commutation_defect, splitting_residual
from ..solve.spectrum import spectrum
from .registry import register
from .utils import build_domain, relative, seeded_spinor

logger = logging.getLogger(__name__)


@register
class CliffordSuite(BaseSuite):
    name = "clifford"
    description = "Clifford relations, skew-Hermiticity, chirality axioms and Clifford multiplication"
    required = ("n",)

    def execute(self, config, report):
        tol = default_config().tolerance("clifford")
        rep = build_clifford_rep(config.n)
        for key, value in check_rep(rep).items():
            if value is not None:
                report.below(key, value, tol)

        again = build_clifford_rep(config.n)
        identical = all(np.array_equal(a, b) for a, b in zip(rep.gammas, again.gammas))
        report.below("deterministic", 0.0 if identical else 1.0, 0.5)
        report.below("spinor_dim", abs(rep.spinor_dim - 2 ** (config.n // 2)), 0.5)

        rng = make_rng(config.seed, stream=1)
        s = rng.standard_normal(rep.spinor_dim) + 1j * rng.standard_normal(rep.spinor_dim)
        e1 = np.zeros(config.n)
        e1[0] = 1.0
        twice = clifford_mul(rep, e1, clifford_mul(rep, e1, s))
        report.below("clifford_square", float(np.max(np.abs(twice + s))), tol * np.abs(s).max())

        # random orthonormal pair (u, nu)
        q, _ = np.linalg.qr(rng.standard_normal((config.n, 2)))
        u, nu = q[:, 0], q[:, 1]
        t = tangential_clifford(rep, u, nu, tangential_clifford(rep, u, nu, s))
        report.below("tangential_square", float(np.max(np.abs(t + s))), 10 * tol * np.abs(s).max())
        gs = tangential_clifford(rep, u, nu, clifford_mul(rep, nu, s))
        sg = clifford_mul(rep, nu, tangential_clifford(rep, u, nu, s))
        report.below("tangential_anticommutes_normal", float(np.max(np.abs(gs + sg))), 10 * tol * np.abs(s).max())


def _identity_defect(op: OperatorMatrix) -> float:
    return (op - OperatorMatrix.identity(op.basis)).norm()


@register
class OperatorsSuite(BaseSuite):
    name = "operators"
    description = "Hermiticity, projection algebra, intertwining and pointwise ambient operators"
    required = ("n", "kind", "radius")
    dimensions = (2, 3)

    def execute(self, config, report):
        cfg = default_config()
        domain = build_domain(config)
        identity_tol = cfg.tolerance("operator_identity")
        projection_tol = cfg.tolerance("projection")

        dirac = assemble_extrinsic_dirac(domain)
        basis = dirac.basis
        scale = dirac.norm()
        report.below("dirac_hermitian", relative(dirac.hermitian_defect(), scale), cfg.tolerance("hermitian"))

        g_nu = normal_clifford(domain, basis=basis)
        report.below("normal_square", (g_nu @ g_nu + OperatorMatrix.identity(basis)).norm(), projection_tol)
        report.below("normal_anticommutes_dirac", relative((dirac @ g_nu + g_nu @ dirac).norm(), scale), identity_tol)

        p_plus = mit_projection(domain, 1, basis=basis)
        p_minus = mit_projection(domain, -1, basis=basis)
        report.below("mit_idempotent", (p_plus @ p_plus - p_plus).norm(), projection_tol)
        report.below("mit_orthogonal", (p_plus @ p_minus).norm(), projection_tol)
        report.below("mit_complete", _identity_defect(p_plus + p_minus), projection_tol)
        report.below("mit_rank", abs(sum(np.trace(b).real for b in p_plus.blocks) - basis.size / 2), 1e-8)
        report.below("mit_intertwines", relative(commutation_defect(dirac, p_plus, p_minus), scale), identity_tol)

        c = 0.5 * (domain.n - 1)
        for sign in (1, -1):
            twisted = assemble_twisted_dirac(domain, sign, basis=basis)
            label = "+" if sign > 0 else "-"
            report.below(f"twisted{label}_hermitian", relative(twisted.hermitian_defect(), scale), cfg.tolerance("hermitian"))
            square = twisted @ twisted - dirac @ dirac - OperatorMatrix.identity(basis) * (c * c)
            report.below(f"twisted{label}_square", relative(square.norm(), scale * scale), identity_tol)

        if domain.rep.has_chirality:
            b_plus = chirality_projection(domain, 1, basis=basis)
            b_minus = chirality_projection(domain, -1, basis=basis)
            report.below("chirality_idempotent", (b_plus @ b_plus - b_plus).norm(), projection_tol)
            report.below("chirality_orthogonal", (b_plus @ b_minus).norm(), projection_tol)
            report.below("chirality_complete", _identity_defect(b_plus + b_minus), projection_tol)
            twisted = assemble_twisted_dirac(domain, 1, basis=basis)
            report.below(
                "chirality_intertwines_twisted",
                relative(commutation_defect(twisted, b_plus, b_minus), scale),
                identity_tol,
            )

        result = spectrum(dirac)
        report.below("spectrum_symmetric", relative(result.symmetry_defect(), scale), cfg.tolerance("symmetry"))
        if domain.n == 2:
            report.below("circle_splitting", splitting_residual(domain, dirac), identity_tol)

        self._pointwise(domain, config, report)

    @staticmethod
    def _pointwise(domain, config, report):
        cfg = default_config()
        x = domain.interior_samples(100, seed=config.seed)
        psi0 = seeded_spinor(domain, config.seed)
        if domain.is_hyperbolic:
            for sign in (1, -1):
                label = "+" if sign > 0 else "-"
                field = imaginary_killing_spinor(domain, sign, psi0)
                shifted = ambient_dirac(domain, field, sign=sign).evaluate(x)
                report.below(f"killing{label}_shifted_dirac", float(np.max(np.abs(shifted))), cfg.threshold("extension_dirac"))
                report.below(
                    f"killing{label}_fd_residual",
                    killing_residual(field, killing_constant(sign), x, method="fd"),
                    cfg.threshold("killing"),
                )
                twistor = float(np.max(twistor_energy_density(field, x, method="fd")))
                report.below(f"killing{label}_twistor", np.sqrt(twistor), cfg.threshold("pointwise"))
        else:
            field = parallel_spinor(domain, psi0)
            report.below("parallel_dirac", float(np.max(np.abs(ambient_dirac(domain, field).evaluate(x)))), cfg.threshold("extension_dirac"))
            twistor = float(np.max(twistor_energy_density(field, x, method="fd")))
            report.below("parallel_twistor", np.sqrt(twistor), cfg.threshold("pointwise"))
