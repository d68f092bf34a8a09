"""Tests for the extension solver, rigidity pipelines and hyperbolic eigenvalue checks"""

import numpy as np
import pytest

from src.core.errors import DegenerateInputError, PreconditionError, UnsupportedBasisError
from src.models.domain import domain_from_alpha, make_domain
from src.models.fields import (
    boundary_field,
    imaginary_killing_spinor,
    parallel_spinor,
    random_boundary_field,
    restrict_to_boundary,
)
from src.operators.boundary import assemble_extrinsic_dirac, mit_projection
from src.operators.matrix import OperatorMatrix
from src.operators.pointwise import ambient_dirac
from src.solve.extension import BoundaryCondition, extend_harmonic, mode_series
from src.solve.hyperbolic import hmr_bound_check, hmr_sweep, psi_pm_construct
from src.solve.identities import (
    commutation_defect,
    extension_linearity_residual,
    integration_by_parts_residual,
    intertwining_residual,
    splitting_residual,
)
from src.solve.rigidity import hyperbolic_rigidity_experiment, rigidity_experiment


class TestBoundaryCondition:
    @pytest.mark.parametrize(
        "text,expected",
        [("MIT+", BoundaryCondition.MIT_PLUS), ("mit-", BoundaryCondition.MIT_MINUS), ("chiral+", BoundaryCondition.CHI_PLUS)],
    )
    def test_parse(self, text, expected):
        assert BoundaryCondition.parse(text) is expected

    def test_parse_rejects_unknown(self):
        with pytest.raises(ValueError):
            BoundaryCondition.parse("APS")

    def test_flat_modes_are_monomials(self):
        series = mode_series(2, 0, False, 1.0, 100)
        assert series.trace(0.5) == pytest.approx((0.25, 0.0))
        series = mode_series(-3, 0, False, 1.0, 100)
        assert series.trace(0.5) == pytest.approx((0.0, 0.25))


class TestExtension:
    def test_constant_spinor_is_recovered(self, disk, psi0):
        data = restrict_to_boundary(parallel_spinor(disk, psi0))
        x = disk.interior_samples(50, seed=4)
        for condition in ("MIT+", "MIT-", "CHI+", "CHI-"):
            extension = extend_harmonic(disk, data, condition)
            np.testing.assert_allclose(extension.evaluate(x), np.tile(psi0, (50, 1)), atol=1e-10)

    def test_hyperbolic_killing_spinor_is_recovered(self, hyperbolic_disk, psi0):
        # CHI- fixes the solutions of the shifted equation of sign +1
        field = imaginary_killing_spinor(hyperbolic_disk, 1, psi0)
        extension = extend_harmonic(hyperbolic_disk, restrict_to_boundary(field), "CHI-")
        x = hyperbolic_disk.interior_samples(30, seed=2)
        np.testing.assert_allclose(extension.evaluate(x), field.evaluate(x), atol=1e-9)
        np.testing.assert_allclose(extension.jacobian(x), field.jacobian(x), atol=1e-8)
        assert np.abs(ambient_dirac(hyperbolic_disk, extension, sign=1).evaluate(x)).max() < 1e-8

    @pytest.mark.parametrize("condition,sign", [("CHI-", 1), ("CHI+", -1)])
    def test_hyperbolic_extension_of_random_data(self, hyperbolic_disk, condition, sign):
        extension = extend_harmonic(hyperbolic_disk, random_boundary_field(hyperbolic_disk, seed=5), condition)
        x = hyperbolic_disk.interior_samples(30, seed=3)
        np.testing.assert_allclose(extension.jacobian(x), extension.jacobian(x, method="fd", h=1e-5), atol=1e-7)
        assert np.abs(ambient_dirac(hyperbolic_disk, extension, sign=sign).evaluate(x)).max() < 1e-8
        assert np.abs(ambient_dirac(hyperbolic_disk, extension, sign=sign, method="fd").evaluate(x)).max() < 1e-6

    def test_linearity(self, disk):
        first = random_boundary_field(disk, seed=1)
        second = random_boundary_field(disk, seed=1, stream=1)
        assert extension_linearity_residual(first, second, 2.0, -1j, samples=40) < 1e-10

    def test_requires_planar_fourier_data(self, ball, disk, psi0):
        with pytest.raises(UnsupportedBasisError):
            extend_harmonic(ball, restrict_to_boundary(parallel_spinor(ball, psi0)))
        with pytest.raises(PreconditionError):
            extend_harmonic(disk, parallel_spinor(disk, psi0))


class TestRigidity:
    def test_flat_pipeline_passes(self, disk, psi0):
        data = restrict_to_boundary(parallel_spinor(disk, psi0))
        report = rigidity_experiment(disk, data, seed=3, samples=60)
        assert report.passed, report.rows()
        assert report.negative_control["detected"]
        assert [row["check"] for row in report.rows()][-1] == "negative_control"
        assert report.to_dict()["pass"] is True

    @pytest.mark.parametrize("sign", [1, -1])
    def test_hyperbolic_pipeline_passes(self, hyperbolic_disk, psi0, sign):
        data = restrict_to_boundary(imaginary_killing_spinor(hyperbolic_disk, sign, psi0))
        report = hyperbolic_rigidity_experiment(hyperbolic_disk, data, sign=sign, samples=60)
        assert report.passed, report.rows()
        assert report.params["condition"] == ("CHI-" if sign > 0 else "CHI+")

    def test_random_data_fails_boundary_equation(self, disk):
        report = rigidity_experiment(disk, random_boundary_field(disk, seed=2), samples=20)
        assert not report.passed
        assert report.boundary_dirac_residual > 1e-3

    def test_H0_above_mean_curvature(self, disk, psi0):
        data = restrict_to_boundary(parallel_spinor(disk, psi0))
        with pytest.raises(PreconditionError):
            rigidity_experiment(disk, data, H0=2.0)

    def test_zero_data(self, disk):
        size = random_boundary_field(disk, seed=0).boundary.size
        with pytest.raises(DegenerateInputError):
            rigidity_experiment(disk, boundary_field(disk, np.zeros(size)))

    def test_wrong_domain(self, disk, hyperbolic_disk, ball, psi0):
        data = restrict_to_boundary(parallel_spinor(disk, psi0))
        with pytest.raises(PreconditionError):
            rigidity_experiment(hyperbolic_disk, data)
        with pytest.raises(PreconditionError):
            hyperbolic_rigidity_experiment(disk, data)
        other = make_domain("euclidean-ball", 2, 1.0)
        with pytest.raises(PreconditionError):
            rigidity_experiment(other, data)
        with pytest.raises(UnsupportedBasisError):
            hyperbolic_rigidity_experiment(make_domain("hyperbolic-ball", 3, 1.0), data)


class TestIdentities:
    @pytest.mark.parametrize("fixture", ["disk", "hyperbolic_disk"])
    def test_circle_splitting(self, fixture, request):
        domain = request.getfixturevalue(fixture)
        dirac = assemble_extrinsic_dirac(domain)
        assert splitting_residual(domain, dirac) < 1e-12
        radius = domain.induced_radius
        np.testing.assert_allclose(dirac.block_for(1.5), np.diag([1.5, -1.5]) / radius, atol=1e-12)

    def test_splitting_detects_a_perturbed_operator(self, disk):
        dirac = assemble_extrinsic_dirac(disk)
        shifted = dirac + 1e-3 * OperatorMatrix.identity(dirac.basis)
        assert splitting_residual(disk, shifted) == pytest.approx(1e-3, rel=1e-6)

    def test_splitting_needs_circle(self, ball):
        with pytest.raises(UnsupportedBasisError):
            splitting_residual(ball, assemble_extrinsic_dirac(ball))

    def test_mit_commutation(self, disk):
        dirac = assemble_extrinsic_dirac(disk)
        plus = mit_projection(disk, 1, basis=dirac.basis)
        minus = mit_projection(disk, -1, basis=dirac.basis)
        assert commutation_defect(dirac, plus, minus) < 1e-10 * dirac.norm()

    @pytest.mark.parametrize("fixture", ["disk", "ball"])
    def test_integration_by_parts_and_intertwining(self, fixture, request):
        domain = request.getfixturevalue(fixture)
        data = restrict_to_boundary(parallel_spinor(domain, np.ones(domain.rep.spinor_dim)))
        for sign in (1, -1):
            assert integration_by_parts_residual(data, sign) < 1e-10
            assert intertwining_residual(data, sign=sign) < 1e-7

    def test_integration_by_parts_for_random_data(self, ball):
        assert integration_by_parts_residual(random_boundary_field(ball, seed=4)) < 1e-10


class TestHyperbolicBound:
    @pytest.mark.parametrize("n", [2, 3])
    def test_equality_on_geodesic_balls(self, n):
        for report in hmr_sweep(n, (0.5, 1.0, 2.0)):
            assert report.passed
            assert report.equality, report.to_dict()
            assert report.bound == pytest.approx(0.5 * (n - 1) / np.tanh(report.radius))

    def test_negative_sign(self, hyperbolic_disk):
        report = hmr_bound_check(hyperbolic_disk, sign=-1)
        assert report.equality
        assert report.to_dict()["pass"] is True

    def test_needs_hyperbolic_domain(self, disk):
        with pytest.raises(PreconditionError):
            hmr_bound_check(disk)


class TestPsiPm:
    @pytest.mark.parametrize("alpha", [1.5, 2.0, 3.0])
    @pytest.mark.parametrize("n", [2, 3])
    @pytest.mark.parametrize("sign", [1, -1])
    def test_eigenspinor(self, n, sign, alpha):
        domain = domain_from_alpha(n, alpha)
        field, residual = psi_pm_construct(domain, alpha, sign)
        assert residual < 1e-8
        assert field.metadata["sign"] == sign

    def test_preconditions(self, disk, hyperbolic_disk):
        with pytest.raises(PreconditionError):
            psi_pm_construct(domain_from_alpha(2, 2.0), 1.0)
        with pytest.raises(PreconditionError):
            psi_pm_construct(disk, 2.0)
        with pytest.raises(PreconditionError):
            psi_pm_construct(hyperbolic_disk, 2.0)
        with pytest.raises(ValueError):
            psi_pm_construct(domain_from_alpha(2, 2.0), 2.0, sign=0)
