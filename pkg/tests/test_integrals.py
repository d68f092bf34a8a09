"""Tests for quadrature and the integrated spinorial identities"""

import numpy as np
import pytest

from src.core.errors import DimensionMismatchError, PreconditionError, UnsupportedBasisError, ZeroLocusError
from src.integrals.energy import energy_momentum, energy_momentum_residual, projection_symmetry_residual
from src.integrals.quadrature import boundary_rule, integrate, interior_rule, sphere_rule
from src.models.domain import make_domain
from src.integrals.reilly import green_residual, hyperbolic_reilly_residual, reilly_convergence, reilly_residual
from src.models.fields import (
    boundary_field,
    imaginary_killing_spinor,
    parallel_spinor,
    random_boundary_field,
    random_polynomial_field,
    restrict_to_boundary,
)


def _relative(report):
    return report.residual / max(1.0, abs(report.lhs_interior), abs(report.rhs_boundary))


class TestQuadrature:
    @pytest.mark.parametrize("fixture", ["disk", "ball", "hyperbolic_disk", "hyperbolic_ball"])
    def test_measures(self, fixture, request):
        domain = request.getfixturevalue(fixture)
        assert interior_rule(domain).measure == pytest.approx(domain.volume, rel=1e-9)
        assert boundary_rule(domain).measure == pytest.approx(domain.boundary_area, rel=1e-12)

    def test_sphere_moments(self):
        rule = sphere_rule(2.0, 8)
        z2 = rule.nodes[:, 2] ** 2
        # int z^2 over the sphere of radius R is 4 pi R^4 / 3
        assert integrate(rule, z2) == pytest.approx(4.0 * np.pi * 16.0 / 3.0)

    def test_misaligned_samples(self, disk):
        rule = boundary_rule(disk)
        with pytest.raises(DimensionMismatchError):
            integrate(rule, np.ones(rule.size + 1))

    def test_unsupported_dimension(self):
        from src.models.domain import make_domain

        with pytest.raises(UnsupportedBasisError):
            interior_rule(make_domain("euclidean-ball", 4, 1.0))


class TestReilly:
    @pytest.mark.parametrize("fixture", ["disk", "ball"])
    def test_parallel_spinor_balances(self, fixture, request):
        domain = request.getfixturevalue(fixture)
        psi0 = np.ones(domain.rep.spinor_dim)
        report = reilly_residual(domain, parallel_spinor(domain, psi0))
        # all interior terms vanish; the boundary Dirac term cancels the mean curvature term
        assert report.lhs_interior == pytest.approx(0.0, abs=1e-12)
        assert _relative(report) < 1e-10
        assert report.terms["boundary_dirac"] == pytest.approx(report.terms["mean_curvature"])

    @pytest.mark.parametrize("fixture", ["disk", "ball"])
    def test_random_fields(self, fixture, request):
        domain = request.getfixturevalue(fixture)
        for stream in range(2):
            field = random_polynomial_field(domain, seed=11, stream=stream)
            report = reilly_residual(domain, field)
            assert _relative(report) < 1e-5
            assert report.terms["gradient"] > 0
            assert abs(green_residual(domain, field)) < 1e-6

    def test_convergence_ratio(self, disk):
        study = reilly_convergence(disk, random_polynomial_field(disk, seed=2))
        assert study["pass"]
        assert study["threshold"] == 4.0
        assert study["min_ratio"] >= 4.0 * (1.0 - study["slack"])
        assert study["residuals"][0] > study["residuals"][1]

    def test_convergence_fails_without_halving(self, disk):
        # a 10% step reduction shrinks second-order errors by about 1.23
        study = reilly_convergence(disk, random_polynomial_field(disk, seed=2), steps=(1e-2, 9e-3))
        assert not study["pass"]
        assert study["min_ratio"] < 2.0

    def test_hyperbolic_domain_rejected(self, hyperbolic_disk):
        field = random_polynomial_field(hyperbolic_disk, seed=0)
        with pytest.raises(PreconditionError):
            reilly_residual(hyperbolic_disk, field)

    def test_boundary_field_rejected(self, disk):
        with pytest.raises(UnsupportedBasisError):
            reilly_residual(disk, random_boundary_field(disk, seed=0))

    @pytest.mark.parametrize("fixture", ["hyperbolic_disk", "hyperbolic_ball"])
    def test_hyperbolic_killing_spinors(self, fixture, request):
        domain = request.getfixturevalue(fixture)
        psi0 = np.zeros(domain.rep.spinor_dim, dtype=complex)
        psi0[-1] = 1.0
        for sign in (1, -1):
            field = imaginary_killing_spinor(domain, sign, psi0)
            report = hyperbolic_reilly_residual(domain, field, sign)
            assert report.terms["twistor"] == pytest.approx(0.0, abs=1e-12)
            assert report.terms["shifted_dirac"] == pytest.approx(0.0, abs=1e-12)
            assert _relative(report) < 1e-4

    @pytest.mark.parametrize("fixture", ["hyperbolic_disk", "hyperbolic_ball"])
    def test_hyperbolic_random_fields(self, fixture, request):
        domain = request.getfixturevalue(fixture)
        field = random_polynomial_field(domain, seed=5)
        for sign in (1, -1):
            assert _relative(hyperbolic_reilly_residual(domain, field, sign)) < 1e-4
        assert abs(green_residual(domain, field)) < 1e-6

    def test_hyperbolic_convergence(self, hyperbolic_disk):
        field = random_polynomial_field(hyperbolic_disk, seed=5)
        for sign in (1, -1):
            study = reilly_convergence(hyperbolic_disk, field, steps=(2e-2, 1e-2), sign=sign)
            assert study["pass"], study


class TestEnergyMomentum:
    @pytest.mark.parametrize("fixture", ["disk", "ball"])
    def test_restricted_parallel_spinor(self, fixture, request):
        domain = request.getfixturevalue(fixture)
        psi0 = np.ones(domain.rep.spinor_dim) * (1 + 1j)
        trace = restrict_to_boundary(parallel_spinor(domain, psi0))
        tensor = energy_momentum(trace)
        assert tensor.shape[1:] == (domain.n - 1, domain.n - 1)
        np.testing.assert_allclose(tensor, np.transpose(tensor, (0, 2, 1)))
        assert energy_momentum_residual(trace) < 1e-8

    @pytest.mark.parametrize("n", [2, 3])
    def test_radius_two(self, n):
        domain = make_domain("euclidean-ball", n, 2.0)
        trace = restrict_to_boundary(parallel_spinor(domain, np.ones(domain.rep.spinor_dim)))
        assert energy_momentum_residual(trace) < 1e-8
        assert energy_momentum_residual(trace, weingarten=0.5) < 1e-8

    def test_zero_locus(self, disk):
        basis_size = restrict_to_boundary(parallel_spinor(disk, np.ones(2))).boundary.size
        with pytest.raises(ZeroLocusError) as info:
            energy_momentum(boundary_field(disk, np.zeros(basis_size)))
        assert len(info.value.nodes) > 0

    def test_projection_symmetry_of_restricted_parallel_spinor(self, disk):
        trace = restrict_to_boundary(parallel_spinor(disk, np.array([1.0, 0.3j])))
        assert projection_symmetry_residual(trace, "mit") < 1e-10
        assert projection_symmetry_residual(trace, "chirality") < 1e-10

    def test_unknown_condition(self, disk):
        trace = restrict_to_boundary(parallel_spinor(disk, np.ones(2)))
        with pytest.raises(ValueError):
            projection_symmetry_residual(trace, "apc")
