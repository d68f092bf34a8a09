"""Tests for model domains, boundary bases, spinor fields and field serialization"""

import numpy as np
import pytest

from src.core.errors import (
    DegenerateInputError,
    DimensionMismatchError,
    InvalidDimensionError,
    PreconditionError,
    ResolutionMismatchError,
    SerializationError,
    UnsupportedBasisError,
)
from src.models.bases import CollocationS2Basis, FourierS1Basis, boundary_basis, half_integer_labels
from src.models.domain import DomainKind, domain_from_alpha, make_domain
from src.models.fields import (
    constant_spinor,
    imaginary_killing_spinor,
    killing_constant,
    monomial_exponents,
    parallel_spinor,
    polynomial_field,
    random_boundary_field,
    random_polynomial_field,
    restrict_to_boundary,
)
from src.models.geometry import boundary_geometry
from src.models.serialization import field_from_json, field_to_json, load_field, save_field


class TestDomain:
    def test_euclidean_quantities(self, disk, ball):
        assert disk.mean_curvature == pytest.approx(1.0)
        assert disk.induced_radius == pytest.approx(1.0)
        assert disk.volume == pytest.approx(np.pi)
        assert ball.volume == pytest.approx(4.0 * np.pi / 3.0)
        assert ball.boundary_area == pytest.approx(4.0 * np.pi)
        assert ball.scalar_curvature == 0.0

    def test_hyperbolic_quantities(self, hyperbolic_disk, hyperbolic_ball):
        rho = 1.0
        assert hyperbolic_disk.euclidean_radius == pytest.approx(np.tanh(rho / 2))
        assert hyperbolic_disk.mean_curvature == pytest.approx(1.0 / np.tanh(rho))
        assert hyperbolic_disk.induced_radius == pytest.approx(np.sinh(rho))
        assert hyperbolic_disk.volume == pytest.approx(2.0 * np.pi * (np.cosh(rho) - 1.0))
        assert hyperbolic_ball.scalar_curvature == pytest.approx(-6.0)
        assert hyperbolic_ball.shifted_scalar_curvature == pytest.approx(0.0)
        assert hyperbolic_ball.volume == pytest.approx(np.pi * (np.sinh(2 * rho) - 2 * rho))

    def test_inward_normal(self, hyperbolic_disk):
        x = hyperbolic_disk.boundary_samples(8)
        nu = hyperbolic_disk.inward_normal(x)
        np.testing.assert_allclose(np.linalg.norm(nu, axis=-1), 1.0)
        np.testing.assert_allclose(np.sum(nu * x, axis=-1), -np.linalg.norm(x, axis=-1))

    def test_conformal_factor_at_origin(self, hyperbolic_ball):
        assert hyperbolic_ball.conformal_factor(np.zeros((1, 3)))[0] == pytest.approx(2.0)

    def test_domain_from_alpha(self):
        domain = domain_from_alpha(2, 2.0)
        assert domain.kind is DomainKind.HYPERBOLIC
        assert domain.mean_curvature == pytest.approx(2.0)
        assert domain.induced_radius == pytest.approx(1.0 / np.sqrt(3.0))
        with pytest.raises(PreconditionError):
            domain_from_alpha(2, 1.0)

    def test_invalid_parameters(self):
        with pytest.raises(InvalidDimensionError):
            make_domain("euclidean-ball", 1, 1.0)
        with pytest.raises(PreconditionError):
            make_domain("euclidean-ball", 2, 0.0)
        with pytest.raises(ValueError):
            make_domain("spherical-cap", 2, 1.0)

    def test_interior_samples_are_seeded(self, ball):
        a = ball.interior_samples(10, seed=3)
        np.testing.assert_array_equal(a, ball.interior_samples(10, seed=3))
        assert np.all(np.linalg.norm(a, axis=-1) < ball.euclidean_radius)


class TestBases:
    def test_half_integer_labels(self):
        np.testing.assert_array_equal(half_integer_labels(4), [-1.5, -0.5, 0.5, 1.5])

    def test_default_basis(self, disk, ball):
        assert isinstance(boundary_basis(disk), FourierS1Basis)
        assert isinstance(boundary_basis(ball), CollocationS2Basis)
        with pytest.raises(UnsupportedBasisError):
            boundary_basis(make_domain("euclidean-ball", 4, 1.0))

    def test_equivalent_bases_compare_equal(self, disk, ball):
        assert boundary_basis(disk).same_as(boundary_basis(disk))
        assert boundary_basis(ball).same_as(boundary_basis(ball))
        assert not FourierS1Basis(12, 1.0).same_as(FourierS1Basis(16, 1.0))
        assert not FourierS1Basis(12, 1.0).same_as(FourierS1Basis(12, 2.0))
        assert not FourierS1Basis(12, 1.0).same_as(FourierS1Basis(12, 1.0, nodes=36))
        assert not CollocationS2Basis(12, 1.0).same_as(CollocationS2Basis(12, 1.0, phi_nodes=36))

    def test_odd_resolution_rejected(self):
        with pytest.raises(ValueError):
            FourierS1Basis(15, 1.0)

    @pytest.mark.parametrize("basis", [FourierS1Basis(12, 2.0), CollocationS2Basis(12, 2.0)])
    def test_analyze_inverts_synthesize(self, basis):
        rng = np.random.default_rng(0)
        coeffs = rng.standard_normal(basis.size) + 1j * rng.standard_normal(basis.size)
        np.testing.assert_allclose(basis.analyze(basis.synthesize(coeffs)), coeffs, atol=1e-11)

    def test_parseval(self):
        basis = CollocationS2Basis(12, 1.5)
        rng = np.random.default_rng(1)
        coeffs = rng.standard_normal(basis.size) + 1j * rng.standard_normal(basis.size)
        values = basis.synthesize(coeffs)
        quadrature = np.sum(basis.node_weights() * np.sum(np.abs(values) ** 2, axis=-1))
        assert basis.norm(coeffs) ** 2 == pytest.approx(quadrature, rel=1e-10)


class TestFields:
    def test_constant_spinor(self, disk, psi0):
        field = constant_spinor(disk, psi0)
        x = disk.interior_samples(5)
        np.testing.assert_allclose(field.evaluate(x), np.tile(psi0, (5, 1)))
        assert np.all(field.jacobian(x) == 0)

    def test_parallel_spinor_needs_flat_domain(self, hyperbolic_disk, psi0):
        with pytest.raises(PreconditionError):
            parallel_spinor(hyperbolic_disk, psi0)

    def test_degenerate_and_mismatched_spinors(self, disk):
        with pytest.raises(DegenerateInputError):
            constant_spinor(disk, np.zeros(2))
        with pytest.raises(DimensionMismatchError):
            constant_spinor(disk, np.ones(3))

    def test_killing_spinor_closed_form(self, hyperbolic_disk, psi0):
        assert killing_constant(1) == -0.5j
        assert killing_constant(-1) == 0.5j
        field = imaginary_killing_spinor(hyperbolic_disk, 1, psi0)
        np.testing.assert_allclose(field.evaluate(np.zeros((1, 2)))[0], np.sqrt(2.0) * psi0)
        with pytest.raises(PreconditionError):
            imaginary_killing_spinor(make_domain("euclidean-ball", 2, 1.0), 1, psi0)

    def test_exact_jacobian_matches_differences(self, ball):
        field = random_polynomial_field(ball, seed=4)
        x = ball.interior_samples(6, seed=1)
        np.testing.assert_allclose(field.jacobian(x), field.jacobian(x, method="fd", h=1e-5), atol=1e-8)

    def test_killing_jacobian_matches_differences(self, hyperbolic_ball):
        field = imaginary_killing_spinor(hyperbolic_ball, -1, np.array([1.0, 1j]))
        x = hyperbolic_ball.interior_samples(6, seed=2)
        np.testing.assert_allclose(field.jacobian(x), field.jacobian(x, method="fd", h=1e-5), atol=1e-7)

    def test_polynomial_shape_check(self, disk):
        terms = len(monomial_exponents(2, 2))
        assert terms == 6
        with pytest.raises(DimensionMismatchError):
            polynomial_field(disk, np.zeros((terms + 1, 2)), 2)

    def test_linear_structure(self, disk, psi0):
        a = constant_spinor(disk, psi0)
        b = random_polynomial_field(disk, seed=0)
        x = disk.interior_samples(4)
        np.testing.assert_allclose((2.0 * a - b).evaluate(x), 2.0 * a.evaluate(x) - b.evaluate(x))

    def test_boundary_fields_from_separate_constructions_combine(self, disk, psi0):
        trace = restrict_to_boundary(parallel_spinor(disk, psi0))
        noise = random_boundary_field(disk, seed=3)
        assert trace.boundary is not noise.boundary
        combined = (2.0 * trace - noise).coefficients
        np.testing.assert_allclose(combined, 2.0 * trace.coefficients - noise.coefficients)
        other = random_boundary_field(disk, seed=3, basis=FourierS1Basis(24, 1.0))
        with pytest.raises(DimensionMismatchError):
            trace - other

    @pytest.mark.parametrize("fixture", ["disk", "ball", "hyperbolic_disk", "hyperbolic_ball"])
    def test_restriction_matches_pointwise_values(self, fixture, request):
        domain = request.getfixturevalue(fixture)
        field = random_polynomial_field(domain, seed=2, degree=2)
        trace = restrict_to_boundary(field)
        assert trace.is_boundary
        y = domain.boundary_samples(10, seed=5)
        np.testing.assert_allclose(trace.evaluate(y), field.evaluate(y), atol=1e-10)

    @pytest.mark.parametrize("fixture", ["disk", "ball"])
    def test_cartesian_values_of_constant_trace(self, fixture, request, psi0):
        domain = request.getfixturevalue(fixture)
        trace = restrict_to_boundary(constant_spinor(domain, psi0))
        values = trace.cartesian_values()
        np.testing.assert_allclose(values, np.tile(psi0, (values.shape[0], 1)), atol=1e-12)

    def test_restriction_rejects_high_degree(self, disk):
        field = random_polynomial_field(disk, seed=0, degree=9)
        with pytest.raises(ResolutionMismatchError):
            restrict_to_boundary(field)

    def test_random_boundary_field_seeded(self, ball):
        a = random_boundary_field(ball, seed=8)
        b = random_boundary_field(ball, seed=8)
        np.testing.assert_array_equal(a.coefficients, b.coefficients)
        assert a.norm() > 0


class TestGeometry:
    @pytest.mark.parametrize("fixture", ["disk", "ball", "hyperbolic_disk", "hyperbolic_ball"])
    def test_umbilic_boundary(self, fixture, request):
        domain = request.getfixturevalue(fixture)
        data = boundary_geometry(domain, samples=20)
        assert data.H == pytest.approx(domain.mean_curvature)
        for key, value in data.residuals().items():
            assert value < 1e-6, key
        x = domain.boundary_samples(5, seed=1)
        np.testing.assert_allclose(data.mean_curvature(x), domain.mean_curvature)


class TestSerialization:
    def test_boundary_field_json(self, ball):
        field = random_boundary_field(ball, seed=3)
        loaded = field_from_json(field_to_json(field))
        np.testing.assert_array_equal(loaded.coefficients, field.coefficients)
        assert loaded.boundary.name == field.boundary.name
        assert loaded.domain.n == 3

    def test_binary_file(self, hyperbolic_disk, psi0, tmp_path):
        field = imaginary_killing_spinor(hyperbolic_disk, -1, psi0)
        path = save_field(field, tmp_path / "killing.bin", fmt="binary")
        loaded = load_field(path)
        x = hyperbolic_disk.interior_samples(3)
        np.testing.assert_allclose(loaded.evaluate(x), field.evaluate(x))

    def test_derived_fields_are_rejected(self, disk, psi0):
        from src.operators.pointwise import ambient_dirac

        with pytest.raises(SerializationError):
            field_to_json(ambient_dirac(disk, constant_spinor(disk, psi0)))

    def test_garbage_input(self, tmp_path):
        with pytest.raises(SerializationError):
            field_from_json("{not json")
        path = tmp_path / "bad.json"
        path.write_text('{"format": "other", "shape": [0]}')
        with pytest.raises(SerializationError):
            load_field(path)
