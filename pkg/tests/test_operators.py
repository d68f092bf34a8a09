"""Tests for boundary operators, pointwise ambient operators and the spectrum solver"""

import numpy as np
import pytest

from src.core.errors import ConventionViolationError, PreconditionError, SerializationError, UnsupportedBasisError
from src.models.domain import make_domain
from src.models.fields import (
    constant_spinor,
    imaginary_killing_spinor,
    killing_constant,
    parallel_spinor,
    random_polynomial_field,
    restrict_to_boundary,
)
from src.operators.boundary import (
    assemble_extrinsic_dirac,
    assemble_twisted_dirac,
    chirality_operator,
    chirality_projection,
    mit_projection,
    normal_clifford,
)
from src.operators.intrinsic import boundary_dirac_values, extrinsic_killing_residual, gauss_formula_residual
from src.operators.matrix import OperatorKind, OperatorMatrix, export_operator, load_operator, operator_metadata
from src.operators.pointwise import (
    ambient_dirac,
    covariant_derivative,
    dirac_boundary_relation_residual,
    extrinsic_dirac_pointwise,
    killing_residual,
    lichnerowicz_residual,
    twistor_energy_density,
    twistor_operator,
)
from src.solve.spectrum import spectrum


def _identity_defect(op):
    return (op - OperatorMatrix.identity(op.basis)).norm()


class TestBoundaryOperators:
    @pytest.mark.parametrize("fixture", ["disk", "ball", "hyperbolic_disk", "hyperbolic_ball"])
    def test_dirac_is_hermitian_and_anticommutes_with_normal(self, fixture, request):
        domain = request.getfixturevalue(fixture)
        dirac = assemble_extrinsic_dirac(domain)
        g_nu = normal_clifford(domain, basis=dirac.basis)
        assert dirac.kind is OperatorKind.EXTRINSIC_DIRAC
        assert dirac.hermitian_defect() < 1e-10 * dirac.norm()
        assert (g_nu @ g_nu + OperatorMatrix.identity(dirac.basis)).norm() < 1e-13
        assert (dirac @ g_nu + g_nu @ dirac).norm() < 1e-10 * dirac.norm()

    @pytest.mark.parametrize("fixture", ["disk", "ball"])
    def test_mit_projection_algebra(self, fixture, request):
        domain = request.getfixturevalue(fixture)
        dirac = assemble_extrinsic_dirac(domain)
        plus = mit_projection(domain, 1, basis=dirac.basis)
        minus = mit_projection(domain, -1, basis=dirac.basis)
        assert (plus @ plus - plus).norm() < 1e-13
        assert (plus @ minus).norm() < 1e-13
        assert _identity_defect(plus + minus) < 1e-13
        # D P+ = P- D
        assert ((dirac @ plus) - (minus @ dirac)).norm() < 1e-10 * dirac.norm()

    def test_chirality_projection_algebra(self, hyperbolic_disk):
        twisted = assemble_twisted_dirac(hyperbolic_disk, 1)
        plus = chirality_projection(hyperbolic_disk, 1, basis=twisted.basis)
        minus = chirality_projection(hyperbolic_disk, -1, basis=twisted.basis)
        assert (plus @ plus - plus).norm() < 1e-13
        assert _identity_defect(plus + minus) < 1e-13
        assert ((twisted @ plus) - (minus @ twisted)).norm() < 1e-10 * twisted.norm()

    def test_chirality_requires_even_dimension(self, ball):
        with pytest.raises(UnsupportedBasisError):
            chirality_projection(ball, 1)
        with pytest.raises(UnsupportedBasisError):
            chirality_operator(ball)

    @pytest.mark.parametrize("fixture", ["hyperbolic_disk", "hyperbolic_ball"])
    def test_twisted_square(self, fixture, request):
        domain = request.getfixturevalue(fixture)
        dirac = assemble_extrinsic_dirac(domain)
        c = 0.5 * (domain.n - 1)
        for sign in (1, -1):
            twisted = assemble_twisted_dirac(domain, sign, basis=dirac.basis)
            assert twisted.hermitian_defect() < 1e-10 * twisted.norm()
            square = twisted @ twisted - dirac @ dirac - OperatorMatrix.identity(dirac.basis) * (c * c)
            assert square.norm() < 1e-10 * dirac.norm() ** 2

    def test_bad_sign(self, disk):
        with pytest.raises(ValueError):
            mit_projection(disk, 0)


class TestSpectrum:
    def test_circle_spectrum(self):
        domain = make_domain("euclidean-ball", 2, 2.0)
        result = spectrum(assemble_extrinsic_dirac(domain))
        assert result.smallest_positive == pytest.approx(0.25, abs=1e-12)
        assert result.multiplicity(0.25) == 2
        assert result.symmetry_defect() < 1e-12
        positive = np.sort(result.trusted()[result.trusted() > 0])
        np.testing.assert_allclose(positive[:4], [0.25, 0.25, 0.75, 0.75], atol=1e-12)

    def test_sphere_spectrum(self, ball):
        result = spectrum(assemble_extrinsic_dirac(ball))
        magnitudes = np.sort(np.abs(result.trusted()))
        np.testing.assert_allclose(magnitudes[:4], 1.0, atol=1e-6)
        assert magnitudes[4] == pytest.approx(2.0, abs=1e-6)
        # +(k+1) has multiplicity 2(k+1)
        assert result.multiplicity(1.0, tol=1e-6) == 2
        assert result.multiplicity(2.0, tol=1e-6) == 4
        assert result.multiplicity(-3.0, tol=1e-6) == 6
        assert result.residual < 1e-9

    def test_hyperbolic_first_eigenvalue(self, hyperbolic_ball):
        result = spectrum(assemble_twisted_dirac(hyperbolic_ball, 1))
        assert result.smallest_positive == pytest.approx(1.0 / np.tanh(1.0), abs=1e-6)

    def test_eigenfields(self, disk):
        result = spectrum(assemble_extrinsic_dirac(disk), k=4, domain=disk)
        assert result.eigenvalues.size == 4
        assert len(result.eigenfields) == 4
        assert all(f.is_boundary for f in result.eigenfields)

    def test_non_hermitian_operator_rejected(self, disk):
        dirac = assemble_extrinsic_dirac(disk)
        skew = dirac * 1j
        with pytest.raises(ConventionViolationError):
            spectrum(skew)


class TestExport:
    @pytest.mark.parametrize("fmt", ["text", "binary"])
    def test_export_and_load(self, disk, tmp_path, fmt):
        dirac = assemble_extrinsic_dirac(disk, truncation=6)
        path = export_operator(dirac, tmp_path / f"dirac.{fmt}", fmt=fmt)
        np.testing.assert_allclose(load_operator(path, fmt=fmt), dirac.dense())

    def test_text_header(self, disk, tmp_path):
        path = export_operator(mit_projection(disk, 1, truncation=4), tmp_path / "mit.txt")
        meta = operator_metadata(path)
        assert meta["kind"] == "mit-projection"
        assert meta["N"] == 8

    def test_unknown_format(self, disk, tmp_path):
        with pytest.raises(SerializationError):
            export_operator(assemble_extrinsic_dirac(disk, truncation=4), tmp_path / "x", fmt="hdf5")


class TestPointwise:
    def test_parallel_spinor_is_harmonic(self, disk, psi0):
        field = parallel_spinor(disk, psi0)
        x = disk.interior_samples(10)
        assert np.max(np.abs(ambient_dirac(disk, field).evaluate(x))) == 0.0
        assert np.max(twistor_energy_density(field, x)) == 0.0

    @pytest.mark.parametrize("fixture", ["hyperbolic_disk", "hyperbolic_ball"])
    def test_killing_spinors(self, fixture, request):
        domain = request.getfixturevalue(fixture)
        psi0 = np.zeros(domain.rep.spinor_dim, dtype=complex)
        psi0[0] = 1.0
        x = domain.interior_samples(20, seed=1)
        for sign in (1, -1):
            field = imaginary_killing_spinor(domain, sign, psi0)
            assert killing_residual(field, killing_constant(sign), x) < 1e-12
            assert killing_residual(field, killing_constant(sign), x, method="fd") < 1e-6
            shifted = ambient_dirac(domain, field, sign=sign).evaluate(x)
            assert np.max(np.abs(shifted)) < 1e-12
            assert np.max(twistor_energy_density(field, x)) < 1e-20

    def test_shift_needs_hyperbolic_domain(self, disk, psi0):
        with pytest.raises(PreconditionError):
            ambient_dirac(disk, constant_spinor(disk, psi0), sign=1)

    def test_covariant_derivative_of_polynomial(self, disk):
        field = random_polynomial_field(disk, seed=1, degree=1)
        x = disk.interior_samples(3)
        derivative = covariant_derivative(disk, field, np.array([1.0, 0.0])).evaluate(x)
        np.testing.assert_allclose(derivative, field.jacobian(x)[:, 0, :])

    @pytest.mark.parametrize("sign", [1, -1])
    def test_twistor_annihilates_killing_spinors(self, hyperbolic_disk, psi0, sign):
        field = imaginary_killing_spinor(hyperbolic_disk, sign, psi0)
        x = hyperbolic_disk.interior_samples(5)
        twistor = twistor_operator(hyperbolic_disk, field, np.array([0.6, 0.8])).evaluate(x)
        np.testing.assert_allclose(twistor, 0.0, atol=1e-12)
        derivative = covariant_derivative(hyperbolic_disk, field, np.array([0.6, 0.8])).evaluate(x)
        assert np.abs(derivative).max() > 1e-3

    @pytest.mark.parametrize("fixture", ["disk", "ball", "hyperbolic_disk", "hyperbolic_ball"])
    def test_boundary_dirac_relation(self, fixture, request):
        domain = request.getfixturevalue(fixture)
        field = random_polynomial_field(domain, seed=6)
        assert dirac_boundary_relation_residual(field) < 1e-6

    @pytest.mark.parametrize("fixture", ["disk", "ball"])
    def test_lichnerowicz(self, fixture, request):
        domain = request.getfixturevalue(fixture)
        assert lichnerowicz_residual(random_polynomial_field(domain, seed=7)) < 1e-5

    @pytest.mark.parametrize("fixture", ["ball", "disk", "hyperbolic_disk"])
    def test_pointwise_extrinsic_dirac_matches_galerkin(self, fixture, request):
        domain = request.getfixturevalue(fixture)
        field = random_polynomial_field(domain, seed=5, degree=2)
        trace = restrict_to_boundary(field)
        dirac = assemble_extrinsic_dirac(domain, basis=trace.boundary)
        image = trace.with_coefficients(dirac.apply(trace.coefficients))
        y = domain.boundary_samples(12, seed=3)
        np.testing.assert_allclose(extrinsic_dirac_pointwise(field, y), image.evaluate(y), atol=1e-6)


class TestIntrinsic:
    @pytest.mark.parametrize("fixture", ["disk", "ball"])
    def test_restricted_parallel_spinor_is_killing(self, fixture, request):
        domain = request.getfixturevalue(fixture)
        psi0 = np.ones(domain.rep.spinor_dim) / np.sqrt(domain.rep.spinor_dim)
        trace = restrict_to_boundary(parallel_spinor(domain, psi0))
        assert extrinsic_killing_residual(trace) < 1e-8
        # Killing spinors with constant 1/(2R) are eigenspinors of the boundary Dirac operator
        expected = 0.5 * (domain.n - 1) / domain.induced_radius
        values = trace.intrinsic_values()
        np.testing.assert_allclose(boundary_dirac_values(trace), expected * values, atol=1e-8)

    @pytest.mark.parametrize("fixture", ["disk", "ball", "hyperbolic_disk"])
    def test_gauss_formula(self, fixture, request):
        domain = request.getfixturevalue(fixture)
        assert gauss_formula_residual(random_polynomial_field(domain, seed=9), samples=24) < 1e-6

    def test_gauss_formula_needs_interior_field(self, disk, psi0):
        trace = restrict_to_boundary(constant_spinor(disk, psi0))
        with pytest.raises(UnsupportedBasisError):
            gauss_formula_residual(trace)
