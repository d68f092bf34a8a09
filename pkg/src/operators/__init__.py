"""Ambient, extrinsic and intrinsic Dirac-type operators"""

from .boundary import (
    assemble_extrinsic_dirac,
    assemble_twisted_dirac,
    chirality_operator,
    chirality_projection,
    mit_projection,
    normal_clifford,
    resolve_basis,
)
from .intrinsic import (
    boundary_covariant_derivative,
    boundary_covariant_values,
    boundary_dirac_values,
    extrinsic_killing_residual,
    gauss_formula_residual,
)
from .matrix import OperatorKind, OperatorMatrix, export_operator, load_operator, operator_metadata
from .pointwise import (
    ambient_dirac,
    covariant_derivative,
    covariant_values,
    dirac_boundary_relation_residual,
    dirac_values,
    extrinsic_dirac_pointwise,
    frame_derivatives,
    killing_residual,
    lichnerowicz_residual,
    normal_derivative,
    rough_laplacian,
    tangent_bases,
    twistor_energy_density,
    twistor_operator,
    twistor_values,
)

__all__ = [
    "OperatorKind",
    "OperatorMatrix",
    "ambient_dirac",
    "assemble_extrinsic_dirac",
    "assemble_twisted_dirac",
    "boundary_covariant_derivative",
    "boundary_covariant_values",
    "boundary_dirac_values",
    "chirality_operator",
    "chirality_projection",
    "covariant_derivative",
    "covariant_values",
    "dirac_boundary_relation_residual",
    "dirac_values",
    "export_operator",
    "extrinsic_dirac_pointwise",
    "extrinsic_killing_residual",
    "frame_derivatives",
    "gauss_formula_residual",
    "killing_residual",
    "lichnerowicz_residual",
    "load_operator",
    "mit_projection",
    "normal_clifford",
    "normal_derivative",
    "operator_metadata",
    "resolve_basis",
    "rough_laplacian",
    "tangent_bases",
    "twistor_energy_density",
    "twistor_operator",
    "twistor_values",
]
