"""Model domains, boundary geometry, boundary bases and spinor fields"""

from .bases import CollocationS2Basis, FourierS1Basis, boundary_basis, half_integer_labels
from .domain import DomainKind, ModelDomain, domain_from_alpha, make_domain
from .fields import (
    FieldBasis,
    FieldSupport,
    SpinorField,
    boundary_field,
    constant_spinor,
    derived_field,
    imaginary_killing_spinor,
    killing_constant,
    linear_combination,
    monomial_exponents,
    parallel_spinor,
    polynomial_field,
    random_boundary_field,
    random_polynomial_field,
    restrict_to_boundary,
)
from .geometry import ExtrinsicData, boundary_geometry
from .serialization import field_from_json, field_to_json, load_field, save_field

__all__ = [
    "CollocationS2Basis",
    "DomainKind",
    "ExtrinsicData",
    "FieldBasis",
    "FieldSupport",
    "FourierS1Basis",
    "ModelDomain",
    "SpinorField",
    "boundary_basis",
    "boundary_field",
    "boundary_geometry",
    "constant_spinor",
    "derived_field",
    "domain_from_alpha",
    "field_from_json",
    "field_to_json",
    "half_integer_labels",
    "imaginary_killing_spinor",
    "killing_constant",
    "linear_combination",
    "load_field",
    "make_domain",
    "monomial_exponents",
    "parallel_spinor",
    "polynomial_field",
    "random_boundary_field",
    "random_polynomial_field",
    "restrict_to_boundary",
    "save_field",
]
