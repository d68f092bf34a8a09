"""Core components: configuration, errors, seeded generators and abstract bases"""

from .base_basis import BaseBoundaryBasis
from .config import DEFAULTS, Config, config_overrides, default_config
from .errors import (
    ConfigError,
    ConventionViolationError,
    DegenerateInputError,
    DimensionMismatchError,
    InvalidDimensionError,
    NumericalInvertibilityError,
    PreconditionError,
    ResolutionMismatchError,
    SerializationError,
    SpinlabError,
    UnsupportedBasisError,
    ZeroLocusError,
)
from .rng import GENERATOR_NAME, make_rng

__all__ = [
    "BaseBoundaryBasis",
    "Config",
    "ConfigError",
    "ConventionViolationError",
    "DEFAULTS",
    "DegenerateInputError",
    "DimensionMismatchError",
    "GENERATOR_NAME",
    "InvalidDimensionError",
    "NumericalInvertibilityError",
    "PreconditionError",
    "ResolutionMismatchError",
    "SerializationError",
    "SpinlabError",
    "UnsupportedBasisError",
    "ZeroLocusError",
    "config_overrides",
    "default_config",
    "make_rng",
]
