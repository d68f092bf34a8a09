"""Exception hierarchy for spinlab"""

from typing import Sequence


class SpinlabError(Exception):
    """Base class for every error raised by spinlab"""


class InvalidDimensionError(SpinlabError, ValueError):
    """Dimension outside the supported range"""


class DimensionMismatchError(SpinlabError, ValueError):
    """Array shapes do not match the representation or basis"""


class DegenerateInputError(SpinlabError, ValueError):
    """Input is zero (or numerically zero) where a nonzero value is required"""


class UnsupportedBasisError(SpinlabError, ValueError):
    """Operation not available for this basis, dimension or domain kind"""


class ResolutionMismatchError(SpinlabError, ValueError):
    """Interior and boundary truncations are incompatible"""


class ConventionViolationError(SpinlabError):
    """A structural property (e.g. Hermiticity) fails beyond tolerance"""


class NumericalInvertibilityError(SpinlabError):
    """A per-mode boundary system that must be invertible is singular"""


class PreconditionError(SpinlabError, ValueError):
    """Hypothesis of an experiment is not met"""


class ZeroLocusError(SpinlabError):
    """Spinor field (nearly) vanishes at some nodes"""

    def __init__(self, message: str, nodes: Sequence[int]):
        super().__init__(message)
        self.nodes = list(nodes)


class ConfigError(SpinlabError, ValueError):
    """Invalid or incomplete experiment configuration"""


class SerializationError(SpinlabError):
    """Field, operator or report cannot be written or read"""
