"""Clifford algebra representations and Clifford multiplication"""

from .rep import (
    CONVENTION,
    CliffordRep,
    build_clifford_rep,
    check_rep,
    clifford_mul,
    commutator_defect,
    tangential_clifford,
)

__all__ = [
    "CONVENTION",
    "CliffordRep",
    "build_clifford_rep",
    "check_rep",
    "clifford_mul",
    "commutator_defect",
    "tangential_clifford",
]
