"""Eigensolves, harmonic extension and the rigidity experiments"""

from .extension import BoundaryCondition, ModeSeries, extend_harmonic, mode_series, shift_sign
from .hyperbolic import HMRReport, hmr_bound_check, hmr_sweep, psi_pm_construct
from .identities import (
    commutation_defect,
    extension_linearity_residual,
    integration_by_parts_residual,
    intertwining_residual,
    projected_eigen_residual,
    scalar_multiply,
    splitting_residual,
)
from .rigidity import RigidityReport, hyperbolic_rigidity_experiment, rigidity_experiment
from .spectrum import SpectrumResult, spectrum

__all__ = [
    "BoundaryCondition",
    "HMRReport",
    "ModeSeries",
    "RigidityReport",
    "SpectrumResult",
    "commutation_defect",
    "extend_harmonic",
    "extension_linearity_residual",
    "hmr_bound_check",
    "hmr_sweep",
    "hyperbolic_rigidity_experiment",
    "integration_by_parts_residual",
    "intertwining_residual",
    "mode_series",
    "projected_eigen_residual",
    "psi_pm_construct",
    "rigidity_experiment",
    "scalar_multiply",
    "shift_sign",
    "spectrum",
    "splitting_residual",
]
