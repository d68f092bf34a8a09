"""Verification suites, their registry and the engine that runs them"""

from . import algebra, integral, meta, rigidity, spectral  # noqa: F401  (register suites)
from .engine import SuiteEngine, run
from .experiment import ExperimentConfig
from .registry import get_suite, list_suites, suite_names

__all__ = [
    "ExperimentConfig",
    "SuiteEngine",
    "get_suite",
    "list_suites",
    "run",
    "suite_names",
]
