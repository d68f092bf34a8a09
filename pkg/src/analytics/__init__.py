"""Verification reports: emission, analysis and comparison"""

from .analyzer import ReportAnalyzer
from .comparator import ResolutionComparator
from .reports import (
    CSV_COLUMNS,
    VERSION,
    Check,
    ReportGenerator,
    VerificationReport,
)
from .utils import convergence_order, format_flag, format_residual, margin

__all__ = [
    "CSV_COLUMNS",
    "Check",
    "ReportAnalyzer",
    "ReportGenerator",
    "ResolutionComparator",
    "VERSION",
    "VerificationReport",
    "convergence_order",
    "format_flag",
    "format_residual",
    "margin",
]
