"""Helper functions for analytics"""

import numpy as np

from .reports import Check


def format_residual(value: float, digits: int = 3) -> str:
    """Format a residual in scientific notation

    Args:
        value: Numeric value
        digits: Digits after the decimal point

    Returns:
        Formatted string
    """
    return f"{value:.{digits}e}"


def format_flag(passed: bool) -> str:
    return "PASS" if passed else "FAIL"


def margin(check: Check) -> float:
    """threshold / |value|: how far below its threshold a check sits (inf for an exact zero)"""
    value = abs(check.value)
    if value == 0.0:
        return np.inf
    return check.threshold / value


def convergence_order(coarse: float, fine: float, refinement: float = 2.0) -> float:
    """Observed order log(coarse / fine) / log(refinement); nan when either residual vanishes"""
    if coarse <= 0.0 or fine <= 0.0:
        return float("nan")
    return float(np.log(coarse / fine) / np.log(refinement))
