"""Side-by-side comparison of reports across resolutions or parameters"""

import sys
from typing import Dict, List, Optional, TextIO

import numpy as np
import pandas as pd

from .reports import VerificationReport
from .utils import convergence_order


class ResolutionComparator:
    """Compare check values of several runs of the same suite"""

    def __init__(self):
        self.reports: Dict[str, VerificationReport] = {}

    def add_result(self, name: str, report: VerificationReport):
        """Add a run for comparison

        Args:
            name: Run label (e.g. "modes=32")
            report: Report of the run
        """
        self.reports[name] = report

    def compare(self, checks: Optional[List[str]] = None) -> pd.DataFrame:
        """Check values per run, one row per run and one column per check

        Args:
            checks: Check names to compare (default: every check of every run)

        Returns:
            Comparison DataFrame (NaN where a run lacks a check)
        """
        if not self.reports:
            return pd.DataFrame()
        data = {name: {c.name: c.value for c in r.checks} for name, r in self.reports.items()}
        frame = pd.DataFrame.from_dict(data, orient="index")
        if checks is not None:
            frame = frame.reindex(columns=checks)
        return frame

    def ratios(self, coarse: str, fine: str) -> pd.Series:
        """coarse / fine value per check; about 4 for a second-order scheme halving its step"""
        frame = self.compare()
        a = frame.loc[coarse].astype(float)
        b = frame.loc[fine].astype(float)
        with np.errstate(divide="ignore", invalid="ignore"):
            return (a.abs() / b.abs()).rename("ratio")

    def orders(self, coarse: str, fine: str, refinement: float = 2.0) -> pd.Series:
        frame = self.compare()
        values = {
            check: convergence_order(abs(float(frame.at[coarse, check])), abs(float(frame.at[fine, check])), refinement)
            for check in frame.columns
        }
        return pd.Series(values, name="order")

    def rank(self, by: str, ascending: bool = True) -> pd.DataFrame:
        """Runs sorted by one check value"""
        comparison = self.compare(checks=[by])
        if comparison.empty:
            return comparison
        return comparison.sort_values(by=by, ascending=ascending)

    def print_comparison(self, checks: Optional[List[str]] = None, stream: TextIO = sys.stderr):
        frame = self.compare(checks)
        print("\n" + "=" * 80, file=stream)
        print("RESOLUTION COMPARISON", file=stream)
        print("=" * 80, file=stream)
        print(frame.to_string(float_format=lambda v: f"{v:.3e}"), file=stream)
        print("=" * 80, file=stream)
