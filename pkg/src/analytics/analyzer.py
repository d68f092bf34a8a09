"""Report analysis: margins, worst checks and the console summary"""

import sys
from typing import Any, Dict, List, Optional, TextIO

import numpy as np

from .reports import Check, VerificationReport
from .utils import format_flag, format_residual, margin


class ReportAnalyzer:
    """Analyze a verification report and generate insights"""

    def __init__(self, report: VerificationReport):
        """Initialize analyzer

        Args:
            report: Report of one suite run
        """
        self.report = report

    def analyze(self) -> Dict[str, Any]:
        """Perform the analysis

        Returns:
            Dictionary with counts, the tightest check and insights
        """
        checks = self.report.checks
        tightest = self.tightest()
        return {
            "suite": self.report.suite,
            "total": len(checks),
            "failed": [c.name for c in self.report.failures()],
            "tightest": None if tightest is None else tightest.name,
            "tightest_margin": None if tightest is None else margin(tightest),
            "insights": self.insights(),
        }

    def tightest(self) -> Optional[Check]:
        """Passing threshold check whose value is closest to its threshold"""
        candidates = [c for c in self.report.checks if c.passed and c.threshold > 0]
        if not candidates:
            return None
        return min(candidates, key=margin)

    def insights(self) -> List[str]:
        insights = []
        failures = self.report.failures()
        if not self.report.checks:
            insights.append("No checks were recorded")
        elif failures:
            worst = max(failures, key=lambda c: abs(c.value) / c.threshold if c.threshold > 0 else np.inf)
            insights.append(f"{len(failures)} check(s) failed, worst: {worst.name} = {format_residual(worst.value)}")
        else:
            insights.append(f"All {len(self.report.checks)} checks passed")
        tightest = self.tightest()
        if tightest is not None and margin(tightest) < 10.0:
            insights.append(
                f"{tightest.name} passes within a factor {margin(tightest):.1f} of its threshold"
            )
        controls = [c for c in self.report.checks if c.name.endswith("negative_control")]
        for c in controls:
            if not c.passed:
                insights.append(f"{c.name} was not detected; the pipeline may pass vacuously")
        return insights

    def get_summary_dict(self) -> Dict[str, Any]:
        r = self.report
        return {
            "suite": r.suite,
            "params": {k: v for k, v in r.params.items() if not isinstance(v, (dict, list))},
            "checks": {c.name: f"{format_residual(c.value)}  < {c.threshold:.1e}  {format_flag(c.passed)}" for c in r.checks},
            "insights": self.insights(),
        }

    def print_summary(self, stream: TextIO = sys.stderr):
        """Print formatted summary to stderr"""
        summary = self.get_summary_dict()

        def out(line: str = ""):
            print(line, file=stream)

        out("\n" + "=" * 80)
        out(f"                    {summary['suite'].upper()}")
        out("=" * 80)
        if summary["params"]:
            out("Parameters:")
            out("-" * 40)
            for key, value in summary["params"].items():
                out(f"  {key:20s}: {value}")
            out()

        out("Checks:")
        out("-" * 40)
        for key, value in summary["checks"].items():
            out(f"  {key:32s}: {value}")
        out()

        out("Key Insights:")
        out("-" * 40)
        for insight in summary["insights"]:
            out(f"  • {insight}")

        out("=" * 80)
        out(f"Overall: {format_flag(self.report.passed)}")
