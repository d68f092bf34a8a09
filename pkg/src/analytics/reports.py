"""Verification reports and their JSON, CSV and spectrum-dump formats"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

import numpy as np
import pandas as pd

from ..core.errors import SerializationError

logger = logging.getLogger(__name__)

VERSION = "0.1.0"
CSV_COLUMNS = ["check", "value", "threshold", "pass"]


def _plain(value: Any) -> Any:
    """Convert numpy scalars/arrays and tuples to JSON-native values; non-finite floats become null"""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if np.isfinite(value) else None
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    return value


def _number(value: Any) -> float:
    return float("nan") if value is None else float(value)


@dataclass
class Check:
    """One named residual against its threshold"""

    name: str
    value: float
    threshold: float
    passed: bool

    @classmethod
    def below(cls, name: str, value: float, threshold: float) -> "Check":
        """Passes iff |value| < threshold"""
        value = float(value)
        return cls(name, value, float(threshold), bool(np.isfinite(value) and abs(value) < threshold))

    @classmethod
    def flag(cls, name: str, value: float, passed: bool, threshold: float = 0.0) -> "Check":
        return cls(name, float(value), float(threshold), bool(passed))

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "value": self.value, "threshold": self.threshold, "pass": self.passed}


@dataclass
class VerificationReport:
    """Residuals, eigenvalues and pass flags of one suite run

    The overall pass is the conjunction of the check passes; a report without checks
    does not pass.
    """

    suite: str
    params: Dict[str, Any] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)
    eigenvalues: Optional[List[float]] = None
    seed: int = 0
    version: str = VERSION
    wall_time_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def below(self, name: str, value: float, threshold: float) -> Check:
        return self.add(Check.below(name, value, threshold))

    def add_rows(self, rows: Iterable[Dict[str, Any]], prefix: str = "") -> None:
        """Append {check, value, threshold, pass} rows such as RigidityReport.rows()"""
        for row in rows:
            self.add(Check(prefix + row["check"], float(row["value"]), float(row["threshold"]), bool(row["pass"])))

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "params": _plain(self.params),
            "checks": [_plain(c.to_dict()) for c in self.checks],
            "eigenvalues": None if self.eigenvalues is None else _plain(list(self.eigenvalues)),
            "seed": int(self.seed),
            "version": self.version,
            "wall_time_ms": float(self.wall_time_ms),
            "pass": self.passed,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerificationReport":
        try:
            checks = [
                Check(c["name"], _number(c["value"]), _number(c["threshold"]), c["pass"]) for c in data["checks"]
            ]
            return cls(
                suite=data["suite"],
                params=data.get("params", {}),
                checks=checks,
                eigenvalues=data.get("eigenvalues"),
                seed=data.get("seed", 0),
                version=data.get("version", VERSION),
                wall_time_ms=data.get("wall_time_ms", 0.0),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise SerializationError(f"Malformed report: {e}") from e

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_frame(self) -> pd.DataFrame:
        rows = [[c.name, c.value, c.threshold, c.passed] for c in self.checks]
        return pd.DataFrame(rows, columns=CSV_COLUMNS)


class ReportGenerator:
    """Write a VerificationReport as JSON, CSV or a plain spectrum dump"""

    def __init__(self, report: VerificationReport):
        self.report = report

    def to_json(self, path: Union[str, Path]) -> Path:
        """Write the v1 JSON schema

        Args:
            path: Output JSON path
        """
        output_path = Path(path)
        document = self.report.to_dict()
        self._write(output_path, json.dumps(document, indent=2) + "\n")
        logger.info("Saved JSON report to %s", output_path)
        return output_path

    def to_csv(self, path: Union[str, Path]) -> Path:
        """Write one row per check under the header check,value,threshold,pass

        Args:
            path: Output CSV path
        """
        output_path = Path(path)
        self._write(output_path, self.csv_text())
        logger.info("Saved CSV report to %s", output_path)
        return output_path

    def csv_text(self) -> str:
        frame = self.report.to_frame()
        frame["pass"] = frame["pass"].map({True: "true", False: "false"})
        return frame.to_csv(index=False, float_format="%.17g", lineterminator="\n")

    def dump_spectrum(self, path: Union[str, Path]) -> Path:
        """Two columns, 'index eigenvalue', one eigenvalue per line"""
        if self.report.eigenvalues is None:
            raise SerializationError(f"Suite {self.report.suite!r} produced no eigenvalues to dump")
        output_path = Path(path)
        lines = [f"{i} {float(v):.17g}" for i, v in enumerate(self.report.eigenvalues, start=1)]
        self._write(output_path, "\n".join(lines) + "\n")
        logger.info("Saved spectrum dump to %s", output_path)
        return output_path

    def write(self, path: Union[str, Path], fmt: str = "json") -> Path:
        if fmt == "json":
            return self.to_json(path)
        if fmt == "csv":
            return self.to_csv(path)
        raise SerializationError(f"Report format must be 'json' or 'csv', got {fmt!r}")

    @staticmethod
    def _write(path: Path, text: str) -> None:
        try:
            if path.parent and not path.parent.exists():
                path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
        except OSError as e:
            raise SerializationError(f"Cannot write {path}: {e}") from e

    def generate_summary(self) -> str:
        """Text summary: one line per check and the overall verdict"""
        r = self.report
        width = max([len(c.name) for c in r.checks] + [10])
        lines = [
            "",
            f"{r.suite.upper()}",
            "=" * 80,
            f"Seed: {r.seed}   Version: {r.version}   Wall time: {r.wall_time_ms:.1f} ms",
            "",
        ]
        for c in r.checks:
            verdict = "ok" if c.passed else "FAIL"
            lines.append(f"  {c.name:{width}s}: {c.value:12.4e}  (threshold {c.threshold:.1e})  {verdict}")
        if r.eigenvalues is not None:
            head = ", ".join(f"{v:.6f}" for v in list(r.eigenvalues)[:8])
            lines.append("")
            lines.append(f"  eigenvalues: {head}{', ...' if len(r.eigenvalues) > 8 else ''}")
        lines.append("=" * 80)
        lines.append("PASS" if r.passed else f"FAIL ({len(r.failures())} of {len(r.checks)} checks)")
        return "\n".join(lines)
