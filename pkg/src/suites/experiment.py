"""Experiment configuration: defaults, config file and command-line flags"""

import logging
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, Optional

from ..core.config import Config
from ..core.errors import ConfigError
from ..models.domain import DomainKind

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv")


@dataclass
class ExperimentConfig:
    """Complete parameter set of one suite run

    Values come from DEFAULTS, then the `experiment` section of a config file, then
    command-line flags. Every other section of the file (tolerances, thresholds,
    resolution) is kept in `overrides` and merged over the shared configuration for the
    duration of the run.
    """

    suite: str
    n: int = 2
    kind: str = "euclidean-ball"
    radius: float = 1.0
    alpha: float = 2.0
    modes: Optional[int] = None
    tol: Optional[float] = None
    seed: int = 0
    out: Optional[str] = None
    format: str = "json"
    dump_spectrum: Optional[str] = None
    overrides: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    def validate(self):
        """Raises ConfigError on any inconsistent value"""
        try:
            self.kind = DomainKind.parse(self.kind).value
        except ValueError as e:
            raise ConfigError(str(e)) from e
        if not isinstance(self.n, int) or self.n < 2 or self.n > 8:
            raise ConfigError(f"--n must be an integer in 2..8, got {self.n!r}")
        if not self.radius > 0:
            raise ConfigError(f"--radius must be > 0, got {self.radius}")
        if not self.alpha > 1:
            raise ConfigError(f"--alpha must be > 1, got {self.alpha}")
        if self.modes is not None and self.modes < 2:
            raise ConfigError(f"--modes must be >= 2, got {self.modes}")
        if self.tol is not None and not self.tol > 0:
            raise ConfigError(f"--tol must be > 0, got {self.tol}")
        if self.seed < 0:
            raise ConfigError(f"--seed must be >= 0, got {self.seed}")
        if self.format not in FORMATS:
            raise ConfigError(f"--format must be one of {FORMATS}, got {self.format!r}")

    def resolution(self) -> Dict[str, int]:
        """Resolution overrides implied by --modes (Fourier modes on S1, theta nodes on S2)"""
        if self.modes is None:
            return {}
        return {"fourier_modes": self.modes, "theta_nodes": self.modes}

    def config_values(self) -> Dict[str, Any]:
        """Values merged over the shared configuration during the run"""
        values: Dict[str, Any] = {k: v for k, v in self.overrides.items()}
        resolution = dict(values.get("resolution", {}))
        resolution.update(self.resolution())
        if resolution:
            values["resolution"] = resolution
        if self.tol is not None:
            # --tol replaces every residual threshold; the convergence ratio is a lower bound
            thresholds = {k: self.tol for k in Config().get("thresholds") if k != "convergence_ratio"}
            thresholds.update(values.get("thresholds", {}))
            values["thresholds"] = thresholds
        return values

    def with_suite(self, suite: str, **changes) -> "ExperimentConfig":
        data = {f.name: getattr(self, f.name) for f in fields(self)}
        data.update(changes, suite=suite)
        return ExperimentConfig(**data)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_sources(
        cls,
        suite: Optional[str],
        config_path: Optional[str] = None,
        flags: Optional[Dict[str, Any]] = None,
    ) -> "ExperimentConfig":
        """Build a config from a YAML/JSON file and flags; flags override the file

        Raises:
            ConfigError: If the file is unreadable or a value is invalid
        """
        values: Dict[str, Any] = {}
        overrides: Dict[str, Any] = {}
        if config_path:
            try:
                loaded = Config(config_path=config_path, use_defaults=False).to_dict()
            except FileNotFoundError as e:
                raise ConfigError(str(e)) from e
            experiment = loaded.pop("experiment", {}) or {}
            if not isinstance(experiment, dict):
                raise ConfigError("Config section 'experiment' must be a mapping")
            values.update({k.replace("-", "_"): v for k, v in experiment.items()})
            overrides = loaded
            logger.debug("Loaded config file %s", Path(config_path))

        known = {f.name for f in fields(cls)} - {"overrides"}
        unknown = set(values) - known
        if unknown:
            raise ConfigError(f"Unknown experiment keys in config file: {sorted(unknown)}")
        values.update({k: v for k, v in (flags or {}).items() if v is not None})
        if suite is not None:
            values["suite"] = suite
        if "suite" not in values:
            raise ConfigError("No suite given (use --suite or experiment.suite in the config file)")
        try:
            return cls(overrides=overrides, **values)
        except TypeError as e:
            raise ConfigError(f"Invalid experiment config: {e}") from e
