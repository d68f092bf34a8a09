"""Configuration management system"""

import copy
import json
import yaml
from pathlib import Path
from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional

from .errors import ConfigError


# Every tolerance, resolution and threshold used by the verification suites.
DEFAULTS: Dict[str, Any] = {
    "resolution": {
        "fourier_modes": 64,
        "theta_nodes": 48,
        "radial_nodes": 32,
        "angular_nodes": 64,
        "boundary_samples": 200,
        "series_terms": 4000,
    },
    "tolerances": {
        "fd_step": 1e-4,
        "fd_step_second": 1e-3,
        "orthogonality": 1e-12,
        "hermitian": 1e-10,
        "zero_locus": 1e-8,
        "singular_mode": 1e-14,
        "clifford": 1e-13,
        "operator_identity": 1e-10,
        "projection": 1e-13,
        "eigen_residual": 1e-9,
        "symmetry": 1e-9,
        "equality": 1e-6,
        "convergence_slack": 0.01,
    },
    "thresholds": {
        "boundary_dirac": 1e-7,
        "extension_dirac": 1e-8,
        "boundary_match": 1e-8,
        "parallelism": 1e-6,
        "mean_curvature": 1e-10,
        "energy_balance": 1e-8,
        "killing": 1e-6,
        "reilly": 1e-5,
        "hyperbolic_reilly": 1e-4,
        "green": 1e-6,
        "pointwise": 1e-6,
        "energy_momentum": 1e-8,
        "psi_pm": 1e-8,
        "hmr_lower": 1e-6,
        "hmr_upper": 1e-4,
        "convergence_ratio": 4.0,
        "resolution_agreement": 1e-8,
        "lichnerowicz": 1e-5,
    },
    "negative_control": {
        "noise": 1e-2,
    },
    "random_fields": {
        "count": 5,
        "degree": 3,
    },
}


class Config:
    """Configuration manager for experiments and suites"""

    def __init__(
        self,
        config_path: Optional[str] = None,
        config_dict: Optional[Dict] = None,
        use_defaults: bool = True,
    ):
        """Initialize configuration

        Args:
            config_path: Path to YAML or JSON config file
            config_dict: Dictionary with configuration (overrides file)
            use_defaults: Start from the built-in DEFAULTS
        """
        self.config: Dict[str, Any] = copy.deepcopy(DEFAULTS) if use_defaults else {}

        if config_path:
            self.load_from_file(config_path)

        if config_dict:
            self.update(config_dict)

    def load_from_file(self, config_path: str):
        """Load configuration from a YAML or JSON file and merge it over the current values

        Args:
            config_path: Path to .yaml, .yml or .json file

        Raises:
            FileNotFoundError: If the file does not exist
            ConfigError: If the file cannot be parsed or is not a mapping
        """
        path = Path(config_path)

        if not path.exists():
            raise FileNotFoundError(f"Config file not found: {config_path}")

        with open(path, "r") as f:
            try:
                if path.suffix.lower() == ".json":
                    loaded = json.load(f)
                else:
                    loaded = yaml.safe_load(f)
            except (json.JSONDecodeError, yaml.YAMLError) as exc:
                raise ConfigError(f"Cannot parse config file {config_path}: {exc}")

        loaded = loaded or {}
        if not isinstance(loaded, dict):
            raise ConfigError(
                f"Config file must contain a mapping, got {type(loaded).__name__}"
            )

        self.update(loaded)

    def update(self, config_dict: Dict[str, Any]):
        """Update configuration with dictionary

        Args:
            config_dict: Dictionary of configuration values
        """
        self._deep_update(self.config, config_dict)

    def _deep_update(self, base: Dict, update: Dict):
        """Deep merge two dictionaries

        Args:
            base: Base dictionary to update
            update: Dictionary with updates
        """
        for key, value in update.items():
            if isinstance(value, dict) and key in base and isinstance(base[key], dict):
                self._deep_update(base[key], value)
            else:
                base[key] = value

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value with dot notation support

        Args:
            key: Configuration key (supports 'nested.key' notation)
            default: Default value if key not found

        Returns:
            Configuration value
        """
        keys = key.split(".")
        value = self.config

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value

    def require(self, key: str) -> Any:
        """Get a configuration value that must be present

        Raises:
            ConfigError: If the key is missing
        """
        value = self.get(key)
        if value is None:
            raise ConfigError(f"Missing required config key: {key}")
        return value

    def to_dict(self) -> Dict[str, Any]:
        """Get configuration as dictionary

        Returns:
            Configuration dictionary (deep copy)
        """
        return copy.deepcopy(self.config)

    def tolerance(self, name: str) -> float:
        """Shortcut for ``tolerances.<name>``"""
        return float(self.require(f"tolerances.{name}"))

    def threshold(self, name: str) -> float:
        """Shortcut for ``thresholds.<name>``"""
        return float(self.require(f"thresholds.{name}"))

    def resolution(self, name: str) -> int:
        """Shortcut for ``resolution.<name>``"""
        return int(self.require(f"resolution.{name}"))

    def __repr__(self) -> str:
        return f"Config(keys={list(self.config.keys())})"


_DEFAULT_CONFIG: Optional[Config] = None


def default_config() -> Config:
    """Shared configuration built from DEFAULTS (see config_overrides)"""
    global _DEFAULT_CONFIG
    if _DEFAULT_CONFIG is None:
        _DEFAULT_CONFIG = Config()
    return _DEFAULT_CONFIG


@contextmanager
def config_overrides(values: Optional[Dict[str, Any]] = None) -> Iterator[Config]:
    """Merge values over the shared configuration for the duration of a run

    The previous values are restored on exit, also when the body raises.
    """
    config = default_config()
    saved = copy.deepcopy(config.config)
    config.update(values or {})
    try:
        yield config
    finally:
        config.config = saved
