"""Abstract base class for verification suites"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Tuple

from .errors import ConfigError


class BaseSuite(ABC):
    """Abstract base class for all verification suites

    A suite reads its parameters from an experiment config, runs one family of checks
    and records them on a VerificationReport. Suites are registered by name and run by
    the suite engine.
    """

    name: str = ""
    description: str = ""
    # parameters the suite reads from the experiment config
    required: Tuple[str, ...] = ()
    # n values the suite supports; empty means any
    dimensions: Tuple[int, ...] = ()
    # domain kinds the suite supports; empty means any
    kinds: Tuple[str, ...] = ()

    def validate(self, config) -> bool:
        """Validate the experiment config for this suite

        Returns:
            True if valid, raises ConfigError otherwise
        """
        for key in self.required:
            if getattr(config, key, None) is None:
                raise ConfigError(f"Suite {self.name!r} requires --{key.replace('_', '-')}")
        if self.dimensions and config.n not in self.dimensions:
            raise ConfigError(
                f"Suite {self.name!r} supports n in {self.dimensions}, got n={config.n}"
            )
        if self.kinds and config.kind not in self.kinds:
            raise ConfigError(
                f"Suite {self.name!r} supports kind in {self.kinds}, got {config.kind!r}"
            )
        return True

    @abstractmethod
    def execute(self, config, report) -> None:
        """Run the suite's checks and append them to the report

        Args:
            config: ExperimentConfig
            report: VerificationReport to fill
        """
        pass

    def params(self, config) -> Dict[str, Any]:
        """Parameters recorded in the report"""
        return {key: getattr(config, key) for key in ("n", "kind", "radius", "alpha", "modes") if key in self.required}

    def usage(self) -> str:
        required = " ".join(f"--{key.replace('_', '-')}" for key in self.required) or "(none)"
        return f"{self.name:20s} {self.description}  [requires: {required}]"

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name={self.name!r})"
