"""Suite engine: run a suite under its configuration and collect a report"""

import logging
import time
from typing import Any, Dict

from ..analytics.reports import Check, VerificationReport
from ..core.config import config_overrides
from ..core.errors import ConfigError, SpinlabError
from ..core.rng import GENERATOR_NAME
from .experiment import ExperimentConfig
from .registry import get_suite

logger = logging.getLogger(__name__)


class SuiteEngine:
    """Run registered suites and time them

    Numerical failures inside a suite do not escape: they become a failing
    `error` check so the run still yields a report (exit status 1). Configuration
    problems raise ConfigError (exit status 2).
    """

    def __init__(self, record_wall_time: bool = True):
        self.record_wall_time = record_wall_time

    def run(self, config: ExperimentConfig) -> VerificationReport:
        """Run the configured suite

        Args:
            config: Validated experiment config

        Returns:
            VerificationReport

        Raises:
            ConfigError: If the suite is unknown or its parameters are invalid
        """
        suite = get_suite(config.suite)
        suite.validate(config)

        report = VerificationReport(suite=config.suite, params=self._params(suite, config), seed=config.seed)
        start = time.perf_counter()
        with config_overrides(config.config_values()):
            try:
                suite.execute(config, report)
            except ConfigError:
                raise
            except SpinlabError as e:
                logger.error("Suite %s failed: %s", config.suite, e)
                report.checks.append(_error_check(e))
        if self.record_wall_time:
            report.wall_time_ms = round(1000.0 * (time.perf_counter() - start), 3)
        logger.info("Suite %s: %d checks, pass=%s", config.suite, len(report.checks), report.passed)
        return report

    @staticmethod
    def _params(suite, config: ExperimentConfig) -> Dict[str, Any]:
        params = suite.params(config)
        if config.modes is not None:
            params["modes"] = config.modes
        if config.tol is not None:
            params["tol"] = config.tol
        params["generator"] = GENERATOR_NAME
        return params


def _error_check(error: Exception) -> Check:
    return Check.flag(f"error.{type(error).__name__}", float("nan"), False)


def run(config: ExperimentConfig) -> VerificationReport:
    """Run one experiment with the default engine"""
    return SuiteEngine().run(config)
