"""Suites composed of other suites: determinism replay and the full battery"""

import logging

from ..core.base_suite import BaseSuite
from .engine import SuiteEngine
from .registry import get_suite, list_suites, register

logger = logging.getLogger(__name__)

REPLAY_SUITE = "gauss"


def adapted(config, suite: BaseSuite):
    """Copy of the config for another suite, with n and kind moved into the suite's supported range"""
    n = config.n if not suite.dimensions or config.n in suite.dimensions else suite.dimensions[0]
    kind = config.kind if not suite.kinds or config.kind in suite.kinds else suite.kinds[0]
    return config.with_suite(suite.name, n=n, kind=kind)


@register
class DeterminismSuite(BaseSuite):
    name = "determinism"
    description = f"Run the {REPLAY_SUITE!r} suite twice with the same seed and compare the reports byte for byte"
    required = ("n",)

    def execute(self, config, report):
        engine = SuiteEngine(record_wall_time=False)
        replay = adapted(config, get_suite(REPLAY_SUITE))
        first = engine.run(replay).to_json()
        second = engine.run(replay).to_json()
        report.below("identical_reports", 0.0 if first == second else 1.0, 0.5)


@register
class AllSuite(BaseSuite):
    name = "all"
    description = "Every registered suite, each at the closest supported n and kind"
    required = ("n",)

    def execute(self, config, report):
        engine = SuiteEngine(record_wall_time=False)
        for suite in list_suites():
            if suite.name == self.name:
                continue
            result = engine.run(adapted(config, suite))
            for check in result.checks:
                check.name = f"{suite.name}.{check.name}"
                report.add(check)
            logger.info("Suite %s: pass=%s", suite.name, result.passed)
