"""Command-line runner: `spinlab run --suite <name> ...` and `spinlab list`

Exit status is 0 when every check passes, 1 when a check fails or a numerical
failure is recorded, and 2 for configuration and usage errors.
"""

import argparse
import logging
import sys
from typing import List, Optional

from .analytics import ReportAnalyzer, ReportGenerator
from .analytics.reports import VERSION
from .core.errors import ConfigError, SerializationError
from .models.domain import DomainKind
from .suites import ExperimentConfig, SuiteEngine, list_suites

logger = logging.getLogger("spinlab")

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

RUN_FLAGS = ("n", "kind", "radius", "alpha", "modes", "tol", "seed", "out", "format", "dump_spectrum")


def _suite_listing() -> str:
    return "\n".join(suite.usage() for suite in list_suites())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinlab",
        description="Numerical verification of spinorial identities and rigidity on model domains",
        epilog="suites:\n" + _suite_listing(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser(
        "run",
        help="Run one verification suite",
        epilog="suites:\n" + _suite_listing(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    run.add_argument("--suite", help="Suite name (see `spinlab list`)")
    run.add_argument("--n", type=int, help="Ambient dimension")
    run.add_argument("--kind", choices=[k.value for k in DomainKind], help="Model domain")
    run.add_argument("--radius", type=float, help="Ball radius (geodesic radius on hyperbolic balls)")
    run.add_argument("--alpha", type=float, help="coth of the hyperbolic radius for psi-pm (> 1)")
    run.add_argument("--modes", type=int, help="Fourier modes on S1, theta nodes on S2")
    run.add_argument("--tol", type=float, help="Replace every residual threshold")
    run.add_argument("--seed", type=int, help="Seed for random fields")
    run.add_argument("--out", help="Report path (stdout if omitted)")
    run.add_argument("--format", choices=["json", "csv"], help="Report format")
    run.add_argument("--config", help="YAML or JSON config file")
    run.add_argument("--dump-spectrum", dest="dump_spectrum", help="Write 'index eigenvalue' lines to this path")
    run.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")

    commands.add_parser("list", help="List suites and their required parameters")
    return parser


def setup_logging(verbose: bool = False):
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)


def _emit(report, config: ExperimentConfig):
    generator = ReportGenerator(report)
    if config.out:
        generator.write(config.out, config.format)
    elif config.format == "csv":
        sys.stdout.write(generator.csv_text())
    else:
        sys.stdout.write(report.to_json() + "\n")
    if config.dump_spectrum:
        generator.dump_spectrum(config.dump_spectrum)


def run_command(args: argparse.Namespace) -> int:
    flags = {key: getattr(args, key) for key in RUN_FLAGS}
    config = ExperimentConfig.from_sources(args.suite, args.config, flags)
    report = SuiteEngine().run(config)
    ReportAnalyzer(report).print_summary(sys.stderr)
    try:
        _emit(report, config)
    except SerializationError as e:
        logger.error("Could not write report: %s", e)
        return EXIT_FAIL
    return EXIT_PASS if report.passed else EXIT_FAIL


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(getattr(args, "verbose", False))

    if args.command == "list":
        print(_suite_listing())
        return EXIT_PASS
    try:
        return run_command(args)
    except ConfigError as e:
        print(f"spinlab: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
