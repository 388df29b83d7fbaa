"""Command-line entrypoint: ``mmwave-coverage <verb> [flags]``.

Verbs: ``gains``, ``fit``, ``coverage``, ``simulate``, ``compare`` and
``reproduce <fig2|fig3|fig4|fig5|fig6>``. Logs go to stdout; a failing command
prints one JSON error report to stderr and exits with the mapped code.
"""

import argparse
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

from mmwave_coverage.cli.configs import RunConfig
from mmwave_coverage.cli.src import (
    ExitCode,
    ReproduceTarget,
    Verb,
    enable_file_logs,
)
from mmwave_coverage.cli.src.commands import (
    run_compare,
    run_coverage,
    run_fit,
    run_gains,
    run_simulate,
)

# Import the logger INSTANCE explicitly, not the ``logger`` submodule.
from mmwave_coverage.cli.src.logger import logger
from mmwave_coverage.cli.src.recipes import run_reproduce
from mmwave_coverage.shared import MmwaveError, exit_code_for, format_error_report

COMMANDS: dict[Verb, Callable[[RunConfig], list[Path]]] = {
    Verb.GAINS: run_gains,
    Verb.FIT: run_fit,
    Verb.COVERAGE: run_coverage,
    Verb.SIMULATE: run_simulate,
    Verb.COMPARE: run_compare,
}

VERB_HELP: dict[Verb, str] = {
    Verb.GAINS: "Sample aligned or misaligned beamforming gains to CSV.",
    Verb.FIT: "Fit gain distribution families and rank them by KS statistic.",
    Verb.COVERAGE: "Compute the analytic SIR coverage curve.",
    Verb.SIMULATE: "Estimate the SIR coverage curve by network simulation.",
    Verb.COMPARE: "Join analytic and simulated coverage with per-point deltas.",
    Verb.REPRODUCE: "Run a figure reproduction recipe end to end.",
}


def _seed(value: str) -> int:
    seed = int(value)
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return seed


def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return number


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config", type=Path, help="YAML or JSON run configuration file."
    )
    common.add_argument("--seed", type=_seed, help="Master RNG seed.")
    common.add_argument("--out", type=Path, help="Output directory.")
    common.add_argument("--threads", type=_positive_int, help="Worker threads.")

    parser = argparse.ArgumentParser(
        prog="mmwave-coverage",
        description="mmWave beamforming gains and SIR coverage of cellular networks.",
    )
    verbs = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    for verb in Verb:
        sub = verbs.add_parser(verb.value, parents=[common], help=VERB_HELP[verb])
        if verb is Verb.REPRODUCE:
            sub.add_argument(
                "target", choices=[target.value for target in ReproduceTarget]
            )
    return parser


def cli_overrides(args: argparse.Namespace) -> dict[str, Any]:
    """Config overrides given as flags; they win over the file and env."""
    overrides: dict[str, Any] = {}
    if args.seed is not None:
        overrides["system"] = {"rng_seed": args.seed}
    if args.out is not None:
        overrides["output_dir"] = str(args.out)
    if args.threads is not None:
        overrides["threads"] = args.threads
    return overrides


def command_name(args: argparse.Namespace) -> str:
    if args.verb == Verb.REPRODUCE.value:
        return f"{args.verb} {args.target}"
    return str(args.verb)


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    command = command_name(args)
    try:
        config = RunConfig.load(args.config, overrides=cli_overrides(args))
        enable_file_logs(config.output_dir)
        logger.info(
            "Running '%s' (seed %d, %d threads, output %s)",
            command,
            config.system.rng_seed,
            config.threads,
            config.output_dir,
        )
        verb = Verb(args.verb)
        if verb is Verb.REPRODUCE:
            paths = run_reproduce(ReproduceTarget(args.target), config)
        else:
            paths = COMMANDS[verb](config)
    except Exception as e:
        if isinstance(e, MmwaveError):
            logger.error("'%s' failed: %s", command, e)
        else:
            logger.exception("'%s' failed unexpectedly", command)
        print(format_error_report(command=command, error=e), file=sys.stderr)
        return int(exit_code_for(e))

    for path in paths:
        logger.info("Output: %s", path)
    logger.info("'%s' finished with %d output files", command, len(paths))
    return int(ExitCode.SUCCESS)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
