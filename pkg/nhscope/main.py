#!/usr/bin/env python3
"""
nhscope command-line entry point

Every flag has a config-file equivalent; flags win over the file, the file wins
over a preset. The one-line summary goes to stdout, logs go to stderr.
"""

import argparse
import asyncio
import sys
from typing import Any, Dict, List, Optional

from dotenv import find_dotenv, load_dotenv

from nhscope import __version__
from nhscope.config import PRESETS, CommandType, ConfigManager, RunConfig, ScopeSettings
from nhscope.exceptions import ScopeError
from nhscope.job_manager import EXIT_FAILURE, JobManager, JobResult, exit_code_for
from nhscope.logger import get_logger, initialize_logger

logger = get_logger(__name__)

# flag dest -> model parameter name
MODEL_FLAGS = {
    "t1": "t1", "t2": "t2", "g": "g", "gamma": "gamma",
    "JR": "JR", "JL": "JL", "V": "V", "alpha_num": "alpha_num", "alpha_den": "alpha_den",
    "u": "u", "v": "v", "w": "w", "k": "k", "t0": "t0",
}

EPILOG = """
Examples:
  nhscope sweep --model ssh --axis t1 --lo 0.05 --hi 1.5 --steps 300 --cells 150 --t2 1 --g 0.1 --output fig1b.csv
  nhscope bloch --u 0.5 --v 0.8 --w 0.7 --steps 400 --output fig4.csv
  nhscope bound --blocks 3
  nhscope --preset fig3 --output fig3.csv
  nhscope --config run.json --steps 161

Environment Variables:
  NHSCOPE_THREADS      worker threads for grid evaluation (default 1)
  NHSCOPE_LOG_LEVEL    DEBUG, INFO, WARNING, ERROR (default INFO)
  NHSCOPE_LOG_FILE     also log to this file
  NHSCOPE_REAL_TOL     tolerance for calling a spectrum real (default 1e-10)

Exit codes: 0 success, 2 invalid input, 3 numerical failure
"""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nhscope",
        description="Generalized Petermann factor sweeps for non-Hermitian Hamiltonians",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        allow_abbrev=False,
    )
    parser.add_argument("command", nargs="?", choices=[c.value for c in CommandType])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="JSON run configuration")
    parser.add_argument("--preset", choices=sorted(PRESETS), help="shipped figure configuration")
    parser.add_argument("--log-level", dest="log_level", help="overrides NHSCOPE_LOG_LEVEL")

    model = parser.add_argument_group("model")
    model.add_argument("--model", dest="variant",
                       help="ssh, two_level, quasicrystal, pt_ssh, sturm_liouville or external")
    model.add_argument("--cells", "--sites", "--L", dest="size", type=int, help="lattice size")
    model.add_argument("--boundary", choices=["open", "periodic"])
    for flag in ("t1", "t2", "g", "gamma", "JR", "JL", "V", "u", "v", "w", "k", "t0"):
        model.add_argument(f"--{flag}", dest=flag, type=float)
    model.add_argument("--alpha-num", dest="alpha_num", type=int)
    model.add_argument("--alpha-den", dest="alpha_den", type=int)
    model.add_argument("--matrix", help="matrix file for the external model")

    grid = parser.add_argument_group("grid")
    grid.add_argument("--axis")
    grid.add_argument("--lo", type=float)
    grid.add_argument("--hi", type=float)
    grid.add_argument("--steps", type=int)

    detector = parser.add_argument_group("detector")
    detector.add_argument("--window", dest="window", type=int)
    detector.add_argument("--kappa", type=float)
    detector.add_argument("--floor", type=float)

    run = parser.add_argument_group("run")
    run.add_argument("--output", help="artifact path")
    run.add_argument("--format", choices=["csv", "json"])
    run.add_argument("--sizes", type=int, nargs="+", help="chain lengths for finite-size")
    run.add_argument("--blocks", type=int, nargs="+", help="Jordan block sizes for bound")
    run.add_argument("--states", type=int, nargs="+", help="eigenvector indices for spectrum")
    run.add_argument("--tol", type=float, help="zero-mode tolerance")
    run.add_argument("--method", choices=["eta", "overlap"])
    return parser


def overrides_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    """Only flags the user actually set, shaped like a config file"""
    overrides: Dict[str, Any] = {}
    model: Dict[str, Any] = {}
    if args.variant is not None:
        model["variant"] = args.variant
    if args.size is not None:
        model["size"] = args.size
    if args.boundary is not None:
        model["boundary"] = args.boundary
    for dest, name in MODEL_FLAGS.items():
        value = getattr(args, dest)
        if value is not None:
            model[name] = value
    if model:
        overrides["model"] = model

    grid = {key: getattr(args, key) for key in ("axis", "lo", "hi", "steps") if getattr(args, key) is not None}
    if grid:
        overrides["grid"] = grid

    detector = {}
    if args.window is not None:
        detector["w"] = args.window
    for key in ("kappa", "floor"):
        if getattr(args, key) is not None:
            detector[key] = getattr(args, key)
    if detector:
        overrides["detector"] = detector

    if args.command is not None:
        overrides["command"] = args.command
    for key in ("output", "format", "sizes", "blocks", "states", "matrix", "tol", "method"):
        value = getattr(args, key)
        if value is not None:
            overrides[key] = value
    return overrides


async def run_async(config: RunConfig, manager: Optional[JobManager] = None) -> JobResult:
    manager = manager or JobManager()
    return await manager.execute(config)


def run(config: RunConfig, manager: Optional[JobManager] = None) -> int:
    """Execute one config, print its summary line and return the exit status"""
    return report(asyncio.run(run_async(config, manager)))


def report(result: JobResult) -> int:
    if result.summary:
        print(result.summary)
    if result.error_message:
        print(f"error: {result.error_message}", file=sys.stderr)
    return result.exit_code


async def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code"""
    args = build_parser().parse_args(argv)
    load_dotenv(find_dotenv(usecwd=True))

    try:
        settings = ScopeSettings.from_environment()
        if args.log_level:
            settings.log_level = args.log_level
        initialize_logger(log_level=settings.log_level, log_file=settings.log_file or None)
        config_manager = ConfigManager(settings)
        config = config_manager.load_config(args.config, overrides_from_args(args), preset=args.preset)
    except (ScopeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return exit_code_for(e) if isinstance(e, ScopeError) else 2

    logger.info(f"🚀 nhscope {__version__}: {config.command.value}")
    try:
        result = await run_async(config, JobManager(config_manager))
    except KeyboardInterrupt:
        logger.info("⏹️  Execution interrupted by user")
        return 130
    except Exception as e:
        logger.exception(f"❌ Execution error: {e}")
        return EXIT_FAILURE
    return report(result)


def cli_main():
    """Console script entry point"""
    sys.exit(asyncio.run(main()))


if __name__ == "__main__":
    cli_main()
