"""Command-line entry point: ``hs-signorm --curve circle.txt --degrees 2,4 --route tensor``."""

from __future__ import annotations

import argparse
import asyncio
import logging
import sys
from typing import List, Optional, Sequence

from . import __version__
from .config_loader import (
    get_default_replicates,
    get_default_truncation,
    get_default_workers,
    get_limit_defaults,
    get_output_defaults,
    get_polyline_segments,
)
from .curve_file import load_curve, parse_inline
from .errors import ConfigError, SignormError, ValidationError
from .registry.base import RouteSettings
from .registry.loader import register_all_routes
from .registry.route_registry import get_global_registry
from .runner import ExperimentConfig, as_signorm_error, emit, run_experiment

logger = logging.getLogger(__name__)


def parse_degrees(text: str) -> List[int]:
    """
    Parse ``2,4,6`` and ranges like ``1-5`` into a sorted list of unique degrees.

    Raises:
        ValidationError: On malformed input
    """
    degrees = set()
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            if "-" in chunk:
                lo, hi = (int(x) for x in chunk.split("-", 1))
                degrees.update(range(lo, hi + 1))
            else:
                degrees.add(int(chunk))
        except ValueError as e:
            raise ValidationError(f"cannot parse degrees {text!r}") from e
    if not degrees:
        raise ValidationError("no degrees given")
    return sorted(degrees)


class ArgumentParser(argparse.ArgumentParser):
    """Parser whose usage errors raise ConfigError instead of exiting."""

    def error(self, message: str):
        raise ConfigError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    output = get_output_defaults()
    parser = ArgumentParser(
        prog="hs-signorm",
        description="Compare routes to Hilbert-Schmidt signature norms of unit-speed curves.",
    )
    parser.add_argument("--curve", metavar="PATH", help="curve-spec file")
    parser.add_argument(
        "--set",
        dest="inline",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="inline curve parameter (repeatable; overrides the file)",
    )
    parser.add_argument("--degrees", default="1-4", help="e.g. 2,4,6 or 1-5")
    parser.add_argument(
        "--route", dest="routes", action="append", metavar="NAME", help="route (repeatable)"
    )
    parser.add_argument("--replicates", type=int, default=get_default_replicates())
    parser.add_argument("--seed", type=int, default=None, help="unsigned 64-bit seed")
    parser.add_argument("--out", default=None, metavar="PATH", help="output file (default stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default=output["format"])
    parser.add_argument("--truncation", type=int, default=get_default_truncation())
    parser.add_argument("--grid", type=int, default=get_limit_defaults()["grid"])
    parser.add_argument("--tolerance", type=float, default=None)
    parser.add_argument("--segments", type=int, default=get_polyline_segments())
    parser.add_argument("--workers", type=int, default=get_default_workers())
    parser.add_argument(
        "--no-timing", action="store_true", help="leave wall_ms empty for byte-stable output"
    )
    parser.add_argument("--list-routes", action="store_true", help="print route names and exit")
    parser.add_argument("--log-level", default="WARNING")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    """Turn parsed arguments into a validated-later ExperimentConfig."""
    curve, params = load_curve(args.curve, parse_inline(args.inline))
    settings = RouteSettings(
        replicates=args.replicates,
        seed=args.seed,
        truncation=args.truncation,
        grid=args.grid,
        tolerance=args.tolerance,
        segments=args.segments,
    )
    return ExperimentConfig(
        curve=curve,
        degrees=parse_degrees(args.degrees),
        routes=args.routes or ["tensor"],
        settings=settings,
        curve_source=params,
        output=args.out,
        format=args.format,
        workers=args.workers,
        timing=not args.no_timing,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the CLI.

    Returns:
        0 on success, 2 on validation errors, 3 on numerical failures
    """
    try:
        args = build_parser().parse_args(argv)
    except SignormError as e:
        print(e.one_line(), file=sys.stderr)
        return e.exit_status
    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    registry = register_all_routes(get_global_registry())
    if args.list_routes:
        for route in registry.get_all_routes():
            print(f"{route.name}\t{route.kind.value}\t{route.description}")
        return 0

    try:
        config = config_from_args(args)
        config.validate(registry)
        rows = asyncio.run(run_experiment(config, registry))
        text = emit(rows, config)
    except SignormError as e:
        print(e.one_line(), file=sys.stderr)
        return e.exit_status
    except Exception as e:  # noqa: BLE001
        logger.error("Unexpected failure", exc_info=True)
        error = as_signorm_error(e)
        print(error.one_line(), file=sys.stderr)
        return error.exit_status

    if not config.output or config.output == "-":
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
