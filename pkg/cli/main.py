#!/usr/bin/env python3
"""
Unified CLI entry point for the atomic Ferris wheel simulator.

Every pipeline stage is a sub-command; `figure` runs a committed preset.
"""

from __future__ import annotations

import argparse
import logging
import sys

from ..common.config import RunConfig, preset_path
from ..common.errors import FieldFormatError, NumericalValidityError, ParameterError
from .commands import FIGURES, run

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

COMMAND_HELP = {
    "mask": "Spiral light-mask intensity at the configured z",
    "potential": "Optical dipole potential of the mask",
    "imprint": "Packet after the thin-mask phase imprint (complex field)",
    "orders": "Diffraction orders and their populations P_m",
    "ferris": "Ferris wheel density of orders +m and -m",
    "propagate": "Focal-plane scan of the diffraction orders",
    "validate": "Raman-Nath validity report",
}


def _common_options(with_config: bool = True) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    if with_config:
        common.add_argument("--config", type=str, default=None, help="INI configuration file.")
    common.add_argument("--out", type=str, default="output", help="Output directory (default: output).")
    common.add_argument("--grid", type=int, default=None, help="Samples per axis (power of two).")
    common.add_argument("--extent", type=float, default=None, help="Grid half extent in metres.")
    common.add_argument(
        "--format",
        choices=["csv", "csv+pgm", "csv+png"],
        default=None,
        help="Output files: data only, or data plus PGM (and PNG) images.",
    )
    common.add_argument(
        "--log-level",
        default="INFO",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging verbosity (default: INFO).",
    )
    return common


def create_parser() -> argparse.ArgumentParser:
    """Create the main argument parser."""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="atom-ferris-wheel",
        description="Atomic Ferris wheel beams from a spiral light mask",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Reproduce the spiral mask figure
  atom-ferris-wheel figure fig1 --out out/fig1

  # Ferris wheel of orders +3/-3 with the fig3 parameters
  atom-ferris-wheel ferris --config presets/fig3.ini --m 3

  # Raman-Nath validity report
  atom-ferris-wheel validate --config presets/validate.ini

Environment overrides use FERRIS_<SECTION>__<KEY>, e.g. FERRIS_GRID__NX=512.
        """,
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", help="Command to run")

    for name, help_text in COMMAND_HELP.items():
        sub = subparsers.add_parser(name, parents=[common], help=help_text, description=help_text)
        if name == "ferris":
            sub.add_argument("--m", type=int, default=None, help="Diffraction order m (overrides [ferris] m).")

    figure = subparsers.add_parser(
        "figure",
        parents=[_common_options(with_config=False)],
        help="Run a figure preset",
        description="Run a committed figure preset; flags still override its values.",
    )
    figure.add_argument("name", choices=sorted(FIGURES), help="Figure preset.")
    figure.add_argument("--m", type=int, default=None, help="Diffraction order m for fig3/fig4.")
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, dict[str, str]]:
    overrides: dict[str, dict[str, str]] = {}
    if args.grid is not None:
        overrides["grid"] = {"nx": str(args.grid), "ny": str(args.grid)}
    if args.extent is not None:
        overrides.setdefault("grid", {}).update(half_extent=repr(args.extent), half_extent_y=repr(args.extent))
    if args.format is not None:
        overrides["output"] = {"format": args.format}
    return overrides


def execute(args: argparse.Namespace) -> int:
    try:
        if args.command == "figure":
            config_path = preset_path(args.name)
            command = FIGURES[args.name]
        else:
            config_path = args.config
            command = args.command
        cfg = RunConfig.load(config_path, overrides=_overrides(args))
        options = {"m": args.m} if getattr(args, "m", None) is not None else {}
        report, files = run(command, cfg, args.out, **options)
    except ParameterError as e:
        logger.error(f"configuration error: {e}")
        return EXIT_CONFIG
    except NumericalValidityError as e:
        logger.error(f"numerical validity error: {e}")
        return EXIT_NUMERICAL
    except (FieldFormatError, OSError) as e:
        logger.error(f"I/O error: {e}")
        return EXIT_IO

    print(report)
    for path in files:
        print(f"  {path}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    """Main CLI entry point."""
    parser = create_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help()
        return 1

    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s [%(levelname)s] %(name)s - %(message)s",
        stream=sys.stderr,
    )
    return execute(args)


if __name__ == "__main__":
    sys.exit(main())
