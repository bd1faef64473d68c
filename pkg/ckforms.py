#!/usr/bin/env python3
"""
ckforms command-line entry point.

Obstructions to compact Clifford-Klein forms and rational-volume certificates for
reductive pairs of classical Lie groups.
"""
import argparse
import logging
import sys
from typing import List, Optional

from command_modules import EXIT_VALIDATION, analyze, catalog, cohomology, integrate, lefschetz
from utils import __version__
from utils.config import OUTPUT_FORMATS, load_config
from utils.errors import ConfigError
from utils.logging import configure_action_log

COMMANDS = {
    "analyze": (analyze, "classify one pair"),
    "catalog": (catalog, "run the catalog and compare with expected verdicts"),
    "cohomology": (cohomology, "cohomology data of a compact symmetric space"),
    "lefschetz": (lefschetz, "Lefschetz class and Lefschetz numbers"),
    "integrate": (integrate, "Monte Carlo test of the averaged invariant form"),
}


def common_arguments() -> argparse.ArgumentParser:
    """Flags accepted by every command"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML config file (default: $CKFORMS_CONFIG)")
    common.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, help="report format")
    common.add_argument("--output", help="write the report to this file instead of stdout")
    common.add_argument("--seed", type=int, help="Monte Carlo seed")
    common.add_argument("--mc-samples", type=int, help="Monte Carlo sample count")
    common.add_argument("--mc-threshold-low", dest="threshold_low", type=float, help="VanishConsistent when max |z| <= this")
    common.add_argument("--mc-threshold-high", dest="threshold_high", type=float, help="NonZero when max |z| >= this")
    common.add_argument("--workers", type=int, help="parallel workers for the sign search and the catalog")
    common.add_argument("--no-cache", action="store_true", help="ignore and do not update the verdict cache")
    common.add_argument("--verbose", action="store_true", help="debug logging")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ckforms",
        description="Obstructions to compact Clifford-Klein forms and rational-volume certificates",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python ckforms.py analyze "SO(3,2)/SO(3,1)"
  python ckforms.py analyze "GROUP(SU(2,1))" --mc --format md
  python ckforms.py catalog --format csv --output catalog.csv
  python ckforms.py cohomology --space "GrC(2,2)"
  python ckforms.py lefschetz --space "CP(3)" --endo scalar=2 --volume
  python ckforms.py integrate "SO(2,2)/SO(2,1)" --mc-samples 20000 --seed 0
        """,
    )
    parser.add_argument("--version", action="version", version=f"ckforms {__version__}")
    common = common_arguments()
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (module, help_text) in COMMANDS.items():
        command_parser = sub.add_parser(name, parents=[common], help=help_text)
        module.add_arguments(command_parser)
    return parser


def config_overrides(args) -> dict:
    return {
        "mc_samples": args.mc_samples,
        "seed": args.seed,
        "threshold_low": args.threshold_low,
        "threshold_high": args.threshold_high,
        "workers": args.workers,
        "output_format": args.output_format,
        "use_mc": getattr(args, "use_mc", None),
    }


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        config = load_config(args.config, config_overrides(args))
    except ConfigError as e:
        print(f"❌ Error: {str(e)}", file=sys.stderr)
        return EXIT_VALIDATION
    configure_action_log(config.action_log)
    module, _ = COMMANDS[args.command]
    return module.run(args, config)


if __name__ == "__main__":
    sys.exit(main())
