"""
cohomology: Poincaré series, bi-grading and Euler characteristic of a compact symmetric space
"""
from utils.cohomology import bigrade_report
from utils.config import RunConfig
from utils.errors import UnsupportedSpace
from utils.grammar import parse_space
from utils.lefschetz import build_ring, lefschetz_class
from utils.logging import log_command
from utils.report import emit_report

from command_modules import EXIT_OK, deliver, fail


def add_arguments(parser) -> None:
    parser.add_argument("--space", required=True, help="space such as CP(3), S^4, GrC(2,2), SU(4)/SO(4)")


def run(args, config: RunConfig) -> int:
    log_command("cohomology", {"space": args.space})
    try:
        space = parse_space(args.space)
        report = bigrade_report(space)
        try:
            report["lefschetz_class"] = lefschetz_class(build_ring(space)).render()
        except UnsupportedSpace:
            report["lefschetz_class"] = None
        deliver(emit_report(report, config.output_format), args.output)
        return EXIT_OK
    except Exception as e:
        return fail("cohomology", e)
