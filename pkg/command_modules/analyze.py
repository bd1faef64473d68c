"""
analyze: classify one pair and report the verdict with all evidence
"""
from utils.catalog import analyze_pair
from utils.config import RunConfig
from utils.grammar import parse_pair
from utils.logging import log_command
from utils.report import emit_report, validate_verdict_dict

from command_modules import EXIT_OK, deliver, fail


def add_arguments(parser) -> None:
    parser.add_argument("pair", help="pair such as SO(3,2)/SO(3,1) or GROUP(SU(2,1))")
    mc = parser.add_mutually_exclusive_group()
    mc.add_argument("--mc", dest="use_mc", action="store_true", default=None, help="attach Monte Carlo evidence")
    mc.add_argument("--no-mc", dest="use_mc", action="store_false", help="skip Monte Carlo (default)")


def run(args, config: RunConfig) -> int:
    log_command("analyze", {"pair": args.pair, "use_mc": config.use_mc})
    try:
        ps = parse_pair(args.pair)
        verdict = analyze_pair(ps, config, use_cache=not args.no_cache)
        validate_verdict_dict(verdict)
        deliver(emit_report(verdict, config.output_format), args.output)
        return EXIT_OK
    except Exception as e:
        return fail("analyze", e)
