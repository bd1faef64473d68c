"""
integrate: Monte Carlo estimate of the averaged invariant form and its vanishing test
"""
from utils.config import RunConfig
from utils.grammar import parse_pair
from utils.integrator import average_form
from utils.logging import log_command, log_integration
from utils.pairs import embed_pair
from utils.report import emit_report

from command_modules import EXIT_OK, deliver, fail


def add_arguments(parser) -> None:
    parser.add_argument("pair", help="pair such as SO(2,2)/SO(2,1)")
    parser.add_argument("--full", action="store_true", help="include every coefficient and standard error")


def run(args, config: RunConfig) -> int:
    log_command("integrate", {"pair": args.pair, "n": config.mc_samples, "seed": config.seed})
    try:
        ps = parse_pair(args.pair)
        rp = embed_pair(ps, config.dimension_cap)
        result = average_form(rp, config.mc_samples, config.seed, config)
        report = {"pair": ps.text, "dims": rp.dims()}
        report.update(result.to_dict(full=args.full))
        log_integration(ps.text, result.n_samples, result.seed, result.verdict, report["max_abs_z"])
        deliver(emit_report(report, config.output_format), args.output)
        return EXIT_OK
    except Exception as e:
        return fail("integrate", e)
