"""
lefschetz: Lefschetz class of a space and the Lefschetz number of an endomorphism
"""
from fractions import Fraction

from utils.config import RunConfig
from utils.errors import ParseError
from utils.grammar import parse_space
from utils.lefschetz import (
    build_ring,
    lefschetz_class,
    lefschetz_number,
    lefschetz_trace,
    scalar_endomorphism,
    so_volume_coefficients,
    su_volume_coefficients,
)
from utils.logging import log_command
from utils.report import emit_report

from command_modules import EXIT_OK, deliver, fail


def add_arguments(parser) -> None:
    parser.add_argument("--space", required=True, help="S^d or CP(d)")
    parser.add_argument(
        "--endo",
        default="identity",
        help="identity, or scalar=M (w -> M w on CP(d), degree M on S^d); M may be a fraction",
    )
    parser.add_argument("--volume", action="store_true", help="include the group-space volume formula")


def parse_endo(text: str) -> Fraction:
    """Scale factor of an --endo argument"""
    text = text.strip().lower()
    if text == "identity":
        return Fraction(1)
    key, _, value = text.partition("=")
    if key not in ("scalar", "degree") or not value:
        raise ParseError("unknown endomorphism", text, 0, "identity | scalar=M | degree=M")
    try:
        return Fraction(value)
    except ValueError:
        raise ParseError("invalid scale factor", text, len(key) + 1, "an integer or fraction")


def run(args, config: RunConfig) -> int:
    log_command("lefschetz", {"space": args.space, "endo": args.endo})
    try:
        space = parse_space(args.space)
        ring = build_ring(space)
        factor = parse_endo(args.endo)
        f_star = scalar_endomorphism(ring, factor)
        number = lefschetz_number(ring, f_star)
        report = {
            "space": space.text,
            "lefschetz_class": lefschetz_class(ring).to_dict(),
            "endomorphism": {"scale": str(factor)},
            "lefschetz_number": str(number),
            "trace_formula": str(lefschetz_trace(ring, f_star)),
        }
        if args.volume:
            d = space.params[0]
            formula = su_volume_coefficients(d) if space.family == "CPn" else so_volume_coefficients(d)
            report["volume_formula"] = formula.to_dict()
        deliver(emit_report(report, config.output_format), args.output)
        return EXIT_OK
    except Exception as e:
        return fail("lefschetz", e)
