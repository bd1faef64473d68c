"""
catalog: classify every catalog entry and compare with the expected column
"""
import sys

from utils.catalog import load_catalog, run_catalog
from utils.config import RunConfig
from utils.logging import log_command
from utils.report import emit_report

from command_modules import EXIT_MISMATCH, EXIT_OK, deliver, fail

TABLE_COLUMNS = ("id", "pair", "paper_label", "expected", "computed", "match", "evidence", "error")


def add_arguments(parser) -> None:
    parser.add_argument("--file", help="TOML catalog with [[entry]] tables (default: built-in catalog)")


def run(args, config: RunConfig) -> int:
    log_command("catalog", {"file": args.file})
    try:
        entries = load_catalog(args.file)
        report = run_catalog(config, entries, use_cache=not args.no_cache)
        if config.output_format == "json":
            data = emit_report(report.to_dict(), "json")
        else:
            rows = [{k: row[k] for k in TABLE_COLUMNS} for row in report.to_dict()["entries"]]
            data = emit_report(rows, config.output_format)
        deliver(data, args.output)
    except Exception as e:
        return fail("catalog", e)

    for row in report.mismatches:
        detail = row.error or f"computed {row.computed}"
        print(f"❌ {row.entry.id} {row.entry.pair.text}: expected {row.entry.expected}, {detail}", file=sys.stderr)
    if report.mismatches:
        return EXIT_MISMATCH
    print(f"✅ {len(report.rows)} entries match", file=sys.stderr)
    return EXIT_OK
