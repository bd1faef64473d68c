"""
Command modules for the ckforms CLI; each exposes run(args, config) -> exit status
"""
import sys
from typing import Optional

from utils.errors import CKFormsError
from utils.logging import log_error
from utils.report import write_report

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_VALIDATION = 2
EXIT_MISMATCH = 3


def deliver(data: bytes, output: Optional[str]) -> None:
    """Write report bytes to a file, or to stdout"""
    if output:
        write_report(data, output)
        print(f"💾 Report written to: {output}", file=sys.stderr)
    else:
        sys.stdout.write(data.decode("utf-8"))
        sys.stdout.flush()


def fail(command: str, error: Exception) -> int:
    """Print and log an error raised inside a command; returns its exit status"""
    if isinstance(error, CKFormsError):
        print(f"❌ Error: {str(error)}", file=sys.stderr)
        log_error(type(error).__name__, str(error), {"command": command})
        return error.exit_code
    print(f"❌ Internal error: {str(error)}", file=sys.stderr)
    log_error("internal", str(error), {"command": command})
    return EXIT_INTERNAL
