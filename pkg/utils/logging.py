"""
Action-log helpers for ckforms
"""
from typing import Any, Dict, Optional

from utils.database import DEFAULT_ACTION_LOG, log_action

_action_log = DEFAULT_ACTION_LOG


def configure_action_log(path: str) -> None:
    """Set the action-log file; an empty path disables the log"""
    global _action_log
    _action_log = path


def log_command(command: str, arguments: Optional[Dict[str, Any]] = None) -> bool:
    """Log a CLI command invocation"""
    data = {
        "command": command,
        "arguments": arguments or {},
    }
    return log_action("command", data, _action_log)


def log_pair_analysis(pair: str, classification: str, reasons: list, cached: bool = False) -> bool:
    """Log the verdict for one pair"""
    data = {
        "pair": pair,
        "classification": classification,
        "reasons": [r.get("kind") for r in reasons],
        "cached": cached,
    }
    return log_action("pair_analysis", data, _action_log)


def log_catalog_entry(entry_id: str, expected: str, computed: Optional[str], error: Optional[str] = None) -> bool:
    data = {
        "entry_id": entry_id,
        "expected": expected,
        "computed": computed,
        "match": computed == expected,
        "error": error,
    }
    return log_action("catalog_entry", data, _action_log)


def log_catalog_run(n_entries: int, mismatches: int, errors: int) -> bool:
    """Log the summary of a catalog run"""
    data = {
        "n_entries": n_entries,
        "mismatches": mismatches,
        "errors": errors,
    }
    return log_action("catalog_run", data, _action_log)


def log_integration(pair: str, n_samples: int, seed: int, verdict: str, max_abs_z: Optional[float]) -> bool:
    data = {
        "pair": pair,
        "n_samples": n_samples,
        "seed": seed,
        "verdict": verdict,
        "max_abs_z": max_abs_z,
    }
    return log_action("integration", data, _action_log)


def log_cache_hit(pair: str, key: str) -> bool:
    return log_action("cache_hit", {"pair": pair, "key": key}, _action_log)


def log_error(error_type: str, error_message: str, context: Optional[Dict[str, Any]] = None) -> bool:
    """Log an error"""
    data = {
        "error_type": error_type,
        "error_message": error_message,
        "context": context or {},
    }
    return log_action("error", data, _action_log)
