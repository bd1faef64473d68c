"""
Flat-file persistence for ckforms: the verdict cache and the action log
"""
import hashlib
import json
import os
import tempfile
from datetime import datetime, timezone
from typing import Dict, Optional

from utils import __version__
from utils.errors import ReportIoError

DEFAULT_CACHE_PATH = ".ckforms_cache.json"
DEFAULT_ACTION_LOG = "ckforms_actions.jsonl"


def cache_key(pair_text: str, config, version: str = __version__) -> str:
    """Content hash of the pair string, the result-affecting config fields and the code version"""
    payload = {
        "pair": pair_text,
        "config": config.cache_key_fields(),
        "version": version,
    }
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def load_cache(path: str = DEFAULT_CACHE_PATH) -> Dict[str, Dict]:
    """Load the cache file; a missing or unreadable file is an empty cache"""
    if not path or not os.path.exists(path):
        return {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
        return data if isinstance(data, dict) else {}
    except (OSError, json.JSONDecodeError) as e:
        print(f"Error reading cache {path}: {str(e)}")
        return {}


def get_cached_verdict(key: str, path: str = DEFAULT_CACHE_PATH) -> Optional[Dict]:
    """Get a cached verdict record by key"""
    return load_cache(path).get(key)


def save_verdict(key: str, record: Dict, path: str = DEFAULT_CACHE_PATH) -> bool:
    """Store a verdict record; the file is replaced atomically"""
    if not path:
        return False
    cache = load_cache(path)
    cache[key] = record
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(prefix=".ckforms_cache.", dir=directory)
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            json.dump(cache, f, sort_keys=True, indent=1)
        os.replace(tmp, path)
        return True
    except OSError as e:
        raise ReportIoError(f"cannot write cache {path}: {e}")


def clear_cache(path: str = DEFAULT_CACHE_PATH) -> int:
    """Delete the cache file; returns the number of records removed"""
    count = len(load_cache(path))
    if path and os.path.exists(path):
        os.remove(path)
    return count


def log_action(action: str, data: Dict, path: str = DEFAULT_ACTION_LOG) -> bool:
    """Append one action record to the JSON-lines action log"""
    if not path:
        return False
    try:
        record = {
            "action": action,
            "data": data,
            "timestamp": datetime.now(timezone.utc).isoformat(),
        }
        with open(path, "a", encoding="utf-8") as f:
            f.write(json.dumps(record, sort_keys=True, default=str) + "\n")
        return True

    except Exception as e:
        print(f"Error logging action: {str(e)}")  # never fatal
        return False
