"""
Run configuration: defaults, TOML file, environment and command-line overrides
"""
import os
import sys
from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from utils.errors import ConfigError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

CONFIG_ENV_VAR = "CKFORMS_CONFIG"
OUTPUT_FORMATS = ("json", "csv", "md")

# fields that change computed results (and therefore cache keys)
RESULT_FIELDS = (
    "mc_samples",
    "seed",
    "threshold_low",
    "threshold_high",
    "zero_tol",
    "max_flips",
    "search_cap",
    "dimension_cap",
    "coefficient_cap",
    "chunk_size",
    "use_mc",
)


@dataclass(frozen=True)
class RunConfig:
    mc_samples: int = 20000
    seed: int = 0
    threshold_low: float = 3.0
    threshold_high: float = 5.0
    zero_tol: float = 1e-10
    max_flips: int = 4
    search_cap: int = 2**20
    dimension_cap: int = 256
    coefficient_cap: int = 10**6
    chunk_size: int = 1000
    workers: int = 1
    use_mc: bool = False
    output_format: str = "json"
    cache_path: str = ".ckforms_cache.json"
    action_log: str = "ckforms_actions.jsonl"

    def __post_init__(self):
        if self.mc_samples <= 0:
            raise ConfigError("mc_samples must be positive")
        if not self.threshold_low < self.threshold_high:
            raise ConfigError("threshold_low must be below threshold_high")
        if self.threshold_low <= 0 or self.zero_tol < 0:
            raise ConfigError("thresholds must be positive")
        for name in ("max_flips", "search_cap", "dimension_cap", "coefficient_cap", "chunk_size", "workers"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"output_format must be one of {', '.join(OUTPUT_FORMATS)}")

    def cache_key_fields(self) -> Dict[str, Any]:
        return {name: getattr(self, name) for name in RESULT_FIELDS}

    def with_overrides(self, **overrides) -> "RunConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _coerce(values: Dict[str, Any]) -> Dict[str, Any]:
    known = {f.name for f in fields(RunConfig)}
    defaults = RunConfig()
    out = {}
    for key, value in values.items():
        if key not in known:
            raise ConfigError(f"unknown config key {key!r}")
        expected = type(getattr(defaults, key))
        if expected is float and isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if expected is bool and not isinstance(value, bool):
            raise ConfigError(f"{key} must be true or false")
        if not isinstance(value, expected) or (expected is int and isinstance(value, bool)):
            raise ConfigError(f"{key} must be of type {expected.__name__}")
        out[key] = value
    return out


def read_config_file(path: str) -> Dict[str, Any]:
    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"invalid TOML in {path}: {e}")
    if "ckforms" in data and isinstance(data["ckforms"], dict):
        data = data["ckforms"]
    return data


def load_config(path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """Defaults < config file (argument or CKFORMS_CONFIG) < explicit overrides"""
    load_dotenv()
    path = path or os.getenv(CONFIG_ENV_VAR)
    values: Dict[str, Any] = {}
    if path:
        values.update(_coerce(read_config_file(path)))
    if overrides:
        values.update(_coerce({k: v for k, v in overrides.items() if v is not None}))
    return RunConfig(**values)
