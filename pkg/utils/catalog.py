"""
The catalog of classified pairs and the pipeline driver that runs it.

Each entry instantiates a family of pairs at small parameters. run_catalog classifies every
entry (through the flat-file cache when enabled) and compares with the expected column.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from utils import database
from utils.config import RunConfig, read_config_file
from utils.errors import CKFormsError, ConfigError
from utils.grammar import parse_pair
from utils.logging import log_cache_hit, log_catalog_entry, log_catalog_run, log_pair_analysis
from utils.obstructions import CLASSIFICATIONS, classify
from utils.pairs import PairSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    pair: PairSpec
    paper_label: str
    expected: str

    def __post_init__(self):
        if self.expected not in CLASSIFICATIONS:
            raise ConfigError(f"entry {self.id}: expected must be one of {', '.join(CLASSIFICATIONS)}")
        if not self.paper_label:
            raise ConfigError(f"entry {self.id}: paper_label must be nonempty")

    @classmethod
    def from_text(cls, id: str, pair: str, paper_label: str, expected: str) -> "CatalogEntry":
        return cls(id, parse_pair(pair), paper_label, expected)


_BUILTIN_ROWS = (
    ("vf1-1a", "SO(1,2)/SO(1,1)", "VanishingForm1 case (1)", "NoCompactForms"),
    ("vf1-1b", "SO(3,2)/SO(3,1)", "VanishingForm1 case (1)", "NoCompactForms"),
    ("vf1-1c", "SO(3,4)/SO(3,2)", "VanishingForm1 case (1)", "NoCompactForms"),
    ("vf1-2a", "SL_R(3)/SL_R(2)", "VanishingForm1 case (2)", "NoCompactForms"),
    ("vf1-2b", "SL_R(4)/SL_R(2)", "VanishingForm1 case (2)", "NoCompactForms"),
    ("vf1-2c", "SL_R(6)/SL_R(4)", "VanishingForm1 case (2)", "NoCompactForms"),
    ("vf2-3a", "SO_C(3)/SO(1,2)", "VanishingForm2 case (3)", "NoCompactForms"),
    ("vf2-3b", "SO_C(4)/SO(2,2)", "VanishingForm2 case (3)", "NoCompactForms"),
    ("vf2-3c", "SO_C(5)/SO(3,2)", "VanishingForm2 case (3)", "NoCompactForms"),
    ("vf2-4a", "SL_C(2)/SU(1,1)", "VanishingForm2 case (4)", "NoCompactForms"),
    ("vf2-4b", "SL_C(3)/SU(2,1)", "VanishingForm2 case (4)", "NoCompactForms"),
    ("vf2-5a", "SP_C(2)/SP(1,1)", "VanishingForm2 case (5)", "NoCompactForms"),
    ("vf2-6a", "SO_C(4)/SOSTAR(4)", "VanishingForm2 case (6)", "NoCompactForms"),
    ("vf2-6b", "SO_C(6)/SOSTAR(6)", "VanishingForm2 case (6)", "NoCompactForms"),
    ("vf3-7a", "SL_R(4)/SO(2,2)", "VanishingForm3 case (7)", "NoCompactForms"),
    ("vf3-7b", "SL_R(5)/SO(3,2)", "VanishingForm3 case (7)", "NoCompactForms"),
    ("vf3-8a", "SL_H(4)/SP(2,2)", "VanishingForm3 case (8)", "NoCompactForms"),
    ("ext-1a", "SO_C(3)/SO_C(2)", "VanishingForm1 extension, SO(n,C)/SO(m,C) m even", "NoCompactForms"),
    ("ext-1b", "SO_C(5)/SO_C(2)", "VanishingForm1 extension, SO(n,C)/SO(m,C) m even", "NoCompactForms"),
    ("ext-1c", "SO_C(6)/SO_C(4)", "VanishingForm1 extension, SO(n,C)/SO(m,C) m even", "NoCompactForms"),
    ("ext-2a", "SO_C(5)/SO_C(2)xSO_C(3)", "VanishingForm1 extension, SO(n,C)/SO(m,C)xSO(n-m,C) n odd", "NoCompactForms"),
    ("ext-3a", "SL_R(5)/SL_R(2)xSL_R(3)", "VanishingForm1 extension, SL(n,R)/SL(m,R)xSL(n-m,R) n odd", "NoCompactForms"),
    ("rv-1a", "SO(2,2)/SO(2,1)", "RationalityVolume case (1)", "RationalVolume"),
    ("rv-1b", "SO(4,2)/SO(4,1)", "RationalityVolume case (1)", "RationalVolume"),
    ("rv-2a", "SL_R(4)/SL_R(3)", "RationalityVolume case (2)", "RationalVolume"),
    ("rv-2b", "SL_R(6)/SL_R(5)", "RationalityVolume case (2)", "RationalVolume"),
    ("rv-3a", "GROUP(SL_R(2))", "RationalityVolume case (3)", "RationalVolume"),
    ("rv-3b", "GROUP(SU(2,1))", "RationalityVolume case (3)", "RationalVolume"),
    ("unk-1", "SL_R(5)/SL_R(3)", "VanishingForm1 case (2), m odd", "Unknown"),
    ("unk-2", "SO_C(8)/SO(7,1)", "VanishingForm2, H_U/L = S^7", "Unknown"),
)


def builtin_catalog() -> List[CatalogEntry]:
    return [CatalogEntry.from_text(*row) for row in _BUILTIN_ROWS]


def load_catalog(path: Optional[str] = None) -> List[CatalogEntry]:
    """Built-in catalog, or the [[entry]] tables of a TOML file"""
    if not path:
        return builtin_catalog()
    data = read_config_file(path)
    rows = data.get("entry")
    if not isinstance(rows, list) or not rows:
        raise ConfigError(f"{path} has no [[entry]] tables")
    entries = []
    for n, row in enumerate(rows):
        missing = [k for k in ("id", "pair", "paper_label", "expected") if k not in row]
        if missing:
            raise ConfigError(f"entry {n} in {path} is missing {', '.join(missing)}")
        entries.append(CatalogEntry.from_text(str(row["id"]), row["pair"], str(row["paper_label"]), row["expected"]))
    ids = [e.id for e in entries]
    if len(set(ids)) != len(ids):
        raise ConfigError(f"duplicate entry ids in {path}")
    return entries


def analyze_pair(ps: PairSpec, config: RunConfig, use_cache: bool = True) -> Dict:
    """Verdict dict for one pair, read from or written to the cache when enabled"""
    key = None
    if use_cache and config.cache_path:
        key = database.cache_key(ps.text, config)
        cached = database.get_cached_verdict(key, config.cache_path)
        if cached is not None:
            log_cache_hit(ps.text, key)
            return cached
    verdict = classify(ps, config).to_dict()
    log_pair_analysis(ps.text, verdict["classification"], verdict["reasons"])
    if key is not None:
        database.save_verdict(key, verdict, config.cache_path)
    return verdict


@dataclass
class CatalogRow:
    entry: CatalogEntry
    verdict: Optional[Dict] = None
    error: Optional[str] = None

    @property
    def computed(self) -> Optional[str]:
        return self.verdict["classification"] if self.verdict else None

    @property
    def match(self) -> bool:
        return self.computed == self.entry.expected

    def to_dict(self) -> Dict:
        return {
            "id": self.entry.id,
            "pair": self.entry.pair.text,
            "paper_label": self.entry.paper_label,
            "expected": self.entry.expected,
            "computed": self.computed,
            "match": self.match,
            "evidence": [r["kind"] for r in self.verdict["reasons"] if r["conclusion"] == self.computed] if self.verdict else [],
            "error": self.error,
            "verdict": self.verdict,
        }


@dataclass
class CatalogReport:
    rows: List[CatalogRow] = field(default_factory=list)

    @property
    def mismatches(self) -> List[CatalogRow]:
        return [r for r in self.rows if not r.match]

    @property
    def errors(self) -> List[CatalogRow]:
        return [r for r in self.rows if r.error]

    def to_dict(self) -> Dict:
        return {
            "entries": [r.to_dict() for r in self.rows],
            "n_entries": len(self.rows),
            "n_mismatches": len(self.mismatches),
            "n_errors": len(self.errors),
        }


def _run_entry(job) -> CatalogRow:
    entry, config, use_cache = job
    try:
        return CatalogRow(entry, verdict=analyze_pair(entry.pair, config, use_cache))
    except CKFormsError as e:
        return CatalogRow(entry, error=f"{type(e).__name__}: {e}")
    except Exception as e:
        logger.exception("internal error on %s", entry.id)
        return CatalogRow(entry, error=f"internal error: {e}")


def run_catalog(config: RunConfig, entries: Optional[Sequence[CatalogEntry]] = None, use_cache: bool = True) -> CatalogReport:
    """Classify every entry; rows keep catalog order and per-entry errors do not abort the run"""
    entries = list(entries) if entries is not None else builtin_catalog()
    if config.workers > 1:
        inner = config.with_overrides(workers=1)
        jobs = [(e, inner, use_cache) for e in entries]
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(_run_entry, jobs))
    else:
        rows = [_run_entry((e, config, use_cache)) for e in entries]
    report = CatalogReport(rows)
    for row in rows:
        log_catalog_entry(row.entry.id, row.entry.expected, row.computed, row.error)
        if not row.match:
            logger.warning("%s: expected %s, computed %s", row.entry.id, row.entry.expected, row.computed)
    log_catalog_run(len(rows), len(report.mismatches), len(report.errors))
    return report
