"""
Exact obstructions to compact quotients and the verdict pipeline.

Channels: the rank inequality, the determinant -1 sign element in K, the complexification
criterion, the homotopy-triviality family rule and the bi-degree of the form. Monte Carlo
evidence is attached when requested but never decides a vanishing verdict.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, islice
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from utils import __version__, rational
from utils.cohomology import bidegree_of_omega, compact_dual, even_nontrivial
from utils.config import RunConfig
from utils.errors import (
    CKFormsError,
    DimensionMismatch,
    NotAComplexificationPair,
    SearchBudgetExceeded,
    UnsupportedSpace,
)
from utils.families import compact_structure, group_rank, maximal_compact_rank
from utils.pairs import GROUP_SPACE, REAL_FORM, UPPER_LEFT, PairSpec, ReductivePair, embed_pair

logger = logging.getLogger(__name__)

NO_COMPACT_FORMS = "NoCompactForms"
RATIONAL_VOLUME = "RationalVolume"
UNKNOWN = "Unknown"
NO_CONCLUSION = "NoConclusion"
CLASSIFICATIONS = (NO_COMPACT_FORMS, RATIONAL_VOLUME, UNKNOWN)

EXACT_KINDS = ("rank", "sign", "complexification", "homotopy", "bidegree")
SEARCH_CHUNK = 512


@dataclass(frozen=True)
class RankData:
    rk_G: int
    rk_K: int
    rk_H: int
    rk_L: int

    @property
    def g_defect(self) -> int:
        return self.rk_G - self.rk_K

    @property
    def h_defect(self) -> int:
        return self.rk_H - self.rk_L


@dataclass(frozen=True)
class Evidence:
    kind: str
    conclusion: str
    detail: str
    data: Dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "conclusion": self.conclusion, "detail": self.detail}


@dataclass(frozen=True)
class SignElement:
    omega_diagonal: Tuple[int, ...]
    det_on_V: int
    order_index: int = 0

    @property
    def omega(self) -> np.ndarray:
        return np.diag(np.array(self.omega_diagonal, dtype=np.int64))

    @property
    def flips(self) -> List[int]:
        return [i for i, s in enumerate(self.omega_diagonal) if s == -1]


# ---------------------------------------------------------------------------
# rank channel


def rank_data(ps: PairSpec) -> RankData:
    h = ps.h_spec
    if ps.embedding == GROUP_SPACE:
        return RankData(2 * group_rank(h), 2 * maximal_compact_rank(h), group_rank(h), maximal_compact_rank(h))
    rk_h = sum(group_rank(f) for f in ps.h_factors)
    rk_l = sum(maximal_compact_rank(f) for f in ps.h_factors)
    return RankData(group_rank(ps.g_spec), maximal_compact_rank(ps.g_spec), rk_h, rk_l)


def rank_obstruction(rd: RankData) -> Evidence:
    if rd.g_defect < rd.h_defect:
        return Evidence("rank", NO_COMPACT_FORMS, f"rk G - rk K = {rd.g_defect} < rk H - rk L = {rd.h_defect}")
    if rd.g_defect == rd.h_defect:
        return Evidence("rank", RATIONAL_VOLUME, f"rk G - rk K = rk H - rk L = {rd.g_defect}")
    return Evidence("rank", NO_CONCLUSION, f"rk G - rk K = {rd.g_defect} > rk H - rk L = {rd.h_defect}")


# ---------------------------------------------------------------------------
# sign channel


def in_maximal_compact(rp: ReductivePair, signs: Sequence[int]) -> bool:
    """Whether diag(signs) lies in the connected maximal compact K"""
    det_groups: Dict[Tuple[int, str], int] = {}
    offset_units = 0
    for spec in rp.g.specs:
        for factor in (f.shifted(offset_units) for f in compact_structure(spec)):
            unit_signs = {}
            for u in factor.units:
                block = signs[u * factor.width:(u + 1) * factor.width]
                if any(s != block[0] for s in block):
                    return False
                unit_signs[u] = block[0]
            if not factor.sign_constraints_hold(unit_signs):
                return False
            if factor.det_group:
                key = (offset_units, factor.det_group)
                det_groups[key] = det_groups.get(key, 1) * int(np.prod(list(unit_signs.values())))
        offset_units += spec.n_units
    return all(v == 1 for v in det_groups.values())


def _diagonal_action(rp: ReductivePair, signs: np.ndarray) -> Optional[np.ndarray]:
    """Signs eps with Ad_Omega X_k = eps_k X_k, or None if Ad_Omega is not diagonal on the basis"""
    basis = rp.g.basis
    outer = np.outer(signs, signs)
    images = basis * outer[None, :, :]
    flat = basis.reshape(basis.shape[0], -1)
    first = np.argmax(flat != 0, axis=1)
    eps = outer.reshape(-1)[first]
    if not np.array_equal(images, eps[:, None, None] * basis):
        return None
    return eps


def _det_on_v_fast(space: rational.RowSpace, eps: np.ndarray) -> Optional[int]:
    """det of Ad_Omega on V for a diagonal action; None when V is not preserved"""
    det = 1
    for row, pivot in zip(space.rows, space.pivots):
        support = [j for j, x in enumerate(row) if x]
        if any(eps[j] != eps[pivot] for j in support):
            return None
        det *= int(eps[pivot])
    return det


def verify_sign_element(rp: ReductivePair, omega_diagonal: Sequence[int]) -> Optional[Fraction]:
    """Independent exact check: Ad_Omega(V) ⊆ V via matrix coordinates; returns det on V or None"""
    signs = np.array(omega_diagonal, dtype=np.int64)
    if not in_maximal_compact(rp, list(omega_diagonal)):
        return None
    omega = np.diag(signs)
    g = rp.g
    images = []
    for x in g.basis:
        try:
            images.append(g.coordinates(omega @ x @ omega))
        except DimensionMismatch:
            return None
    space = rp.V.row_space()
    matrix = []
    for row in space.rows:
        image = [Fraction(0)] * g.dim
        for k, c in enumerate(row):
            if c:
                for m, a in enumerate(images[k]):
                    if a:
                        image[m] += c * a
        coords = space.coordinates(image)
        if coords is None:
            return None
        matrix.append(coords)
    return rational.det(matrix) if matrix else Fraction(1)


def candidate_count(n: int, max_flips: int, n_seeds: int = 0) -> int:
    return n_seeds + sum(comb(n, f) for f in range(min(max_flips, n) + 1))


def iter_candidates(n: int, max_flips: int, seeds: Sequence[Sequence[int]] = ()) -> Iterator[Tuple[int, ...]]:
    """Seeds first, then flip sets by size and lexicographic position"""
    for seed in seeds:
        yield tuple(seed)
    for f in range(min(max_flips, n) + 1):
        yield from combinations(range(n), f)


def _evaluate(rp: ReductivePair, space: rational.RowSpace, flips: Sequence[int]) -> Optional[int]:
    n = rp.g.matrix_size
    signs = np.ones(n, dtype=np.int64)
    signs[list(flips)] = -1
    if not in_maximal_compact(rp, signs.tolist()):
        return None
    eps = _diagonal_action(rp, signs)
    if eps is None:
        return None
    return _det_on_v_fast(space, eps)


def _search_chunk(rp: ReductivePair, space: rational.RowSpace, start: int, chunk: List[Tuple[int, ...]]) -> Optional[Tuple[int, Tuple[int, ...]]]:
    for offset, flips in enumerate(chunk):
        if _evaluate(rp, space, flips) == -1:
            return start + offset, flips
    return None


def sign_element_search(
    rp: ReductivePair, max_flips: int = 4, search_cap: int = 2**20, workers: int = 1
) -> Optional[SignElement]:
    n = rp.g.matrix_size
    total = candidate_count(n, max_flips, len(rp.seed_flips))
    if total > search_cap:
        raise SearchBudgetExceeded(f"{total} candidates exceed the cap {search_cap}")
    candidates = iter_candidates(n, max_flips, rp.seed_flips)
    space = rp.V.row_space()
    hit = None
    if workers > 1:
        chunks = []
        start = 0
        while True:
            chunk = list(islice(candidates, SEARCH_CHUNK))
            if not chunk:
                break
            chunks.append((start, chunk))
            start += len(chunk)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            found = [r for r in pool.map(lambda job: _search_chunk(rp, space, *job), chunks) if r]
        hit = min(found) if found else None
    else:
        hit = _search_chunk(rp, space, 0, list(candidates))
    if hit is None:
        logger.info("no sign element for %s among %d candidates", rp.spec.text, total)
        return None
    index, flips = hit
    signs = [1] * n
    for i in flips:
        signs[i] = -1
    det = verify_sign_element(rp, signs)
    if det != -1:
        raise CKFormsError(f"sign element {flips} failed exact re-verification (det {det})")
    logger.info("sign element for %s: flips %s", rp.spec.text, list(flips))
    return SignElement(tuple(signs), -1, index)


# ---------------------------------------------------------------------------
# complexification and homotopy channels


def complexification_criterion(ps: PairSpec) -> Evidence:
    if ps.embedding != REAL_FORM:
        raise NotAComplexificationPair(f"{ps.text} is not a real form inside its complexification")
    spaces = compact_dual(ps.h_spec)
    nontrivial = any(even_nontrivial(s) for s in spaces)
    names = " x ".join(s.text for s in spaces)
    if nontrivial:
        return Evidence(
            "complexification", NO_COMPACT_FORMS, f"even cohomology of H_U/L = {names} is nontrivial",
            {"even_nontrivial": True},
        )
    return Evidence(
        "complexification", NO_CONCLUSION, f"even cohomology of H_U/L = {names} is trivial",
        {"even_nontrivial": False},
    )


def homotopy_rule_applies(ps: PairSpec) -> bool:
    """SL_R(p+q)/SO(p,q) and SL_H(p+q)/SP(p,q) with p, q > 1"""
    if ps.embedding != UPPER_LEFT or ps.h_second is not None:
        return False
    key = (ps.g_spec.family, ps.h_spec.family)
    if key not in (("SL_R", "SO"), ("SL_H", "SP")):
        return False
    p, q = ps.h_spec.params
    return p > 1 and q > 1 and ps.g_spec.size == p + q


# ---------------------------------------------------------------------------
# verdict


@dataclass
class Verdict:
    pair: str
    embedding: str
    dims: Dict[str, int]
    rank: Dict
    sign: Dict
    complexification: Dict
    homotopy: Dict
    bidegree: Dict
    montecarlo: Optional[Dict] = None
    reasons: List[Evidence] = field(default_factory=list)

    def add(self, evidence: Evidence) -> None:
        self.reasons.append(evidence)

    @property
    def classification(self) -> str:
        if any(r.kind in EXACT_KINDS and r.conclusion == NO_COMPACT_FORMS for r in self.reasons):
            return NO_COMPACT_FORMS
        if any(r.kind == "rank" and r.conclusion == RATIONAL_VOLUME for r in self.reasons):
            return RATIONAL_VOLUME
        return UNKNOWN

    @property
    def foliation_obstructed(self) -> bool:
        return self.classification == NO_COMPACT_FORMS

    def to_dict(self) -> dict:
        return {
            "pair": self.pair,
            "dims": dict(self.dims),
            "rank": dict(self.rank),
            "sign": dict(self.sign),
            "complexification": dict(self.complexification),
            "homotopy": dict(self.homotopy),
            "bidegree": dict(self.bidegree),
            "montecarlo": dict(self.montecarlo) if self.montecarlo is not None else None,
            "classification": self.classification,
            "foliation_obstructed": self.foliation_obstructed,
            "reasons": [r.to_dict() for r in self.reasons],
            "metadata": {"embedding": self.embedding, "standard_embedding": True, "version": __version__},
        }


def classify(ps: PairSpec, config: Optional[RunConfig] = None) -> Verdict:
    config = config or RunConfig()
    rp = embed_pair(ps, config.dimension_cap)
    rd = rank_data(ps)
    rank_ev = rank_obstruction(rd)
    verdict = Verdict(
        pair=ps.text,
        embedding=ps.embedding,
        dims=rp.dims(),
        rank={"rkG": rd.rk_G, "rkK": rd.rk_K, "rkH": rd.rk_H, "rkL": rd.rk_L, "verdict": rank_ev.conclusion},
        sign={"found": False, "omega_diagonal": None, "det": None, "flips": None},
        complexification={"applicable": ps.embedding == REAL_FORM, "even_nontrivial": None},
        homotopy={"applicable": homotopy_rule_applies(ps)},
        bidegree={},
    )
    verdict.add(rank_ev)

    try:
        element = sign_element_search(rp, config.max_flips, config.search_cap, config.workers)
    except SearchBudgetExceeded as e:
        verdict.sign["error"] = str(e)
        element = None
    if element is not None:
        verdict.sign = {
            "found": True,
            "omega_diagonal": list(element.omega_diagonal),
            "det": element.det_on_V,
            "flips": element.flips,
        }
        verdict.add(Evidence("sign", NO_COMPACT_FORMS, f"Omega with flips {element.flips} has det -1 on V"))

    if ps.embedding == REAL_FORM:
        ev = complexification_criterion(ps)
        verdict.complexification["even_nontrivial"] = ev.data["even_nontrivial"]
        verdict.add(ev)

    if verdict.homotopy["applicable"]:
        verdict.add(Evidence("homotopy", NO_COMPACT_FORMS, "H_U/L is homotopically trivial in G_U/K"))

    try:
        bideg = bidegree_of_omega(ps)
        verdict.bidegree = bideg.to_dict()
        if bideg.vanish_signal:
            verdict.add(Evidence("bidegree", NO_COMPACT_FORMS, f"negative bi-degree ({bideg.a}, {bideg.b})"))
    except UnsupportedSpace as e:
        verdict.bidegree = {"error": str(e)}

    if config.use_mc:
        from utils.integrator import average_form

        report = average_form(rp, config.mc_samples, config.seed, config)
        verdict.montecarlo = report.to_dict()
        verdict.add(Evidence("montecarlo", report.verdict, f"max |z| = {report.max_abs_z:.3f} over {report.n_samples} samples"))

    logger.info("%s -> %s", ps.text, verdict.classification)
    return verdict
