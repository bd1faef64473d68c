"""
Monte Carlo estimate of the averaged invariant form at the base point, and its vanishing test.

For u in K the pulled-back volume form of V has, at an index tuple I of the orthonormal
p-part basis, the coefficient det[ V-coordinates of Ad_u E_i, i in I ]. Averaging over Haar
measure on K gives the form up to a positive constant.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb, isfinite, sqrt
from typing import Dict, List, Optional, Tuple

import numpy as np
import scipy.linalg
import scipy.stats

from utils import rational
from utils.errors import DegreeTooLarge, ValidationError
from utils.sampling import k_structure, sample_batch

logger = logging.getLogger(__name__)

VANISH_CONSISTENT = "VanishConsistent"
NON_ZERO = "NonZero"
INCONCLUSIVE = "Inconclusive"

MIN_SAMPLES = 100
# float64 entries per minor batch
MINOR_BATCH_ELEMENTS = 4_000_000


@dataclass(frozen=True)
class AlternatingTensor:
    degree: int
    basis_dim: int
    coeffs: Dict[Tuple[int, ...], float]

    def __post_init__(self):
        if len(self.coeffs) != comb(self.basis_dim, self.degree):
            raise ValueError("coefficient count must be C(basis_dim, degree)")
        for key in self.coeffs:
            if len(key) != self.degree or any(a >= b for a, b in zip(key, key[1:])):
                raise ValueError(f"index tuple {key} is not strictly increasing")

    @classmethod
    def from_values(cls, degree: int, basis_dim: int, values) -> "AlternatingTensor":
        keys = combinations(range(basis_dim), degree)
        return cls(degree, basis_dim, {k: float(v) for k, v in zip(keys, values)})

    def values(self) -> np.ndarray:
        return np.array([self.coeffs[k] for k in sorted(self.coeffs)])

    def max_abs_diff(self, other: "AlternatingTensor") -> float:
        return float(np.max(np.abs(self.values() - other.values()))) if self.coeffs else 0.0

    def to_dict(self) -> Dict[str, float]:
        return {",".join(str(i) for i in k): v for k, v in sorted(self.coeffs.items())}


@dataclass(frozen=True)
class IntegrationReport:
    pair: str
    n_samples: int
    seed: int
    estimate: AlternatingTensor
    std_errors: AlternatingTensor
    max_abs_z: float
    verdict: str
    thresholds: Tuple[float, float] = (3.0, 5.0)
    z_scores: Tuple[float, ...] = field(default=(), repr=False)

    def to_dict(self, full: bool = False) -> dict:
        finite = isfinite(self.max_abs_z)
        out = {
            "n_samples": self.n_samples,
            "seed": self.seed,
            "degree": self.estimate.degree,
            "basis_dim": self.estimate.basis_dim,
            "n_coefficients": len(self.estimate.coeffs),
            "max_abs_z": self.max_abs_z if finite else None,
            "infinite_z": not finite,
            "verdict": self.verdict,
            "thresholds": list(self.thresholds),
            "bonferroni_p": bonferroni_p(self.max_abs_z, len(self.estimate.coeffs)),
        }
        if full:
            out["estimate"] = self.estimate.to_dict()
            out["std_errors"] = self.std_errors.to_dict()
        return out


def bonferroni_p(max_abs_z: float, n_tests: int) -> float:
    """Two-sided p-value of the largest |z| under the null, Bonferroni corrected"""
    if not isfinite(max_abs_z):
        return 0.0
    return float(min(1.0, n_tests * 2.0 * scipy.stats.norm.sf(max_abs_z)))


@dataclass(frozen=True, eq=False)
class FormContext:
    """Float data for one pair: orthonormal p-part basis (V first) and the projection onto V"""

    degree: int
    basis_dim: int
    frames: np.ndarray
    v_functional: np.ndarray
    combos: np.ndarray


def _orthonormalize(rows: rational.Matrix, form: np.ndarray) -> np.ndarray:
    if not rows:
        return np.zeros((0, form.shape[0]))
    y = np.array([[float(x) for x in r] for r in rows])
    gram = y @ form @ y.T
    chol = np.linalg.cholesky(gram)
    return scipy.linalg.solve_triangular(chol, y, lower=True)


@lru_cache(maxsize=32)
def prepare_form_context(rp) -> FormContext:
    g = rp.g
    form_exact = g.killing
    form = np.array([[float(x) for x in row] for row in form_exact])
    k_rows = [[1 if i == k else 0 for i in range(g.dim)] for k in g.k_indices]
    v_rows = rp.V.basis
    conditions = [rational.matvec(form_exact, rational.to_fraction_matrix([r])[0]) for r in k_rows]
    conditions += [rational.matvec(form_exact, r) for r in v_rows]
    complement = rational.row_space(rational.nullspace(conditions)) if conditions else rational.identity(g.dim)
    on_v = _orthonormalize(v_rows, form)
    on_c = _orthonormalize(complement, form)
    on = np.vstack([on_v, on_c])
    basis = g.basis.astype(float)
    frames = np.einsum("ik,kab->iab", on, basis)
    inv_norms = 1.0 / np.array(g.norms, dtype=float)
    v_functional = np.einsum("kab,k,kl,jl->abj", basis, inv_norms, form, on_v)
    degree, basis_dim = on_v.shape[0], on.shape[0]
    combos = np.array(list(combinations(range(basis_dim), degree)), dtype=np.intp).reshape(-1, degree)
    return FormContext(degree, basis_dim, frames, v_functional, combos)


def _minors(ctx: FormContext, projected: np.ndarray) -> np.ndarray:
    """projected has shape (s, p, basis_dim); returns (s, C) minors over ctx.combos"""
    s = projected.shape[0]
    p = ctx.degree
    n_combos = len(ctx.combos)
    out = np.empty((s, n_combos))
    step = max(1, MINOR_BATCH_ELEMENTS // max(1, s * p * p))
    for start in range(0, n_combos, step):
        idx = ctx.combos[start:start + step]
        sub = projected[:, :, idx].transpose(0, 2, 1, 3)
        out[:, start:start + step] = np.linalg.det(sub) if p else 1.0
    return out


def _batch_coefficients(ctx: FormContext, samples: np.ndarray) -> np.ndarray:
    moved = np.einsum("sab,ibc->siac", samples, ctx.frames)
    moved = np.einsum("siac,sdc->siad", moved, samples)
    projected = np.einsum("siad,adj->sji", moved, ctx.v_functional)
    return _minors(ctx, projected)


def pullback_form(u: np.ndarray, rp) -> AlternatingTensor:
    ctx = prepare_form_context(rp)
    values = _batch_coefficients(ctx, np.asarray(u, dtype=float)[None])[0]
    return AlternatingTensor.from_values(ctx.degree, ctx.basis_dim, values)


@dataclass(frozen=True)
class _Moments:
    n: int
    mean: np.ndarray
    m2: np.ndarray


def _merge(a: _Moments, b: _Moments) -> _Moments:
    n = a.n + b.n
    delta = b.mean - a.mean
    mean = a.mean + delta * (b.n / n)
    m2 = a.m2 + b.m2 + delta * delta * (a.n * b.n / n)
    return _Moments(n, mean, m2)


def _tree_reduce(parts: List[_Moments]) -> _Moments:
    if len(parts) == 1:
        return parts[0]
    mid = len(parts) // 2
    return _merge(_tree_reduce(parts[:mid]), _tree_reduce(parts[mid:]))


def _chunk_moments(rp, ctx: FormContext, seed_seq: np.random.SeedSequence, size: int) -> _Moments:
    rng = np.random.Generator(np.random.Philox(seed_seq))
    samples = sample_batch(k_structure(rp), rng, size)
    values = _batch_coefficients(ctx, samples)
    mean = values.mean(axis=0)
    m2 = ((values - mean) ** 2).sum(axis=0)
    return _Moments(size, mean, m2)


def z_scores(estimate: np.ndarray, errors: np.ndarray, zero_tol: float) -> np.ndarray:
    z = np.empty_like(estimate)
    for i, (e, se) in enumerate(zip(estimate, errors)):
        if se <= zero_tol:
            z[i] = 0.0 if abs(e) <= zero_tol else np.inf
        else:
            z[i] = abs(e) / se
    return z


def vanishing_test(report: IntegrationReport, low: Optional[float] = None, high: Optional[float] = None) -> str:
    low = report.thresholds[0] if low is None else low
    high = report.thresholds[1] if high is None else high
    return classify_z(report.max_abs_z, low, high)


def classify_z(max_abs_z: float, low: float = 3.0, high: float = 5.0) -> str:
    if max_abs_z <= low:
        return VANISH_CONSISTENT
    if max_abs_z >= high:
        return NON_ZERO
    return INCONCLUSIVE


def average_form(rp, n: int, seed: int = 0, config=None) -> IntegrationReport:
    """Mean of pullback_form over n Haar samples of K, with standard errors"""
    if n < MIN_SAMPLES:
        raise ValidationError(f"at least {MIN_SAMPLES} samples are required, got {n}")
    chunk_size = config.chunk_size if config else 1000
    workers = config.workers if config else 1
    cap = config.coefficient_cap if config else 10**6
    zero_tol = config.zero_tol if config else 1e-10
    low = config.threshold_low if config else 3.0
    high = config.threshold_high if config else 5.0
    ctx = prepare_form_context(rp)
    n_coeffs = comb(ctx.basis_dim, ctx.degree)
    if n_coeffs > cap:
        raise DegreeTooLarge(f"C({ctx.basis_dim},{ctx.degree}) = {n_coeffs} exceeds the cap {cap}")
    sizes = [min(chunk_size, n - start) for start in range(0, n, chunk_size)]
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    logger.info("averaging %s over %d samples in %d chunks", rp.spec.text, n, len(sizes))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _chunk_moments(rp, ctx, *job), zip(streams, sizes)))
    else:
        parts = [_chunk_moments(rp, ctx, s, size) for s, size in zip(streams, sizes)]
    total = _tree_reduce(parts)
    errors = np.sqrt(total.m2 / (n - 1)) / sqrt(n)
    z = z_scores(total.mean, errors, zero_tol)
    max_abs_z = float(np.max(z)) if len(z) else 0.0
    estimate = AlternatingTensor.from_values(ctx.degree, ctx.basis_dim, total.mean)
    std_errors = AlternatingTensor.from_values(ctx.degree, ctx.basis_dim, errors)
    return IntegrationReport(
        pair=rp.spec.text,
        n_samples=n,
        seed=seed,
        estimate=estimate,
        std_errors=std_errors,
        max_abs_z=max_abs_z,
        verdict=classify_z(max_abs_z, low, high),
        thresholds=(low, high),
        z_scores=tuple(float(x) for x in z),
    )
