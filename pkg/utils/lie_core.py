"""
Lie algebra instances: exact structure constants, Killing form and Cartan decomposition.

Structure constants are kept as an integer tensor over one common denominator, so every
quantity derived here is an exact rational.
"""
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import List, Optional, Sequence, Tuple

import numpy as np

from utils import rational
from utils.errors import DimensionCapExceeded, DimensionMismatch, SignatureViolation
from utils.families import AlgebraSpec, compact_structure, family_basis

logger = logging.getLogger(__name__)

DEFAULT_DIMENSION_CAP = 256
STRUCTURE_CHUNK = 16


@dataclass(frozen=True, eq=False)
class LieAlgebraInstance:
    """A real matrix Lie algebra with a theta-adapted integer basis.

    basis has shape (d, N, N); theta_signature holds +1 on k and -1 on the p-part.
    structure_constants[i, j, k] / denominator is the coefficient of X_k in [X_i, X_j].
    """

    specs: Tuple[AlgebraSpec, ...]
    basis: np.ndarray
    theta_signature: Tuple[int, ...]
    norms: Tuple[int, ...]
    structure_constants: np.ndarray
    denominator: int
    killing: rational.Matrix = field(repr=False)

    @property
    def spec(self) -> AlgebraSpec:
        return self.specs[0]

    @property
    def dim(self) -> int:
        return len(self.theta_signature)

    @property
    def matrix_size(self) -> int:
        return self.basis.shape[1]

    @property
    def k_indices(self) -> List[int]:
        return [i for i, s in enumerate(self.theta_signature) if s == 1]

    @property
    def p_indices(self) -> List[int]:
        return [i for i, s in enumerate(self.theta_signature) if s == -1]

    @property
    def name(self) -> str:
        return " + ".join(s.text for s in self.specs)

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        return Fraction(int(self.structure_constants[i, j, k]), self.denominator)

    def coordinates(self, matrix: np.ndarray) -> rational.Vector:
        """Exact coordinates of an integer matrix in the basis"""
        m = np.asarray(matrix, dtype=np.int64)
        raw = np.einsum("kab,ab->k", self.basis, m)
        coords = [Fraction(int(r), n) for r, n in zip(raw, self.norms)]
        scale = lcm(*[c.denominator for c in coords]) if coords else 1
        rebuilt = np.einsum("k,kab->ab", np.array([int(c * scale) for c in coords], dtype=np.int64), self.basis)
        if not np.array_equal(rebuilt, scale * m):
            raise DimensionMismatch(f"matrix is not in {self.name}")
        return coords

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> rational.Vector:
        """[x, y] for coordinate vectors"""
        out = [Fraction(0)] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in xs:
            for j, b in ys:
                row = self.structure_constants[i, j]
                for k in np.flatnonzero(row):
                    out[k] += a * b * int(row[k])
        return [c / self.denominator for c in out]

    def ad_matrix(self, i: int) -> rational.Matrix:
        """ad(X_i) with columns the coordinates of [X_i, X_j]"""
        c = self.structure_constants[i]
        return [[Fraction(int(c[j, k]), self.denominator) for j in range(self.dim)] for k in range(self.dim)]

    def compact_factors(self):
        """K as compact factors; direct sums place each summand on its own block with its own det groups"""
        factors, offset = [], 0
        for block, spec in enumerate(self.specs):
            for f in compact_structure(spec):
                shifted = f.shifted(offset // f.width)
                if f.det_group is not None:
                    shifted = replace(shifted, det_group=f"{f.det_group}{block}")
                factors.append(shifted)
            offset += spec.real_size
        return factors


def _structure_tensor(
    basis: np.ndarray, norms: np.ndarray, chunk: int = STRUCTURE_CHUNK
) -> Tuple[np.ndarray, int]:
    """Integer structure constants scaled by a common denominator.

    Brackets are formed for a block of rows i at a time so the int64 intermediate stays at
    chunk * dim * size^2 entries.
    """
    dim = basis.shape[0]
    denominator = reduce(lcm, (int(n) for n in norms), 1)
    multipliers = (denominator // norms)[None, None, :]
    scaled = np.empty((dim, dim, dim), dtype=np.int64)
    step = max(1, chunk)
    for start in range(0, dim, step):
        rows = basis[start:start + step]
        brackets = np.einsum("iab,jbc->ijac", rows, basis) - np.einsum("jab,ibc->ijac", basis, rows)
        block = np.einsum("ijab,kab->ijk", brackets, basis) * multipliers
        rebuilt = np.einsum("ijk,kab->ijab", block, basis)
        if not np.array_equal(rebuilt, denominator * brackets):
            raise SignatureViolation("basis is not closed under the bracket")
        scaled[start:start + step] = block
    return scaled, denominator


def _killing_from_tensor(scaled: np.ndarray, denominator: int) -> rational.Matrix:
    numerators = np.einsum("ikl,jlk->ij", scaled, scaled)
    d2 = denominator * denominator
    return [[Fraction(int(x), d2) for x in row] for row in numerators]


def _instance(specs: Tuple[AlgebraSpec, ...], k_list, p_list) -> LieAlgebraInstance:
    basis = np.stack(list(k_list) + list(p_list)).astype(np.int64)
    theta = tuple([1] * len(k_list) + [-1] * len(p_list))
    if not all(np.array_equal(-x.T, s * x) for x, s in zip(basis, theta)):
        raise SignatureViolation("basis element is not a theta eigenvector")
    norms = np.einsum("kab,kab->k", basis, basis)
    gram = np.einsum("iab,jab->ij", basis, basis)
    if np.count_nonzero(gram - np.diag(norms)):
        raise SignatureViolation("basis is not Frobenius orthogonal")
    scaled, denominator = _structure_tensor(basis, norms)
    killing = _killing_from_tensor(scaled, denominator)
    return LieAlgebraInstance(
        specs=specs,
        basis=basis,
        theta_signature=theta,
        norms=tuple(int(n) for n in norms),
        structure_constants=scaled,
        denominator=denominator,
        killing=killing,
    )


def build_algebra(spec: AlgebraSpec, dimension_cap: int = DEFAULT_DIMENSION_CAP) -> LieAlgebraInstance:
    if spec.dimension > dimension_cap:
        raise DimensionCapExceeded(f"{spec.text} has dimension {spec.dimension} > cap {dimension_cap}")
    k_list, p_list = family_basis(spec)
    if len(k_list) + len(p_list) != spec.dimension:
        raise SignatureViolation(f"{spec.text}: built {len(k_list) + len(p_list)} elements, expected {spec.dimension}")
    logger.debug("building %s: dim k=%d, dim p=%d", spec.text, len(k_list), len(p_list))
    return _instance((spec,), k_list, p_list)


def _block_diag(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0] + b.shape[0],) * 2, dtype=np.int64)
    out[: a.shape[0], : a.shape[0]] = a
    out[a.shape[0]:, a.shape[0]:] = b
    return out


def direct_sum(a: LieAlgebraInstance, b: LieAlgebraInstance) -> LieAlgebraInstance:
    """a + b as block-diagonal matrices, basis still k first then p-part"""
    za = np.zeros((a.matrix_size,) * 2, dtype=np.int64)
    zb = np.zeros((b.matrix_size,) * 2, dtype=np.int64)
    k_list = [_block_diag(a.basis[i], zb) for i in a.k_indices] + [_block_diag(za, b.basis[i]) for i in b.k_indices]
    p_list = [_block_diag(a.basis[i], zb) for i in a.p_indices] + [_block_diag(za, b.basis[i]) for i in b.p_indices]
    return _instance(a.specs + b.specs, k_list, p_list)


def killing_form(a: LieAlgebraInstance) -> rational.Matrix:
    """B_ij = tr(ad X_i ad X_j), exact"""
    return a.killing


def cartan_decomposition(a: LieAlgebraInstance) -> Tuple[List[int], List[int]]:
    """Indices of (k, p-part); checks B < 0 on k and B > 0 on the p-part"""
    k_idx, p_idx = a.k_indices, a.p_indices
    b = a.killing
    k_sig = rational.signature([[b[i][j] for j in k_idx] for i in k_idx])
    p_sig = rational.signature([[b[i][j] for j in p_idx] for i in p_idx])
    if k_sig != (0, len(k_idx), 0):
        raise SignatureViolation(f"{a.name}: Killing form on k has signature {k_sig}")
    if p_sig != (len(p_idx), 0, 0):
        raise SignatureViolation(f"{a.name}: Killing form on the p-part has signature {p_sig}")
    return k_idx, p_idx


def check_invariants(a: LieAlgebraInstance) -> Optional[str]:
    """Jacobi identity and Ad-invariance of B on all basis triples; returns a failure message or None"""
    s = a.structure_constants
    for i in range(a.dim):
        t1 = np.einsum("jm,mkl->jkl", s[i], s)
        t2 = np.einsum("jkm,ml->jkl", s, s[:, i, :])
        t3 = np.einsum("km,mjl->jkl", s[:, i, :], s)
        if np.count_nonzero(t1 + t2 + t3):
            return f"Jacobi identity fails for X_{i}"
    d2 = a.denominator * a.denominator
    b_int = np.array([[int(x * d2) for x in row] for row in a.killing], dtype=np.int64)
    invariance = np.einsum("xym,mz->xyz", s, b_int) + np.einsum("xzm,ym->xyz", s, b_int)
    if np.count_nonzero(invariance):
        return "Killing form is not ad-invariant"
    return None
