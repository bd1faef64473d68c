"""
Reductive pairs h in g: embeddings, l = h ∩ k, Killing complements and V = k⊥ ∩ h⊥.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from utils import rational
from utils.errors import (
    DegenerateForm,
    DimensionMismatch,
    IncompatiblePair,
    SignatureViolation,
    ThetaIncompatibleEmbedding,
)
from utils.families import (
    AlgebraSpec,
    CompactFactor,
    compact_structure,
    pad_upper_left,
    real_form_condition,
    real_form_subgroup_structure,
    upper_left_compatible,
)
from utils.lie_core import (
    DEFAULT_DIMENSION_CAP,
    LieAlgebraInstance,
    build_algebra,
    cartan_decomposition,
    direct_sum,
)

logger = logging.getLogger(__name__)

UPPER_LEFT = "UpperLeftBlock"
REAL_FORM = "RealFormInComplexification"
GROUP_SPACE = "DiagonalGroupSpace"
EMBEDDINGS = (UPPER_LEFT, REAL_FORM, GROUP_SPACE)

REAL_FORM_PAIRS = {
    ("SL_C", "SL_R"),
    ("SL_C", "SU"),
    ("SO_C", "SO"),
    ("SO_C", "SOSTAR"),
    ("SP_C", "SP"),
}

# families where h may be a block product H1 x H2 filling the diagonal
BLOCK_PRODUCT_FAMILIES = ("SL_R", "SO_C")


@dataclass(frozen=True)
class PairSpec:
    """h in g; h_second, when set, is a second diagonal block so that h = h_spec x h_second"""

    g_spec: AlgebraSpec
    h_spec: AlgebraSpec
    embedding: str
    h_second: Optional[AlgebraSpec] = None

    def __post_init__(self):
        if self.embedding not in EMBEDDINGS:
            raise IncompatiblePair(f"unknown embedding {self.embedding!r}")
        if self.embedding == GROUP_SPACE and self.g_spec != self.h_spec:
            raise IncompatiblePair("a group space pairs H with itself")
        if self.h_second is not None:
            families = {self.g_spec.family, self.h_spec.family, self.h_second.family}
            if self.embedding != UPPER_LEFT or len(families) != 1 or self.g_spec.family not in BLOCK_PRODUCT_FAMILIES:
                raise IncompatiblePair(f"block products are supported for {', '.join(BLOCK_PRODUCT_FAMILIES)} only")
            if self.h_spec.size + self.h_second.size != self.g_spec.size:
                raise IncompatiblePair(f"{self.h_spec.text}x{self.h_second.text} does not fill {self.g_spec.text}")

    @property
    def h_factors(self) -> Tuple[AlgebraSpec, ...]:
        return (self.h_spec,) if self.h_second is None else (self.h_spec, self.h_second)

    @property
    def text(self) -> str:
        if self.embedding == GROUP_SPACE:
            return f"GROUP({self.h_spec.text})"
        return f"{self.g_spec.text}/{'x'.join(h.text for h in self.h_factors)}"

    def __str__(self) -> str:
        return self.text


def infer_embedding(g_spec: AlgebraSpec, h_spec: AlgebraSpec) -> str:
    if (g_spec.family, h_spec.family) in REAL_FORM_PAIRS and g_spec.size == h_spec.size:
        return REAL_FORM
    return UPPER_LEFT


@dataclass(frozen=True, eq=False)
class Subspace:
    """Rows are exact coordinates in the ambient g-basis; rows are independent"""

    ambient_dim: int
    basis: rational.Matrix

    def __post_init__(self):
        if self.basis and rational.rank(self.basis) != len(self.basis):
            raise DimensionMismatch("subspace basis rows are dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def row_space(self) -> rational.RowSpace:
        return rational.RowSpace(self.basis, self.ambient_dim)

    def same_span(self, other: "Subspace") -> bool:
        return rational.row_space(self.basis) == rational.row_space(other.basis)


@dataclass(frozen=True, eq=False)
class ReductivePair:
    spec: PairSpec
    g: LieAlgebraInstance
    h_subspace: Subspace
    l_subspace: Subspace
    V: Subspace
    dim_GH: int
    q_fiber: int
    p_degree: int
    l_structure: List[CompactFactor] = field(default_factory=list)
    seed_flips: List[List[int]] = field(default_factory=list)

    def dims(self) -> Dict[str, int]:
        return {
            "g": self.g.dim,
            "h": self.h_subspace.dim,
            "k": len(self.g.k_indices),
            "l": self.l_subspace.dim,
            "V": self.V.dim,
            "p": self.p_degree,
            "q": self.q_fiber,
        }


def orthogonal_complement(s: Subspace, form: rational.Matrix) -> Subspace:
    """{x : B(v, x) = 0 for all v in s}; B must be nondegenerate"""
    if rational.det(form) == 0:
        raise DegenerateForm("bilinear form is degenerate")
    if not s.basis:
        return Subspace(s.ambient_dim, rational.identity(s.ambient_dim))
    conditions = [rational.matvec(rational.transpose(form), v) for v in s.basis]
    return Subspace(s.ambient_dim, rational.nullspace(conditions))


def _unit_vectors(indices: List[int], dim: int) -> rational.Matrix:
    rows = []
    for i in indices:
        v = [Fraction(0)] * dim
        v[i] = Fraction(1)
        rows.append(v)
    return rows


def compute_V(g: LieAlgebraInstance, h: Subspace, l: Subspace) -> Subspace:
    """V = k⊥ ∩ h⊥ with its dimension and positivity checks"""
    form = g.killing
    k_rows = _unit_vectors(g.k_indices, g.dim)
    conditions = [rational.matvec(form, v) for v in k_rows + h.basis]
    v_rows = rational.row_space(rational.nullspace(conditions))
    expected = (g.dim - h.dim) - (len(k_rows) - l.dim)
    if len(v_rows) != expected:
        raise DimensionMismatch(f"dim V = {len(v_rows)}, expected {expected}")
    sig = rational.signature(rational.gram(v_rows, form)) if v_rows else (0, 0, 0)
    if sig != (len(v_rows), 0, 0):
        raise SignatureViolation(f"Killing form on V has signature {sig}")
    return Subspace(g.dim, v_rows)


def _projections(g: LieAlgebraInstance, rows: rational.Matrix):
    k_set = set(g.k_indices)
    k_part = [[x if i in k_set else Fraction(0) for i, x in enumerate(r)] for r in rows]
    p_part = [[Fraction(0) if i in k_set else x for i, x in enumerate(r)] for r in rows]
    return k_part, p_part


def _check_theta_stable(g: LieAlgebraInstance, h_rows: rational.Matrix) -> None:
    span = rational.RowSpace(h_rows, g.dim)
    for row in h_rows:
        image = [x * s for x, s in zip(row, g.theta_signature)]
        if not span.contains(image):
            raise ThetaIncompatibleEmbedding("theta does not preserve the embedded h")


def _check_subalgebra(g: LieAlgebraInstance, h_rows: rational.Matrix) -> None:
    span = rational.RowSpace(h_rows, g.dim)
    for i, x in enumerate(h_rows):
        for y in h_rows[i + 1:]:
            if not span.contains(g.bracket(x, y)):
                raise IncompatiblePair("embedded h is not closed under the bracket")


def check_l_invariance(rp: ReductivePair) -> bool:
    """[l, V] lies in V exactly"""
    span = rp.V.row_space()
    return all(span.contains(rp.g.bracket(x, v)) for x in rp.l_subspace.basis for v in rp.V.basis)


def _boundary_seed(g_spec: AlgebraSpec, h_spec: AlgebraSpec) -> List[List[int]]:
    """Sign flips on the two matrix units around the h-block boundary"""
    b = h_spec.n_units
    if b >= g_spec.n_units:
        return []
    w = h_spec.unit_width
    return [[u * w + t for u in (b - 1, b) for t in range(w)]]


def _block_product(ps: PairSpec, g: LieAlgebraInstance, dimension_cap: int):
    """h_spec in the upper-left block and h_second in the lower-right one"""
    first = build_algebra(ps.h_spec, dimension_cap)
    second = build_algebra(ps.h_second, dimension_cap)
    offset = first.matrix_size
    h_rows = [g.coordinates(pad_upper_left(x, g.matrix_size)) for x in first.basis]
    for x in second.basis:
        placed = np.zeros((g.matrix_size, g.matrix_size), dtype=np.int64)
        placed[offset:, offset:] = x
        h_rows.append(g.coordinates(placed))
    l_structure = list(compact_structure(ps.h_spec))
    l_structure += [f.shifted(ps.h_spec.n_units) for f in compact_structure(ps.h_second)]
    return h_rows, l_structure, _boundary_seed(ps.g_spec, ps.h_spec)


def _upper_left(ps: PairSpec, g: LieAlgebraInstance, dimension_cap: int):
    if ps.h_second is not None:
        return _block_product(ps, g, dimension_cap)
    if not upper_left_compatible(ps.g_spec, ps.h_spec) or ps.g_spec.unit_width != ps.h_spec.unit_width:
        raise IncompatiblePair(f"no block embedding of {ps.h_spec.text} in {ps.g_spec.text}")
    h_alg = build_algebra(ps.h_spec, dimension_cap)
    h_rows = [g.coordinates(pad_upper_left(x, g.matrix_size)) for x in h_alg.basis]
    l_structure = list(compact_structure(ps.h_spec))
    return h_rows, l_structure, _boundary_seed(ps.g_spec, ps.h_spec)


def _real_form(ps: PairSpec, g: LieAlgebraInstance):
    condition = real_form_condition(ps.g_spec, ps.h_spec)
    images = np.stack([condition(x).reshape(-1) for x in g.basis], axis=1)
    images = images[np.any(images != 0, axis=1)]
    images = np.unique(images, axis=0) if len(images) else images
    h_rows: rational.Matrix = []
    for part in (g.k_indices, g.p_indices):
        sub = images[:, part] if len(images) else np.zeros((0, len(part)), dtype=np.int64)
        rows = rational.to_fraction_matrix(sub.tolist())
        null = rational.nullspace(rows, n_cols=len(part)) if rows else rational.identity(len(part))
        for vec in rational.row_space(null):
            full = [Fraction(0)] * g.dim
            for idx, x in zip(part, vec):
                full[idx] = x
            h_rows.append(full)
    if len(h_rows) != ps.h_spec.dimension:
        raise ThetaIncompatibleEmbedding(
            f"{ps.h_spec.text} cut out of {ps.g_spec.text} has dimension {len(h_rows)}, expected {ps.h_spec.dimension}"
        )
    return h_rows, real_form_subgroup_structure(ps.g_spec, ps.h_spec), []


def embed_pair(ps: PairSpec, dimension_cap: int = DEFAULT_DIMENSION_CAP) -> ReductivePair:
    logger.info("embedding %s (%s)", ps.text, ps.embedding)
    if ps.embedding == GROUP_SPACE:
        h_alg = build_algebra(ps.h_spec, dimension_cap)
        if 2 * h_alg.dim > dimension_cap:
            raise IncompatiblePair(f"GROUP({ps.h_spec.text}) exceeds the dimension cap")
        g = direct_sum(h_alg, h_alg)
        size = h_alg.matrix_size
        h_rows = []
        for x in h_alg.basis:
            doubled = np.zeros((2 * size, 2 * size), dtype=np.int64)
            doubled[:size, :size] = x
            doubled[size:, size:] = x
            h_rows.append(g.coordinates(doubled))
        l_structure: List[CompactFactor] = []
        seeds: List[List[int]] = []
    else:
        g = build_algebra(ps.g_spec, dimension_cap)
        if ps.embedding == UPPER_LEFT:
            h_rows, l_structure, seeds = _upper_left(ps, g, dimension_cap)
        else:
            h_rows, l_structure, seeds = _real_form(ps, g)
    cartan_decomposition(g)
    _check_theta_stable(g, h_rows)
    _check_subalgebra(g, h_rows)
    h = Subspace(g.dim, h_rows)
    k_part, _ = _projections(g, h_rows)
    l_rows = rational.row_space([r for r in k_part if not rational.is_zero_vector(r)]) if h_rows else []
    l = Subspace(g.dim, l_rows)
    V = compute_V(g, h, l)
    dim_gh = g.dim - h.dim
    q_fiber = len(g.k_indices) - l.dim
    rp = ReductivePair(
        spec=ps,
        g=g,
        h_subspace=h,
        l_subspace=l,
        V=V,
        dim_GH=dim_gh,
        q_fiber=q_fiber,
        p_degree=dim_gh - q_fiber,
        l_structure=l_structure,
        seed_flips=seeds,
    )
    if not check_l_invariance(rp):
        raise DimensionMismatch(f"V is not Ad(L)-invariant for {ps.text}")
    logger.debug("%s dims %s", ps.text, rp.dims())
    return rp
