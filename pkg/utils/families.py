"""
Classical real Lie algebra families in realified matrix form.

Conventions (fixed once for the whole package):
- complex a+bi becomes the 2x2 block a*I + b*J, J = [[0,-1],[1,0]], laid out with np.kron(A, I2) + np.kron(B, J2)
- quaternion a+bi+cj+dk becomes a*1 + b*L_i + c*L_j + d*L_k, the left-multiplication matrices on (1,i,j,k)
- the Cartan involution is theta(X) = -X^T on realified matrices

Every basis built here is integer valued, pairwise orthogonal for the Frobenius
product, and made of theta eigenvectors, listed k first and then the p-part.
"""
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from utils.errors import IncompatiblePair, UnsupportedFamily

FAMILIES = ("SL_R", "SL_C", "SL_H", "SO", "SO_C", "SU", "SP", "SP_C", "SOSTAR")

# real coordinates per matrix entry
UNIT_WIDTH = {"SL_R": 1, "SO": 1, "SL_C": 2, "SU": 2, "SO_C": 2, "SP_C": 2, "SOSTAR": 2, "SL_H": 4, "SP": 4}

I2 = np.eye(2, dtype=np.int64)
J2 = np.array([[0, -1], [1, 0]], dtype=np.int64)

L_I = np.array([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], dtype=np.int64)
L_J = np.array([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]], dtype=np.int64)
L_K = np.array([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], dtype=np.int64)
QUATERNION_UNITS = (np.eye(4, dtype=np.int64), L_I, L_J, L_K)


@dataclass(frozen=True)
class AlgebraSpec:
    """A classical real Lie algebra: family name plus positive integer parameters"""

    family: str
    params: Tuple[int, ...]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedFamily(f"unknown family {self.family!r}")
        expected = 2 if self.family in ("SO", "SU", "SP") else 1
        if len(self.params) != expected:
            raise UnsupportedFamily(f"{self.family} takes {expected} parameter(s), got {len(self.params)}")
        if any(p < 0 for p in self.params):
            raise UnsupportedFamily(f"negative parameter in {self.family}{self.params}")
        n = self.size
        minimum = {"SL_R": 2, "SL_C": 2, "SL_H": 1, "SO": 2, "SO_C": 2, "SU": 2, "SP": 1, "SP_C": 1, "SOSTAR": 2}
        if n < minimum[self.family]:
            raise UnsupportedFamily(f"{self.text} is below the smallest supported size")
        if self.family == "SOSTAR" and self.params[0] % 2:
            raise UnsupportedFamily(f"SOSTAR takes an even size, got {self.params[0]}")

    @property
    def size(self) -> int:
        """Matrix size over the family's base field (before realification)"""
        if self.family in ("SO", "SU", "SP"):
            return self.params[0] + self.params[1]
        return self.params[0]

    @property
    def unit_width(self) -> int:
        return UNIT_WIDTH[self.family]

    @property
    def real_size(self) -> int:
        if self.family == "SP_C":
            return 2 * self.size * 2
        return self.size * self.unit_width

    @property
    def n_units(self) -> int:
        return self.real_size // self.unit_width

    @property
    def dimension(self) -> int:
        n = self.size
        return {
            "SL_R": n * n - 1,
            "SL_C": 2 * (n * n - 1),
            "SL_H": 4 * n * n - 1,
            "SO": n * (n - 1) // 2,
            "SO_C": n * (n - 1),
            "SU": n * n - 1,
            "SP": n * (2 * n + 1),
            "SP_C": 2 * n * (2 * n + 1),
            "SOSTAR": (n // 2) * (n - 1),
        }[self.family]

    @property
    def is_compact(self) -> bool:
        return self.family in ("SO", "SU", "SP") and self.params[1] == 0

    @property
    def is_complex(self) -> bool:
        return self.family in ("SL_C", "SO_C", "SP_C")

    @property
    def text(self) -> str:
        return f"{self.family}({','.join(str(p) for p in self.params)})"

    def __str__(self) -> str:
        return self.text


# ---------------------------------------------------------------------------
# elementary integer matrices


def elementary(n: int, i: int, j: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=np.int64)
    m[i, j] = 1
    return m


def antisym(n: int, i: int, j: int) -> np.ndarray:
    return elementary(n, i, j) - elementary(n, j, i)


def sym(n: int, i: int, j: int) -> np.ndarray:
    if i == j:
        return elementary(n, i, i)
    return elementary(n, i, j) + elementary(n, j, i)


def cartan_diag(n: int, k: int) -> np.ndarray:
    """diag(1,...,1,-k,0,...) with k ones; k = 1..n-1, pairwise orthogonal and traceless"""
    d = np.zeros(n, dtype=np.int64)
    d[:k] = 1
    d[k] = -k
    return np.diag(d)


def realify_complex(re: np.ndarray, im: Optional[np.ndarray] = None) -> np.ndarray:
    out = np.kron(re, I2)
    if im is not None:
        out = out + np.kron(im, J2)
    return out


def realify_quaternion(parts: Sequence[Optional[np.ndarray]]) -> np.ndarray:
    n = next(p for p in parts if p is not None).shape[0]
    out = np.zeros((4 * n, 4 * n), dtype=np.int64)
    for part, unit in zip(parts, QUATERNION_UNITS):
        if part is not None:
            out = out + np.kron(part, unit)
    return out


def _pairs(indices: Sequence[int]):
    indices = list(indices)
    for a in range(len(indices)):
        for b in range(a + 1, len(indices)):
            yield indices[a], indices[b]


def _cross(left: Sequence[int], right: Sequence[int]):
    for i in left:
        for j in right:
            yield i, j


# ---------------------------------------------------------------------------
# family bases: each returns (k_list, p_list) of realified integer matrices


def _sl_r(n: int):
    k = [antisym(n, i, j) for i, j in _pairs(range(n))]
    p = [sym(n, i, j) for i, j in _pairs(range(n))] + [cartan_diag(n, c) for c in range(1, n)]
    return k, p


def _so(p_: int, q_: int):
    n = p_ + q_
    first, second = range(p_), range(p_, n)
    k = [antisym(n, i, j) for i, j in _pairs(first)] + [antisym(n, i, j) for i, j in _pairs(second)]
    p = [sym(n, i, j) for i, j in _cross(first, second)]
    return k, p


def _su(p_: int, q_: int):
    n = p_ + q_
    first, second = range(p_), range(p_, n)
    within = list(_pairs(first)) + list(_pairs(second))
    k = []
    for i, j in within:
        k.append(realify_complex(antisym(n, i, j)))
        k.append(realify_complex(0 * sym(n, i, j), sym(n, i, j)))
    k += [realify_complex(0 * cartan_diag(n, c), cartan_diag(n, c)) for c in range(1, n)]
    p = []
    for i, j in _cross(first, second):
        p.append(realify_complex(sym(n, i, j)))
        p.append(realify_complex(0 * antisym(n, i, j), antisym(n, i, j)))
    return k, p


def _sl_c(n: int):
    k, p = [], []
    zero = np.zeros((n, n), dtype=np.int64)
    for i, j in _pairs(range(n)):
        k.append(realify_complex(antisym(n, i, j)))
        k.append(realify_complex(zero, sym(n, i, j)))
    k += [realify_complex(zero, cartan_diag(n, c)) for c in range(1, n)]
    for i, j in _pairs(range(n)):
        p.append(realify_complex(sym(n, i, j)))
        p.append(realify_complex(zero, antisym(n, i, j)))
    p += [realify_complex(cartan_diag(n, c)) for c in range(1, n)]
    return k, p


def _quaternionic_compact(n: int, blocks: Sequence[Sequence[int]]):
    """sp(p) x sp(q) x ... as quaternionic anti-hermitian matrices, block diagonal"""
    k = []
    for block in blocks:
        for i, j in _pairs(block):
            k.append(realify_quaternion([antisym(n, i, j), None, None, None]))
            for a in (1, 2, 3):
                parts = [None, None, None, None]
                parts[a] = sym(n, i, j)
                k.append(realify_quaternion(parts))
        for i in block:
            for a in (1, 2, 3):
                parts = [None, None, None, None]
                parts[a] = elementary(n, i, i)
                k.append(realify_quaternion(parts))
    return k


def _quaternionic_hermitian_offdiag(n: int, index_pairs):
    p = []
    for i, j in index_pairs:
        p.append(realify_quaternion([sym(n, i, j), None, None, None]))
        for a in (1, 2, 3):
            parts = [None, None, None, None]
            parts[a] = antisym(n, i, j)
            p.append(realify_quaternion(parts))
    return p


def _sp(p_: int, q_: int):
    n = p_ + q_
    first, second = list(range(p_)), list(range(p_, n))
    k = _quaternionic_compact(n, [first, second])
    p = _quaternionic_hermitian_offdiag(n, _cross(first, second))
    return k, p


def _sl_h(n: int):
    k = _quaternionic_compact(n, [list(range(n))])
    p = _quaternionic_hermitian_offdiag(n, _pairs(range(n)))
    p += [realify_quaternion([cartan_diag(n, c), None, None, None]) for c in range(1, n)]
    return k, p


def _so_c(n: int):
    zero = np.zeros((n, n), dtype=np.int64)
    k = [realify_complex(antisym(n, i, j)) for i, j in _pairs(range(n))]
    p = [realify_complex(zero, antisym(n, i, j)) for i, j in _pairs(range(n))]
    return k, p


def _block(a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray) -> np.ndarray:
    return np.block([[a, b], [c, d]])


def real_symplectic_basis(n: int):
    """sp(2n,R) preserving [[0,I],[-I,0]]: (k_R, p_R)"""
    z = np.zeros((n, n), dtype=np.int64)
    k = [_block(antisym(n, a, b), z, z, antisym(n, a, b)) for a, b in _pairs(range(n))]
    for a in range(n):
        for b in range(a, n):
            s = sym(n, a, b)
            k.append(_block(z, s, -s, z))
    p = []
    for a in range(n):
        for b in range(a, n):
            s = sym(n, a, b)
            p.append(_block(s, z, z, -s))
    for a in range(n):
        for b in range(a, n):
            s = sym(n, a, b)
            p.append(_block(z, s, s, z))
    return k, p


def _sp_c(n: int):
    k_r, p_r = real_symplectic_basis(n)
    z = np.zeros((2 * n, 2 * n), dtype=np.int64)
    k = [realify_complex(x) for x in k_r] + [realify_complex(z, y) for y in p_r]
    p = [realify_complex(y) for y in p_r] + [realify_complex(z, x) for x in k_r]
    return k, p


def _sostar(size: int):
    n = size // 2
    z = np.zeros((n, n), dtype=np.int64)
    zz = np.zeros((size, size), dtype=np.int64)
    k = [realify_complex(_block(antisym(n, a, b), z, z, antisym(n, a, b))) for a, b in _pairs(range(n))]
    for a in range(n):
        for b in range(a, n):
            s = sym(n, a, b)
            k.append(realify_complex(_block(z, s, -s, z)))
    p = []
    for a, b in _pairs(range(n)):
        e = antisym(n, a, b)
        p.append(realify_complex(zz, _block(e, z, z, -e)))
        p.append(realify_complex(zz, _block(z, e, e, z)))
    return k, p


_BUILDERS: Dict[str, Callable] = {
    "SL_R": lambda s: _sl_r(s.size),
    "SO": lambda s: _so(*s.params),
    "SU": lambda s: _su(*s.params),
    "SL_C": lambda s: _sl_c(s.size),
    "SP": lambda s: _sp(*s.params),
    "SL_H": lambda s: _sl_h(s.size),
    "SO_C": lambda s: _so_c(s.size),
    "SP_C": lambda s: _sp_c(s.size),
    "SOSTAR": lambda s: _sostar(s.size),
}


def family_basis(spec: AlgebraSpec) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """Realified integer basis of the family, split into (k, p-part)"""
    k, p = _BUILDERS[spec.family](spec)
    return [np.asarray(x, dtype=np.int64) for x in k], [np.asarray(x, dtype=np.int64) for x in p]


# ---------------------------------------------------------------------------
# ranks (complex ranks, complex groups counted as real groups)


def group_rank(spec: AlgebraSpec) -> int:
    n = spec.size
    return {
        "SL_R": n - 1,
        "SO": n // 2,
        "SU": n - 1,
        "SP": n,
        "SOSTAR": n // 2,
        "SL_H": 2 * n - 1,
        "SL_C": 2 * (n - 1),
        "SO_C": 2 * (n // 2),
        "SP_C": 2 * n,
    }[spec.family]


def maximal_compact_rank(spec: AlgebraSpec) -> int:
    n = spec.size
    if spec.family == "SO":
        p, q = spec.params
        return p // 2 + q // 2
    return {
        "SL_R": n // 2,
        "SU": n - 1,
        "SP": n,
        "SOSTAR": n // 2,
        "SL_H": n,
        "SL_C": n - 1,
        "SO_C": n // 2,
        "SP_C": n,
    }[spec.family]


# ---------------------------------------------------------------------------
# maximal compact subgroups as products of compact factors


@dataclass(frozen=True)
class CompactFactor:
    """One compact factor of K acting on a set of matrix units.

    kind is SO (real orthogonal), U (unitary, interleaved complex units),
    SP (quaternionic unitary), SPC (compact symplectic in sp(2n,C), first half of
    units are x, second half y) or USTAR (U(n) as [[A,-B],[B,A]] on real units).
    det_group names factors whose complex determinants multiply to 1.
    """

    kind: str
    units: Tuple[int, ...]
    width: int
    det_group: Optional[str] = None

    @property
    def coords(self) -> List[int]:
        return [u * self.width + t for u in self.units for t in range(self.width)]

    def shifted(self, unit_offset: int) -> "CompactFactor":
        return CompactFactor(self.kind, tuple(u + unit_offset for u in self.units), self.width, self.det_group)

    def sign_constraints_hold(self, unit_signs: Dict[int, int]) -> bool:
        sigma = [unit_signs[u] for u in self.units]
        if self.kind == "SO":
            return int(np.prod(sigma)) == 1
        if self.kind in ("SPC", "USTAR"):
            half = len(sigma) // 2
            return sigma[:half] == sigma[half:]
        return True


def compact_structure(spec: AlgebraSpec) -> List[CompactFactor]:
    """K for the family, as factors on realified coordinates"""
    n = spec.size
    w = spec.unit_width
    fam = spec.family
    if fam == "SL_R":
        return [CompactFactor("SO", tuple(range(n)), 1)]
    if fam == "SO":
        p, q = spec.params
        return [CompactFactor("SO", tuple(r), 1) for r in (range(p), range(p, n)) if len(r)]
    if fam == "SU":
        p, q = spec.params
        return [CompactFactor("U", tuple(r), 2, det_group="S") for r in (range(p), range(p, n)) if len(r)]
    if fam == "SL_C":
        return [CompactFactor("U", tuple(range(n)), 2, det_group="S")]
    if fam == "SL_H":
        return [CompactFactor("SP", tuple(range(n)), 4)]
    if fam == "SP":
        p, q = spec.params
        return [CompactFactor("SP", tuple(r), 4) for r in (range(p), range(p, n)) if len(r)]
    if fam == "SO_C":
        return [CompactFactor("SO", tuple(range(n)), w)]
    if fam == "SP_C":
        return [CompactFactor("SPC", tuple(range(2 * n)), 2)]
    if fam == "SOSTAR":
        return [CompactFactor("USTAR", tuple(range(n)), 2)]
    raise UnsupportedFamily(fam)


def real_form_subgroup_structure(g_spec: AlgebraSpec, h_spec: AlgebraSpec) -> List[CompactFactor]:
    """The maximal compact of a real form h, in the realified coordinates of its complexification g"""
    n = g_spec.size
    key = (g_spec.family, h_spec.family)
    if key == ("SL_C", "SL_R"):
        return [CompactFactor("SO", tuple(range(n)), 2)]
    if key == ("SL_C", "SU"):
        p, _ = h_spec.params
        return [CompactFactor("U", tuple(r), 2, det_group="S") for r in (range(p), range(p, n)) if len(r)]
    if key == ("SO_C", "SO"):
        p, _ = h_spec.params
        return [CompactFactor("SO", tuple(r), 2) for r in (range(p), range(p, n)) if len(r)]
    if key == ("SO_C", "SOSTAR"):
        return [CompactFactor("USTAR", tuple(range(n)), 2)]
    if key == ("SP_C", "SP"):
        p, _ = h_spec.params
        factors = []
        for r in (range(p), range(p, n)):
            if len(r):
                factors.append(CompactFactor("SPC", tuple(r) + tuple(i + n for i in r), 2))
        return factors
    raise IncompatiblePair(f"{h_spec.text} is not a supported real form of {g_spec.text}")


# ---------------------------------------------------------------------------
# embeddings


def pad_upper_left(x: np.ndarray, size: int) -> np.ndarray:
    out = np.zeros((size, size), dtype=np.int64)
    m = x.shape[0]
    out[:m, :m] = x
    return out


def _realified_form(diag_signs: Sequence[int], width: int) -> np.ndarray:
    return np.kron(np.diag(np.asarray(diag_signs, dtype=np.int64)), np.eye(width, dtype=np.int64))


def real_form_condition(g_spec: AlgebraSpec, h_spec: AlgebraSpec) -> Callable[[np.ndarray], np.ndarray]:
    """Linear map on realified g-matrices whose kernel is the real form h"""
    n = g_spec.size
    key = (g_spec.family, h_spec.family)
    conj = np.kron(np.eye(g_spec.real_size // 2, dtype=np.int64), np.diag([1, -1]).astype(np.int64))
    if h_spec.size != n and h_spec.family != "SOSTAR":
        raise IncompatiblePair(f"{h_spec.text} does not match the size of {g_spec.text}")
    if key == ("SL_C", "SL_R"):
        return lambda x: x - conj @ x @ conj
    if key == ("SL_C", "SU"):
        p, q = h_spec.params
        f = _realified_form([1] * p + [-1] * q, 2)
        return lambda x: x.T @ f + f @ x
    if key == ("SO_C", "SO"):
        p, q = h_spec.params
        f = _realified_form([1] * p + [-1] * q, 2)
        return lambda x: f @ x @ f - conj @ x @ conj
    if key == ("SO_C", "SOSTAR"):
        if h_spec.size != n:
            raise IncompatiblePair(f"{h_spec.text} does not match the size of {g_spec.text}")
        half = n // 2
        z = np.zeros((half, half), dtype=np.int64)
        j = np.kron(_block(z, np.eye(half, dtype=np.int64), -np.eye(half, dtype=np.int64), z), I2)
        return lambda x: x.T @ j + j @ x
    if key == ("SP_C", "SP"):
        p, q = h_spec.params
        f = _realified_form([1] * p + [-1] * q + [1] * p + [-1] * q, 2)
        return lambda x: x.T @ f + f @ x
    raise IncompatiblePair(f"{h_spec.text} is not a supported real form of {g_spec.text}")


def upper_left_compatible(g_spec: AlgebraSpec, h_spec: AlgebraSpec) -> bool:
    g, h = g_spec.family, h_spec.family
    if h_spec.size > g_spec.size:
        return False
    if g == h and g in ("SL_R", "SL_C", "SL_H", "SO_C"):
        return h_spec.size < g_spec.size
    if g == h and g in ("SO", "SU", "SP"):
        (gp, gq), (hp, hq) = g_spec.params, h_spec.params
        if (gp, gq) == (hp, hq):
            return False
        if hp == gp and hq <= gq:
            return True
        return hq == 0 and hp <= gp
    if (g, h) in (("SL_R", "SO"), ("SL_H", "SP")):
        return True
    return False
