"""
Rational cohomology of compact symmetric spaces, split into the even (Chern-Weil) part
and the exterior algebra on odd primitive generators.

Every entry comes from a classical formula; the dimension and rank tables below are kept
separate from the formulas so the two can be checked against each other.
"""
import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import sympy

from utils.errors import UnsupportedSpace
from utils.families import AlgebraSpec

logger = logging.getLogger(__name__)

t = sympy.Symbol("t")

SPACE_FAMILIES = (
    "Point",
    "Sphere",
    "CPn",
    "GrassC",
    "GrassH",
    "GrassR_oriented",
    "SU_over_SO",
    "SU2n_over_Sp",
    "SO2n_over_U",
    "Sp_over_U",
    "GroupManifold",
)
GROUP_KINDS = ("SU", "SO", "SP")


@dataclass(frozen=True)
class SymSpaceId:
    family: str
    params: Tuple[int, ...] = ()
    group: Optional[str] = None

    def __post_init__(self):
        if self.family not in SPACE_FAMILIES:
            raise UnsupportedSpace(f"unknown space family {self.family!r}")
        if any(p < 0 for p in self.params):
            raise UnsupportedSpace(f"negative parameter in {self.family}{self.params}")
        if self.family == "GroupManifold" and self.group not in GROUP_KINDS:
            raise UnsupportedSpace(f"unknown compact group {self.group!r}")
        arity = {"Point": 0, "GrassC": 2, "GrassH": 2, "GrassR_oriented": 2}.get(self.family, 1)
        if len(self.params) != arity:
            raise UnsupportedSpace(f"{self.family} takes {arity} parameter(s)")
        if arity and min(self.params) < 1:
            raise UnsupportedSpace(f"{self.family} parameters must be positive")

    @property
    def text(self) -> str:
        p = self.params
        if self.family == "Point":
            return "POINT"
        if self.family == "Sphere":
            return f"S^{p[0]}"
        if self.family == "CPn":
            return f"CP({p[0]})"
        if self.family == "GrassC":
            return f"GrC({p[0]},{p[1]})"
        if self.family == "GrassH":
            return f"GrH({p[0]},{p[1]})"
        if self.family == "GrassR_oriented":
            return f"GrR({p[0]},{p[1]})"
        if self.family == "SU_over_SO":
            return f"SU({p[0]})/SO({p[0]})"
        if self.family == "SU2n_over_Sp":
            return f"SU({2 * p[0]})/SP({p[0]})"
        if self.family == "SO2n_over_U":
            return f"SO({2 * p[0]})/U({p[0]})"
        if self.family == "Sp_over_U":
            return f"SP({p[0]})/U({p[0]})"
        return f"{self.group}({p[0]})"


@dataclass(frozen=True)
class PoincareBigrade:
    """even_coefficients[k] is the dimension of the degree-k even part"""

    even_coefficients: Tuple[int, ...]
    primitive_degrees: Tuple[int, ...]

    @property
    def even_series(self) -> sympy.Poly:
        return sympy.Poly(sum(c * t**k for k, c in enumerate(self.even_coefficients)), t)

    @property
    def dim_even_top(self) -> int:
        return len(self.even_coefficients) - 1

    @property
    def dim_odd_top(self) -> int:
        return sum(self.primitive_degrees)

    def total_series(self) -> sympy.Poly:
        total = self.even_series
        for d in self.primitive_degrees:
            total = total * sympy.Poly(1 + t**d, t)
        return total

    def euler_characteristic(self) -> int:
        return int(self.total_series().eval(-1))

    def to_dict(self) -> dict:
        return {
            "even_series": list(self.even_coefficients),
            "primitive_degrees": list(self.primitive_degrees),
            "dim_even_top": self.dim_even_top,
            "dim_odd_top": self.dim_odd_top,
        }


def _product(factors: Iterable) -> sympy.Poly:
    out = sympy.Poly(1, t)
    for f in factors:
        out = out * sympy.Poly(f, t)
    return out


def _exact_ratio(numerator: sympy.Poly, denominator: sympy.Poly) -> sympy.Poly:
    quotient, remainder = sympy.div(numerator, denominator, t)
    if not remainder.is_zero:
        raise UnsupportedSpace("Poincaré series is not a polynomial")
    return sympy.Poly(quotient, t)


def _coefficients(series: sympy.Poly) -> Tuple[int, ...]:
    return tuple(int(c) for c in reversed(series.all_coeffs()))


def gaussian_binomial(n: int, k: int, x) -> sympy.Poly:
    num = _product(1 - x ** (n - k + i) for i in range(1, k + 1))
    den = _product(1 - x**i for i in range(1, k + 1))
    return _exact_ratio(num, den)


def _pontryagin(indices: Iterable[int]) -> List:
    return [1 - t ** (4 * i) for i in indices]


def _oriented_real_grassmannian(p: int, q: int) -> Tuple[sympy.Poly, Tuple[int, ...]]:
    if p % 2 == 0 and q % 2 == 1:
        p, q = q, p
    if p % 2 == 0 and q % 2 == 0:
        a, b = p // 2, q // 2
        n = a + b
        num = _product(_pontryagin(range(1, n)) + [1 - t ** (2 * n)])
        den = _product(_pontryagin(range(1, a)) + [1 - t ** (2 * a)] + _pontryagin(range(1, b)) + [1 - t ** (2 * b)])
        return _exact_ratio(num, den), ()
    if q % 2 == 0:
        a, b = (p - 1) // 2, q // 2
        m = a + b
        num = _product(_pontryagin(range(1, m + 1)))
        den = _product(_pontryagin(range(1, a + 1)) + _pontryagin(range(1, b)) + [1 - t ** (2 * b)])
        return _exact_ratio(num, den), ()
    a, b = (p - 1) // 2, (q - 1) // 2
    m = a + b + 1
    num = _product(_pontryagin(range(1, m)))
    den = _product(_pontryagin(range(1, a + 1)) + _pontryagin(range(1, b + 1)))
    return _exact_ratio(num, den), (p + q - 1,)


def _group_primitives(group: str, n: int) -> Tuple[int, ...]:
    if group == "SU":
        return tuple(range(3, 2 * n, 2))
    if group == "SP":
        return tuple(4 * i - 1 for i in range(1, n + 1))
    m = n // 2
    if n % 2:
        return tuple(4 * i - 1 for i in range(1, m + 1))
    return tuple(sorted([4 * i - 1 for i in range(1, m)] + [2 * m - 1]))


def poincare_bigrade(s: SymSpaceId) -> PoincareBigrade:
    fam, p = s.family, s.params
    prims: Tuple[int, ...] = ()
    if fam == "Point":
        even = sympy.Poly(1, t)
    elif fam == "Sphere":
        d = p[0]
        even = sympy.Poly(1 + t**d, t) if d % 2 == 0 else sympy.Poly(1, t)
        prims = () if d % 2 == 0 else (d,)
    elif fam == "CPn":
        even = sympy.Poly(sum(t ** (2 * k) for k in range(p[0] + 1)), t)
    elif fam == "GrassC":
        even = gaussian_binomial(p[0] + p[1], p[0], t**2)
    elif fam == "GrassH":
        even = gaussian_binomial(p[0] + p[1], p[0], t**4)
    elif fam == "GrassR_oriented":
        even, prims = _oriented_real_grassmannian(*p)
    elif fam == "SU_over_SO":
        n = p[0]
        m = n // 2
        if n % 2:
            even, prims = sympy.Poly(1, t), tuple(4 * i + 1 for i in range(1, m + 1))
        else:
            even, prims = sympy.Poly(1 + t ** (2 * m), t), tuple(4 * i + 1 for i in range(1, m))
    elif fam == "SU2n_over_Sp":
        even, prims = sympy.Poly(1, t), tuple(4 * i + 1 for i in range(1, p[0]))
    elif fam == "SO2n_over_U":
        even = _product(1 + t ** (2 * i) for i in range(1, p[0]))
    elif fam == "Sp_over_U":
        even = _product(1 + t ** (2 * i) for i in range(1, p[0] + 1))
    elif fam == "GroupManifold":
        even, prims = sympy.Poly(1, t), _group_primitives(s.group, p[0])
    else:
        raise UnsupportedSpace(fam)
    return PoincareBigrade(_coefficients(even), tuple(sorted(prims)))


def combine_bigrades(parts: Sequence[PoincareBigrade]) -> PoincareBigrade:
    """Bi-grade of a product space"""
    even = _product(part.even_series.as_expr() for part in parts)
    prims = sorted(d for part in parts for d in part.primitive_degrees)
    return PoincareBigrade(_coefficients(even), tuple(prims))


def even_nontrivial(s: SymSpaceId) -> bool:
    return poincare_bigrade(s).dim_even_top > 0


# ---------------------------------------------------------------------------
# classification tables, independent of the formulas above


def space_dimension(s: SymSpaceId) -> int:
    fam, p = s.family, s.params
    if fam == "Point":
        return 0
    if fam == "Sphere":
        return p[0]
    if fam == "CPn":
        return 2 * p[0]
    if fam == "GrassC":
        return 2 * p[0] * p[1]
    if fam == "GrassH":
        return 4 * p[0] * p[1]
    if fam == "GrassR_oriented":
        return p[0] * p[1]
    if fam == "SU_over_SO":
        return (p[0] - 1) * (p[0] + 2) // 2
    if fam == "SU2n_over_Sp":
        return 2 * p[0] ** 2 - p[0] - 1
    if fam == "SO2n_over_U":
        return p[0] * (p[0] - 1)
    if fam == "Sp_over_U":
        return p[0] * (p[0] + 1)
    n = p[0]
    return {"SU": n * n - 1, "SO": n * (n - 1) // 2, "SP": n * (2 * n + 1)}[s.group]


def rank_difference(s: SymSpaceId) -> int:
    """rk(G_U) - rk(K) for the space G_U/K"""
    fam, p = s.family, s.params
    if fam in ("Point", "CPn", "GrassC", "GrassH", "SO2n_over_U", "Sp_over_U"):
        return 0
    if fam == "Sphere":
        return (p[0] + 1) // 2 - p[0] // 2
    if fam == "GrassR_oriented":
        return (p[0] + p[1]) // 2 - p[0] // 2 - p[1] // 2
    if fam == "SU_over_SO":
        return (p[0] - 1) - p[0] // 2
    if fam == "SU2n_over_Sp":
        return p[0] - 1
    n = p[0]
    return {"SU": n - 1, "SO": n // 2, "SP": n}[s.group]


def euler_characteristic(s: SymSpaceId) -> int:
    return poincare_bigrade(s).euler_characteristic()


# ---------------------------------------------------------------------------
# compact duals of the pairs


def compact_dual(spec: AlgebraSpec) -> List[SymSpaceId]:
    """G_U/K for a single family"""
    fam = spec.family
    if fam in ("SO", "SU", "SP"):
        p, q = spec.params
        if p == 0 or q == 0:
            return [SymSpaceId("Point")]
        target = {"SO": "GrassR_oriented", "SU": "GrassC", "SP": "GrassH"}[fam]
        return [SymSpaceId(target, (p, q))]
    if fam == "SL_R":
        return [SymSpaceId("SU_over_SO", (spec.size,))]
    if fam == "SL_H":
        return [SymSpaceId("SU2n_over_Sp", (spec.size,))]
    if fam == "SOSTAR":
        return [SymSpaceId("SO2n_over_U", (spec.size // 2,))]
    group = {"SL_C": "SU", "SO_C": "SO", "SP_C": "SP"}[fam]
    return [SymSpaceId("GroupManifold", (spec.size,), group)]


def compact_dual_pair(ps) -> Tuple[List[SymSpaceId], List[SymSpaceId]]:
    """(G_U/K, H_U/L) as lists of product factors"""
    h_dual = [s for spec in ps.h_factors for s in compact_dual(spec)]
    if ps.embedding == "DiagonalGroupSpace":
        return h_dual + h_dual, h_dual
    return compact_dual(ps.g_spec), h_dual


@dataclass(frozen=True)
class Bidegree:
    a: int
    b: int

    @property
    def vanish_signal(self) -> bool:
        return self.a < 0 or self.b < 0

    @property
    def chern_weil(self) -> bool:
        return not self.vanish_signal and self.b == 0

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "vanish_signal": self.vanish_signal, "chern_weil": self.chern_weil}


def space_product_text(spaces: Sequence[SymSpaceId]) -> str:
    return " x ".join(s.text for s in spaces)


def bidegree_of_omega(ps) -> Bidegree:
    """(dimeven(G_U/K) - dimeven(H_U/L), dimodd(G_U/K) - dimodd(H_U/L))"""
    g_dual, h_dual = compact_dual_pair(ps)
    g_grade = combine_bigrades([poincare_bigrade(s) for s in g_dual])
    h_grade = combine_bigrades([poincare_bigrade(s) for s in h_dual])
    result = Bidegree(g_grade.dim_even_top - h_grade.dim_even_top, g_grade.dim_odd_top - h_grade.dim_odd_top)
    logger.debug("bidegree of %s: %s", ps.text, result)
    return result


def bigrade_report(s: SymSpaceId) -> dict:
    grade = poincare_bigrade(s)
    report = {"space": s.text, "family": s.family, "dimension": space_dimension(s)}
    report.update(grade.to_dict())
    report["even_nontrivial"] = grade.dim_even_top > 0
    report["euler_characteristic"] = grade.euler_characteristic()
    report["total_betti"] = int(grade.total_series().eval(1))
    return report
