"""
Graded cohomology rings with Poincaré duality, Lefschetz classes and Lefschetz numbers.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import sympy

from utils import rational
from utils.cohomology import SymSpaceId
from utils.errors import DegeneratePairing, InvariantError, NotARingMap, UnsupportedSpace

logger = logging.getLogger(__name__)

Endomorphism = Dict[int, rational.Matrix]


@dataclass(frozen=True)
class GradedRing:
    """Finite graded ring on a monomial basis.

    products[i][j] is the coefficient vector of b_i * b_j; integral is the integration
    functional, supported in the top degree.
    """

    space: SymSpaceId
    dimension: int
    labels: Tuple[str, ...]
    degrees: Tuple[int, ...]
    products: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]
    integral: Tuple[Fraction, ...]

    @property
    def size(self) -> int:
        return len(self.labels)

    def basis_in_degree(self, k: int) -> List[int]:
        return [i for i, d in enumerate(self.degrees) if d == k]

    def multiply(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> rational.Vector:
        out = [Fraction(0)] * self.size
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, c in enumerate(self.products[i][j]):
                    if c:
                        out[k] += a * b * c
        return out

    def integrate(self, x: Sequence[Fraction]) -> Fraction:
        return rational.dot(x, self.integral)

    def unit_vector(self, i: int) -> rational.Vector:
        v = [Fraction(0)] * self.size
        v[i] = Fraction(1)
        return v

    def pairing_matrix(self, k: int) -> rational.Matrix:
        """P[i][j] = integral of b_i b_j over degree-k b_i and degree-(d-k) b_j"""
        left, right = self.basis_in_degree(k), self.basis_in_degree(self.dimension - k)
        return [
            [self.integrate(self.multiply(self.unit_vector(i), self.unit_vector(j))) for j in right] for i in left
        ]

    def is_graded_commutative(self) -> bool:
        for i in range(self.size):
            for j in range(self.size):
                sign = -1 if (self.degrees[i] * self.degrees[j]) % 2 else 1
                if any(a != sign * b for a, b in zip(self.products[i][j], self.products[j][i])):
                    return False
        return True

    def pairing_nondegenerate(self) -> bool:
        for k in sorted(set(self.degrees)):
            pairing = self.pairing_matrix(k)
            if not pairing or len(pairing) != len(pairing[0]) or rational.det(pairing) == 0:
                return False
        return True


def _monomial_ring(space: SymSpaceId, dimension: int, labels, degrees, top_index: int, product_index) -> GradedRing:
    n = len(labels)
    products = []
    for i in range(n):
        row = []
        for j in range(n):
            vec = [Fraction(0)] * n
            k = product_index(i, j)
            if k is not None:
                vec[k] = Fraction(1)
            row.append(tuple(vec))
        products.append(tuple(row))
    integral = [Fraction(0)] * n
    integral[top_index] = Fraction(1)
    return GradedRing(space, dimension, tuple(labels), tuple(degrees), tuple(products), tuple(integral))


def build_ring(s: SymSpaceId) -> GradedRing:
    if s.family == "Sphere":
        d = s.params[0]
        return _monomial_ring(
            s, d, ["1", "vol"], [0, d], 1, lambda i, j: {(0, 0): 0, (0, 1): 1, (1, 0): 1}.get((i, j))
        )
    if s.family == "CPn":
        d = s.params[0]
        labels = ["1", "w"] + [f"w^{k}" for k in range(2, d + 1)]
        return _monomial_ring(
            s, 2 * d, labels, [2 * k for k in range(d + 1)], d, lambda i, j: i + j if i + j <= d else None
        )
    raise UnsupportedSpace(f"no ring model for {s.text}")


@dataclass(frozen=True)
class LefschetzClass:
    """Coefficients on basis pairs (i, j) standing for b_i ⊗ b_j"""

    ring: GradedRing
    terms: Tuple[Tuple[Tuple[int, int], Fraction], ...]

    def as_dict(self) -> Dict[Tuple[int, int], Fraction]:
        return dict(self.terms)

    def render(self) -> str:
        out = ""
        for n, ((i, j), c) in enumerate(self.terms):
            label = f"{self.ring.labels[i]}⊗{self.ring.labels[j]}"
            magnitude = abs(c)
            body = label if magnitude == 1 else f"{magnitude}·{label}"
            if n == 0:
                out = body if c > 0 else f"-{body}"
            else:
                out += f" + {body}" if c > 0 else f" - {body}"
        return out

    def to_dict(self) -> dict:
        return {
            "terms": [
                {"left": self.ring.labels[i], "right": self.ring.labels[j], "coefficient": str(c)}
                for (i, j), c in self.terms
            ],
            "rendered": self.render(),
        }


def dual_basis(r: GradedRing, k: int) -> List[rational.Vector]:
    """Elements of degree d-k dual to the degree-k basis under the pairing"""
    pairing = r.pairing_matrix(k)
    right = r.basis_in_degree(r.dimension - k)
    if not pairing or len(pairing) != len(right) or rational.det(pairing) == 0:
        raise DegeneratePairing(f"pairing of degree {k} on {r.space.text} is degenerate")
    # P D^T = I
    d_t = rational.inverse(pairing)
    duals = []
    for i in range(len(pairing)):
        v = [Fraction(0)] * r.size
        for col, j in enumerate(right):
            v[j] = d_t[col][i]
        duals.append(v)
    return duals


def lefschetz_class(r: GradedRing) -> LefschetzClass:
    terms: Dict[Tuple[int, int], Fraction] = {}
    for k in sorted(set(r.degrees)):
        sign = -1 if (r.dimension - k) % 2 else 1
        for i, dual in zip(r.basis_in_degree(k), dual_basis(r, k)):
            for j, c in enumerate(dual):
                if c:
                    terms[(i, j)] = terms.get((i, j), Fraction(0)) + sign * c
    ordered = tuple(sorted(((key, c) for key, c in terms.items() if c), key=lambda kv: (-r.degrees[kv[0][0]], kv[0])))
    return LefschetzClass(r, ordered)


def apply_endomorphism(r: GradedRing, f_star: Endomorphism, x: Sequence[Fraction]) -> rational.Vector:
    out = [Fraction(0)] * r.size
    for k in sorted(set(r.degrees)):
        idx = r.basis_in_degree(k)
        matrix = f_star.get(k)
        if matrix is None:
            raise NotARingMap(f"no action given in degree {k}")
        image = rational.matvec(matrix, [Fraction(x[i]) for i in idx])
        for i, c in zip(idx, image):
            out[i] += c
    return out


def check_ring_map(r: GradedRing, f_star: Endomorphism) -> None:
    for k in sorted(set(r.degrees)):
        n = len(r.basis_in_degree(k))
        m = f_star.get(k)
        if m is None or len(m) != n or any(len(row) != n for row in m):
            raise NotARingMap(f"degree {k} action must be a {n}x{n} matrix")
    unit = r.basis_in_degree(0)
    if len(unit) != 1 or apply_endomorphism(r, f_star, r.unit_vector(unit[0])) != r.unit_vector(unit[0]):
        raise NotARingMap("the unit is not preserved")
    for i in range(r.size):
        fi = apply_endomorphism(r, f_star, r.unit_vector(i))
        for j in range(r.size):
            fj = apply_endomorphism(r, f_star, r.unit_vector(j))
            lhs = apply_endomorphism(r, f_star, r.multiply(r.unit_vector(i), r.unit_vector(j)))
            if lhs != r.multiply(fi, fj):
                raise NotARingMap(f"f(b_{i} b_{j}) != f(b_{i}) f(b_{j})")


def lefschetz_pairing(r: GradedRing, f_star: Endomorphism) -> Fraction:
    """Pairing of the Lefschetz class with the graph of f"""
    total = Fraction(0)
    for (i, j), c in lefschetz_class(r).terms:
        image = apply_endomorphism(r, f_star, r.unit_vector(j))
        total += c * r.integrate(r.multiply(r.unit_vector(i), image))
    return total


def lefschetz_trace(r: GradedRing, f_star: Endomorphism) -> Fraction:
    """Sum over k of (-1)^k trace(f* on H^k)"""
    total = Fraction(0)
    for k in sorted(set(r.degrees)):
        m = f_star[k]
        trace = sum((m[i][i] for i in range(len(m))), Fraction(0))
        total += -trace if k % 2 else trace
    return total


def lefschetz_number(r: GradedRing, f_star: Endomorphism) -> Fraction:
    """Pairing with the Lefschetz class, checked against the alternating trace"""
    check_ring_map(r, f_star)
    value = lefschetz_pairing(r, f_star)
    trace = lefschetz_trace(r, f_star)
    if value != trace:
        raise InvariantError(f"Lefschetz number on {r.space.text}: pairing gives {value}, trace formula gives {trace}")
    logger.debug("Lefschetz number on %s: %s", r.space.text, value)
    return value


def scalar_endomorphism(r: GradedRing, factor) -> Endomorphism:
    """w -> factor*w on CP(d) (so w^k -> factor^k w^k); vol -> factor*vol on spheres"""
    factor = Fraction(factor)
    f_star: Endomorphism = {}
    for k in sorted(set(r.degrees)):
        idx = r.basis_in_degree(k)
        if r.space.family == "CPn":
            scale = factor ** (k // 2)
        else:
            scale = Fraction(1) if k == 0 else factor
        f_star[k] = [[scale if a == b else Fraction(0) for b in range(len(idx))] for a in range(len(idx))]
    return f_star


def identity_endomorphism(r: GradedRing) -> Endomorphism:
    return scalar_endomorphism(r, 1)


# ---------------------------------------------------------------------------
# volume formulas for group spaces


@dataclass(frozen=True)
class VolumeFormula:
    group: str
    prefactor: sympy.Symbol
    terms: Tuple[Tuple[int, sympy.Symbol], ...]

    @property
    def coefficients(self) -> List[sympy.Symbol]:
        return [symbol for _, symbol in self.terms]

    @property
    def expression(self) -> sympy.Expr:
        return self.prefactor * sympy.Abs(sum(c * s for c, s in self.terms))

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "prefactor": str(self.prefactor),
            "terms": [{"coefficient": c, "symbol": str(s)} for c, s in self.terms],
            "formula": f"Vol = {sympy.sstr(self.expression)}",
        }


def su_volume_coefficients(d: int) -> VolumeFormula:
    """Vol(SU(d+1)) |sum_k tau_k| from the Lefschetz class of CP(d); tau_k pairs w^(d-k) with f*w^k"""
    if d < 1:
        raise UnsupportedSpace("d must be at least 1")
    ring = build_ring(SymSpaceId("CPn", (d,)))
    by_k: Dict[int, int] = {}
    for (i, j), c in lefschetz_class(ring).terms:
        by_k[j] = by_k.get(j, 0) + int(c)
    terms = tuple((by_k[k], sympy.Symbol(f"tau_{k}")) for k in range(d + 1))
    return VolumeFormula(f"SU({d},1)", sympy.Symbol(f"Vol(SU({d + 1}))"), terms)


def so_volume_coefficients(d: int) -> VolumeFormula:
    """Vol(SO(d)) |Vol(Gamma\\H^d) + (-1)^d Vol(rho)| from the Lefschetz class of S^d"""
    if d < 1:
        raise UnsupportedSpace("d must be at least 1")
    ring = build_ring(SymSpaceId("Sphere", (d,)))
    cls = lefschetz_class(ring).as_dict()
    terms = (
        (int(cls[(1, 0)]), sympy.Symbol("Vol(Gamma\\H^%d)" % d)),
        (int(cls[(0, 1)]), sympy.Symbol("Vol(rho)")),
    )
    return VolumeFormula(f"SO({d},1)", sympy.Symbol(f"Vol(SO({d}))"), terms)
