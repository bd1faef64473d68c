"""
Exact linear algebra over the rationals.

Callers pass matrices as lists of rows of fractions.Fraction; the elimination work is done by
sympy's DomainMatrix over QQ and converted back. Nothing here touches floating point.
"""
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Vector = List[Fraction]
Matrix = List[List[Fraction]]


def to_fraction_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def to_domain(m: Matrix, n_cols: Optional[int] = None) -> DomainMatrix:
    """DomainMatrix over QQ; n_cols fixes the width of an empty matrix"""
    width = len(m[0]) if m else (n_cols or 0)
    rows = [[QQ(int(Fraction(x).numerator), int(Fraction(x).denominator)) for x in row] for row in m]
    return DomainMatrix(rows, (len(rows), width), QQ)


def _fraction(x) -> Fraction:
    return Fraction(int(QQ.numer(x)), int(QQ.denom(x)))


def from_domain(dm: DomainMatrix) -> Matrix:
    return [[_fraction(x) for x in row] for row in dm.to_list()]


def zeros(n_rows: int, n_cols: int) -> Matrix:
    return [[Fraction(0)] * n_cols for _ in range(n_rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def transpose(m: Matrix) -> Matrix:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return []
    return from_domain(to_domain(a) * to_domain(b))


def matvec(a: Matrix, v: Sequence[Fraction]) -> Vector:
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(u, v) if x and y), Fraction(0))


def bilinear(u: Sequence[Fraction], form: Matrix, v: Sequence[Fraction]) -> Fraction:
    return dot(u, matvec(form, v))


def gram(rows: Matrix, form: Matrix) -> Matrix:
    """Gram matrix rows . form . rows^T"""
    if not rows:
        return []
    r = to_domain(rows)
    return from_domain(r * to_domain(form) * r.transpose())


def is_zero_vector(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form; returns the nonzero rows and the pivot columns"""
    if not m:
        return [], []
    reduced, pivots = to_domain(m).rref()
    return from_domain(reduced)[: len(pivots)], list(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix, n_cols: Optional[int] = None) -> Matrix:
    """Basis (as rows) of {x : m x = 0}"""
    if not m:
        if n_cols is None:
            raise ValueError("n_cols is required for an empty matrix")
        return identity(n_cols)
    return [row for row in from_domain(to_domain(m).nullspace()) if not is_zero_vector(row)]


def row_space(m: Matrix) -> Matrix:
    """Reduced basis of the row space (the lexicographically reduced basis)"""
    return rref(m)[0]


class RowSpace:
    """A row space in reduced form, for fast membership tests and coordinates"""

    def __init__(self, rows: Matrix, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self.rows, self.pivots = rref(rows) if rows else ([], [])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def coordinates(self, v: Sequence[Fraction]) -> Optional[Vector]:
        """Coefficients of v on the reduced rows, or None when v is outside the space"""
        coeffs = [Fraction(v[p]) for p in self.pivots]
        residual = list(v)
        for c, row in zip(coeffs, self.rows):
            if c == 0:
                continue
            for j, x in enumerate(row):
                if x:
                    residual[j] -= c * x
        if not is_zero_vector(residual):
            return None
        return coeffs

    def contains(self, v: Sequence[Fraction]) -> bool:
        return self.coordinates(v) is not None


def det(a: Matrix) -> Fraction:
    if not a:
        return Fraction(1)
    return _fraction(to_domain(a).det())


def solve(a: Matrix, b: Sequence[Fraction]) -> Vector:
    """Solve a x = b for square invertible a"""
    if det(a) == 0:
        raise ZeroDivisionError("matrix is singular")
    rhs = to_domain([[Fraction(x)] for x in b])
    return [row[0] for row in from_domain(to_domain(a).lu_solve(rhs))]


def inverse(a: Matrix) -> Matrix:
    if det(a) == 0:
        raise ZeroDivisionError("matrix is singular")
    return from_domain(to_domain(a).inv())


def _sign_changes(coeffs: Sequence[Fraction]) -> int:
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature(sym: Matrix) -> Tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) of a symmetric matrix.

    The characteristic polynomial of a symmetric matrix has only real roots, so Descartes'
    rule of signs counts its positive and negative eigenvalues exactly.
    """
    n = len(sym)
    if all(sym[i][j] == 0 for i in range(n) for j in range(n) if i != j):
        diagonal = [sym[i][i] for i in range(n)]
        plus = sum(1 for d in diagonal if d > 0)
        minus = sum(1 for d in diagonal if d < 0)
        return plus, minus, n - plus - minus
    coeffs = [_fraction(c) for c in to_domain(sym).charpoly()]
    plus = _sign_changes(coeffs)
    # coefficient k multiplies x^(n-k); p(-x) flips odd powers
    minus = _sign_changes([c if (n - k) % 2 == 0 else -c for k, c in enumerate(coeffs)])
    return plus, minus, n - plus - minus


def intersect(u_rows: Matrix, w_rows: Matrix, ambient_dim: int) -> Matrix:
    """Reduced basis of rowspace(u) ∩ rowspace(w)"""
    if not u_rows or not w_rows:
        return []
    # x = a.U = b.W  <=>  (a, -b) in the left kernel of [U; W]
    stacked = [list(r) for r in u_rows] + [[-x for x in r] for r in w_rows]
    kernel = nullspace(transpose(stacked))
    if not kernel:
        return []
    a = to_domain([coeffs[: len(u_rows)] for coeffs in kernel])
    vectors = from_domain(a * to_domain(u_rows))
    return row_space(vectors)
