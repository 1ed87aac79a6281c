"""Polynomial matrices with an explicit grade, plus exact constant-matrix helpers.

The grade is part of the value: two matrices with the same entries but
different grades are different objects, because the structure at infinity
depends on it. Degree-lowering regrades are only allowed down to the actual
degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import GradeError, PreconditionError, ShapeError
from .polycore import NEG_INF, Poly, poly_exact_div, poly_reverse

ConstMatrix = Tuple[Tuple[Fraction, ...], ...]

ROWS = "rows"
COLUMNS = "columns"
_ORIENTATIONS = (ROWS, COLUMNS)


def _to_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a matrix entry")


def _check_orientation(orientation: str) -> None:
    if orientation not in _ORIENTATIONS:
        raise ValueError(f"orientation must be 'rows' or 'columns', got {orientation!r}")


class PolyMatrix:
    """An m×n matrix of :class:`Poly` living in the space of grade-``grade`` matrices.

    Zero-sized dimensions are permitted so that empty bases (for example the
    null space of a full-rank matrix) are ordinary values.
    """

    __slots__ = ("m", "n", "entries", "grade")

    def __init__(self, rows: Iterable[Iterable], grade: Optional[int] = None,
                 shape: Optional[Tuple[int, int]] = None):
        entries = tuple(tuple(_to_poly(x) for x in row) for row in rows)
        m = len(entries)
        n = len(entries[0]) if entries else 0
        if shape is not None:
            if m == 0:
                m, n = shape[0], shape[1]
                if m != 0:
                    entries = tuple(() for _ in range(m))
                    if n != 0:
                        raise ShapeError("shape given without entries")
            elif (m, n) != tuple(shape):
                raise ShapeError(f"entries have shape {m}x{len(entries[0])}, expected {shape}")
        if any(len(row) != n for row in entries):
            raise ShapeError("ragged rows")
        deg = max((e.degree for row in entries for e in row), default=NEG_INF)
        if grade is None:
            grade = max(deg, 0)
        elif grade < 0 or deg > grade:
            raise GradeError(f"grade {grade} is below the matrix degree {deg}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "grade", int(grade))

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    def __reduce__(self):
        return (PolyMatrix, (self.entries, self.grade, (self.m, self.n)))

    # -- constructors --------------------------------------------------------

    @classmethod
    def zeros(cls, m: int, n: int, grade: int = 0) -> "PolyMatrix":
        z = Poly.zero()
        return cls([[z] * n for _ in range(m)], grade, shape=(m, n))

    @classmethod
    def identity(cls, k: int, grade: int = 0) -> "PolyMatrix":
        return cls([[Poly.one() if i == j else Poly.zero() for j in range(k)]
                    for i in range(k)], grade, shape=(k, k))

    @classmethod
    def diag(cls, polys: Sequence, m: Optional[int] = None, n: Optional[int] = None,
             grade: Optional[int] = None) -> "PolyMatrix":
        k = len(polys)
        m = k if m is None else m
        n = k if n is None else n
        rows = [[Poly.zero()] * n for _ in range(m)]
        for i, p in enumerate(polys):
            rows[i][i] = _to_poly(p)
        return cls(rows, grade, shape=(m, n))

    @classmethod
    def from_const(cls, rows: Sequence[Sequence], grade: int = 0) -> "PolyMatrix":
        return cls([[Poly.const(x) for x in row] for row in rows], grade)

    # -- queries -------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.m, self.n)

    @property
    def degree(self):
        """Largest entry degree; NEG_INF for the zero matrix."""
        return max((e.degree for row in self.entries for e in row), default=NEG_INF)

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Tuple[Poly, ...]:
        return self.entries[i]

    def col(self, j: int) -> Tuple[Poly, ...]:
        return tuple(row[j] for row in self.entries)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def same_entries(self, other: "PolyMatrix") -> bool:
        """Entry-wise equality, ignoring the grade."""
        return self.shape == other.shape and self.entries == other.entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.grade == other.grade and self.same_entries(other)

    def __hash__(self) -> int:
        return hash((self.m, self.n, self.grade, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"PolyMatrix({self.m}x{self.n}, grade {self.grade}: [{body}])"

    # -- structural copies -------------------------------------------------

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(zip(*self.entries), self.grade, shape=(self.n, self.m)) \
            if self.m else PolyMatrix.zeros(self.n, 0, self.grade)

    @property
    def T(self) -> "PolyMatrix":
        return self.transpose()

    def submatrix(self, rows: Sequence[int], cols: Sequence[int], grade: Optional[int] = None) -> "PolyMatrix":
        sub = [[self.entries[i][j] for j in cols] for i in rows]
        if grade is None:
            grade = max(max((e.degree for r in sub for e in r), default=0), 0)
        return PolyMatrix(sub, grade, shape=(len(rows), len(cols)))

    def columns(self, cols: Sequence[int]) -> "PolyMatrix":
        return self.submatrix(range(self.m), cols)

    def rows(self, rows: Sequence[int]) -> "PolyMatrix":
        return self.submatrix(rows, range(self.n))

    def regrade(self, grade: int) -> "PolyMatrix":
        if grade < 0 or self.degree > grade:
            raise GradeError(f"cannot regrade a degree-{self.degree} matrix to grade {grade}")
        return PolyMatrix(self.entries, grade, shape=self.shape)

    def trimmed(self) -> "PolyMatrix":
        """Copy with grade equal to the actual degree (0 for the zero matrix)."""
        return self.regrade(max(self.degree, 0))

    def map(self, f, grade: Optional[int] = None) -> "PolyMatrix":
        return PolyMatrix([[f(e) for e in row] for row in self.entries], grade, shape=self.shape)

    def reversal(self, grade: Optional[int] = None) -> "PolyMatrix":
        """Entry-wise λ^g·P(1/λ) with g the grade."""
        g = self.grade if grade is None else grade
        return self.map(lambda p: poly_reverse(p, g), g)

    def evaluate(self, x) -> List[List[Fraction]]:
        return [[e(x) for e in row] for row in self.entries]

    def coefficient(self, k: int) -> List[List[Fraction]]:
        """Constant matrix of λ^k coefficients."""
        return [[e.coeff(k) for e in row] for row in self.entries]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return PolyMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                          max(self.grade, other.grade), shape=self.shape)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def __neg__(self) -> "PolyMatrix":
        return self.map(lambda p: -p, self.grade)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return pm_mul(self, other)

    def scale(self, c) -> "PolyMatrix":
        c = _to_poly(c)
        return self.map(lambda p: p * c)


def hstack(blocks: Sequence[PolyMatrix]) -> PolyMatrix:
    m = blocks[0].m
    if any(b.m != m for b in blocks):
        raise ShapeError("hstack needs equal row counts")
    rows = [sum((b.entries[i] for b in blocks), ()) for i in range(m)]
    return PolyMatrix(rows, max(b.grade for b in blocks), shape=(m, sum(b.n for b in blocks)))


def vstack(blocks: Sequence[PolyMatrix]) -> PolyMatrix:
    return hstack([b.T for b in blocks]).T


# -- products, profiles, highest-degree coefficients ---------------------------

def pm_mul(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    """Exact product; the result's grade is its actual degree (at least 0)."""
    if A.n != B.m:
        raise ShapeError(f"cannot multiply {A.m}x{A.n} by {B.m}x{B.n}")
    zero = Poly.zero()
    bcols = [B.col(j) for j in range(B.n)]
    rows = []
    for arow in A.entries:
        out = []
        for bcol in bcols:
            acc = zero
            for a, b in zip(arow, bcol):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        rows.append(out)
    return PolyMatrix(rows, None, shape=(A.m, B.n))


def pm_mul_chain(*ms: PolyMatrix) -> PolyMatrix:
    out = ms[0]
    for M in ms[1:]:
        out = pm_mul(out, M)
    return out


@dataclass(frozen=True)
class DegreeProfile:
    orientation: str
    degrees: tuple

    def __iter__(self):
        return iter(self.degrees)

    def __len__(self):
        return len(self.degrees)

    def __getitem__(self, i):
        return self.degrees[i]


def pm_degree_profile(M: PolyMatrix, orientation: str) -> DegreeProfile:
    _check_orientation(orientation)
    lines = M.entries if orientation == ROWS else [M.col(j) for j in range(M.n)]
    return DegreeProfile(orientation, tuple(max((e.degree for e in line), default=NEG_INF)
                                            for line in lines))


def row_degrees(M: PolyMatrix) -> tuple:
    return pm_degree_profile(M, ROWS).degrees


def col_degrees(M: PolyMatrix) -> tuple:
    return pm_degree_profile(M, COLUMNS).degrees


def pm_highest_coeff(M: PolyMatrix, orientation: str) -> ConstMatrix:
    """Highest-row-degree (or column-degree) coefficient matrix, shaped like M."""
    degs = pm_degree_profile(M, orientation).degrees
    for k, dk in enumerate(degs):
        if dk == NEG_INF:
            raise PreconditionError(f"{orientation[:-1]} {k} is zero")
    if orientation == COLUMNS:
        return tuple(tuple(M.entries[i][j].coeff(degs[j]) for j in range(M.n)) for i in range(M.m))
    return tuple(tuple(M.entries[i][j].coeff(degs[i]) for j in range(M.n)) for i in range(M.m))


def pm_is_reduced(M: PolyMatrix, orientation: str) -> bool:
    _check_orientation(orientation)
    degs = pm_degree_profile(M, orientation).degrees
    if any(dk == NEG_INF for dk in degs):
        return False
    H = pm_highest_coeff(M, orientation)
    return const_rank(H) == (M.n if orientation == COLUMNS else M.m)


# -- exact constant linear algebra --------------------------------------------

def rref(A: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over Q; pivots chosen left to right, top to bottom."""
    R = [[Fraction(x) for x in row] for row in A]
    m = len(R)
    n = len(R[0]) if R else 0
    pivots: List[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def const_rank(A: Sequence[Sequence]) -> int:
    return len(rref(A)[1])


def const_nullspace(A: Sequence[Sequence], n: Optional[int] = None) -> List[List[Fraction]]:
    """Basis of {x : A x = 0}, one vector per free column in increasing order."""
    R, pivots = rref(A)
    if n is None:
        n = len(A[0]) if A else 0
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, pc in enumerate(pivots):
            x[pc] = -R[row][f]
        basis.append(x)
    return basis


# -- fraction-free elimination on polynomial entries ---------------------------

def _bareiss(M: PolyMatrix):
    """Fraction-free elimination with full pivoting.

    Returns (rank, det) where det is only meaningful for square matrices of full
    rank. Pivot: lowest row, then lowest column, among nonzero candidates.
    """
    A = [list(row) for row in M.entries]
    m, n = M.m, M.n
    prev = Poly.one()
    sign = 1
    k = 0
    while k < min(m, n):
        piv = None
        for i in range(k, m):
            for j in range(k, n):
                if A[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i, j = piv
        if i != k:
            A[i], A[k] = A[k], A[i]
            sign = -sign
        if j != k:
            for row in A:
                row[j], row[k] = row[k], row[j]
            sign = -sign
        pk = A[k][k]
        for i in range(k + 1, m):
            aik = A[i][k]
            for j in range(k + 1, n):
                num = pk * A[i][j] - aik * A[k][j]
                A[i][j] = poly_exact_div(num, prev) if num else num
            A[i][k] = Poly.zero()
        prev = pk
        k += 1
    det = None
    if m == n:
        det = (prev if k == n else Poly.zero()) * sign
    return k, det


def pm_normal_rank(M: PolyMatrix) -> int:
    return _bareiss(M)[0]


def pm_determinant(M: PolyMatrix) -> Poly:
    if M.m != M.n:
        raise ShapeError("determinant of a non-square matrix")
    if M.m == 0:
        return Poly.one()
    return _bareiss(M)[1]


def pm_is_unimodular(M: PolyMatrix) -> bool:
    if M.m != M.n:
        return False
    det = pm_determinant(M)
    return bool(det) and det.degree == 0


# -- distance ------------------------------------------------------------------

def pm_distance_sq(P: PolyMatrix, Q: PolyMatrix) -> Fraction:
    """Sum over k of ||P_k - Q_k||_F^2 with P_k, Q_k the λ^k coefficient matrices."""
    if P.shape != Q.shape:
        raise ShapeError(f"shape mismatch {P.shape} vs {Q.shape}")
    total = Fraction(0)
    for rp, rq in zip(P.entries, Q.entries):
        for a, b in zip(rp, rq):
            total += sum((c * c for c in (a - b).coeffs), Fraction(0))
    return total


def distance_display(dist_sq: Fraction, digits: int = 20) -> str:
    """Square root of an exact squared distance, to ``digits`` significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        value = (Decimal(dist_sq.numerator) / Decimal(dist_sq.denominator)).sqrt()
    return str(value)
