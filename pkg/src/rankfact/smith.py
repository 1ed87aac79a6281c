"""Smith normal form with tracked unimodular transformations.

``smith_decompose(P)`` returns U, V unimodular and monic invariants e_1 | e_2 | ...
with P = U·S·V. The inverses of U and V are accumulated alongside by replaying
each elementary operation inverted, so null-space bases come for free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import check
from .polycore import NEG_INF, Poly, poly_divrem
from .polymat import PolyMatrix, pm_mul

FINITE = "finite"
INFINITY = "infinity"


@dataclass(frozen=True)
class SmithDecomposition:
    U: PolyMatrix
    invariants: Tuple[Poly, ...]
    V: PolyMatrix
    rank: int
    U_inv: PolyMatrix
    V_inv: PolyMatrix

    @property
    def S(self) -> PolyMatrix:
        return PolyMatrix.diag(self.invariants, self.U.n, self.V.m)

    def reconstruct(self) -> PolyMatrix:
        return pm_mul(pm_mul(self.U, self.S), self.V)


@dataclass(frozen=True)
class PartialMultiplicities:
    point: str              # FINITE or INFINITY
    value: object           # α for finite points, the grade for infinity
    sequence: Tuple[int, ...]


def _identity(k: int) -> List[List[Poly]]:
    return [[Poly.one() if i == j else Poly.zero() for j in range(k)] for i in range(k)]


class _Reducer:
    """Mutable working state: P = U·A·V, U·Uinv = I, V·Vinv = I."""

    def __init__(self, P: PolyMatrix):
        self.m, self.n = P.shape
        self.A = [list(row) for row in P.entries]
        self.U = _identity(self.m)
        self.Ui = _identity(self.m)
        self.V = _identity(self.n)
        self.Vi = _identity(self.n)

    # row operations act on A from the left; U absorbs the inverse from the right
    def row_addmul(self, i: int, j: int, c: Poly) -> None:
        """row_i += c·row_j"""
        A = self.A
        A[i] = [a + c * b if b else a for a, b in zip(A[i], A[j])]
        for row in self.U:
            if row[i]:
                row[j] = row[j] - c * row[i]
        self.Ui[i] = [a + c * b if b else a for a, b in zip(self.Ui[i], self.Ui[j])]

    def row_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        self.A[i], self.A[j] = self.A[j], self.A[i]
        for row in self.U:
            row[i], row[j] = row[j], row[i]
        self.Ui[i], self.Ui[j] = self.Ui[j], self.Ui[i]

    def row_scale(self, i: int, s: Fraction) -> None:
        self.A[i] = [a.scale(s) for a in self.A[i]]
        inv = 1 / s
        for row in self.U:
            row[i] = row[i].scale(inv)
        self.Ui[i] = [a.scale(s) for a in self.Ui[i]]

    # column operations act on A from the right; V absorbs the inverse from the left
    def col_addmul(self, j: int, i: int, c: Poly) -> None:
        """col_j += c·col_i"""
        for row in self.A:
            if row[i]:
                row[j] = row[j] + c * row[i]
        self.V[i] = [a - c * b if b else a for a, b in zip(self.V[i], self.V[j])]
        for row in self.Vi:
            if row[i]:
                row[j] = row[j] + c * row[i]

    def col_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        for row in self.A:
            row[i], row[j] = row[j], row[i]
        self.V[i], self.V[j] = self.V[j], self.V[i]
        for row in self.Vi:
            row[i], row[j] = row[j], row[i]

    def pick_pivot(self, k: int) -> Optional[Tuple[int, int]]:
        best, best_deg = None, None
        for i in range(k, self.m):
            for j in range(k, self.n):
                d = self.A[i][j].degree
                if d != NEG_INF and (best_deg is None or d < best_deg):
                    best, best_deg = (i, j), d
        return best

    def reduce_block(self, k: int) -> bool:
        """Isolate a pivot at (k, k) that divides the trailing block. False if block is zero."""
        A = self.A
        while True:
            piv = self.pick_pivot(k)
            if piv is None:
                return False
            self.row_swap(k, piv[0])
            self.col_swap(k, piv[1])
            p = A[k][k]
            dirty = False
            for i in range(k + 1, self.m):
                if A[i][k]:
                    q, r = poly_divrem(A[i][k], p)
                    self.row_addmul(i, k, -q)
                    dirty = dirty or bool(r)
            for j in range(k + 1, self.n):
                if A[k][j]:
                    q, r = poly_divrem(A[k][j], p)
                    self.col_addmul(j, k, -q)
                    dirty = dirty or bool(r)
            if dirty:
                continue
            bad = next(((i, j) for i in range(k + 1, self.m) for j in range(k + 1, self.n)
                        if A[i][j] and poly_divrem(A[i][j], p)[1]), None)
            if bad is None:
                break
            # pull the offending row into row k; the next pass sees a nonzero remainder
            self.row_addmul(k, bad[0], Poly.one())
        lc = A[k][k].lc
        if lc != 1:
            self.row_scale(k, 1 / lc)
        return True


def smith_decompose(P: PolyMatrix) -> SmithDecomposition:
    red = _Reducer(P)
    r = 0
    while r < min(red.m, red.n) and red.reduce_block(r):
        r += 1
    inv = tuple(red.A[k][k] for k in range(r))
    for k in range(r):
        check(inv[k].lc == 1, "invariant polynomial not monic")
        if k:
            check(not poly_divrem(inv[k], inv[k - 1])[1], "invariant divisibility chain broken")
    mk = lambda rows, k: PolyMatrix(rows, None, shape=(k, k))
    return SmithDecomposition(mk(red.U, red.m), inv, mk(red.V, red.n), r,
                              mk(red.Ui, red.m), mk(red.Vi, red.n))


def invariant_polynomials(P: PolyMatrix) -> Tuple[Poly, ...]:
    return smith_decompose(P).invariants


def multiplicities_from_invariants(invariants, alpha) -> Tuple[int, ...]:
    return tuple(e.valuation_at(alpha) for e in invariants)


def partial_multiplicities_at(P: PolyMatrix, alpha) -> PartialMultiplicities:
    alpha = Fraction(alpha)
    seq = multiplicities_from_invariants(invariant_polynomials(P), alpha)
    return PartialMultiplicities(FINITE, alpha, seq)


def partial_multiplicities_at_infinity(P: PolyMatrix) -> PartialMultiplicities:
    """Multiplicities at 0 of the grade reversal λ^d·P(1/λ), d = P.grade."""
    d = P.grade
    seq = multiplicities_from_invariants(invariant_polynomials(P.reversal(d)), 0)
    if seq:
        check(seq[0] == d - P.degree, "first infinite multiplicity differs from grade minus degree")
    return PartialMultiplicities(INFINITY, d, seq)
