"""Column/row reduction and minimal bases of the four rational subspaces.

The bases are built from a Smith decomposition P = U·S·V:

* column space: first r columns of U,
* row space: first r rows of V,
* right null space: last n-r columns of V^{-1},
* left null space: last m-r rows of U^{-1}.

Each of these is full rank at every point (it is a block of a unimodular
matrix), so reducing it yields a minimal basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import PreconditionError, check
from .polycore import NEG_INF, Poly
from .polymat import (COLUMNS, ROWS, PolyMatrix, col_degrees, const_nullspace,
                      pm_highest_coeff, pm_is_reduced)
from .smith import SmithDecomposition, smith_decompose


@dataclass(frozen=True)
class MinimalBasis:
    matrix: PolyMatrix
    orientation: str
    degrees: Tuple[int, ...]


@dataclass(frozen=True)
class MinimalIndices:
    left_null: Tuple[int, ...]
    right_null: Tuple[int, ...]
    row_space: Tuple[int, ...]
    col_space: Tuple[int, ...]


def _col_key(col):
    deg = max((e.degree for e in col), default=NEG_INF)
    return (deg, tuple(e.coeffs for e in col))


def _column_reduce(M: PolyMatrix, canonical: bool = True) -> Tuple[PolyMatrix, PolyMatrix]:
    """Reduction without the precondition check. Returns (M_red, V) with M = M_red·V."""
    m, n = M.shape
    cols: List[List[Poly]] = [list(M.col(j)) for j in range(n)]
    V = [[Poly.one() if i == j else Poly.zero() for j in range(n)] for i in range(n)]
    while True:
        cur = PolyMatrix([list(r) for r in zip(*cols)] if m and n else [], None, shape=(m, n))
        degs = col_degrees(cur)
        check(all(dk != NEG_INF for dk in degs), "column became zero during reduction")
        null = const_nullspace(pm_highest_coeff(cur, COLUMNS), n)
        if not null:
            break
        x = null[0]
        support = [i for i in range(n) if x[i]]
        top = max(degs[i] for i in support)
        js = max(i for i in support if degs[i] == top)
        f = [Poly.monomial(top - degs[i], x[i]) if x[i] else Poly.zero() for i in range(n)]
        new = [Poly.zero()] * m
        for i in support:
            new = [a + f[i] * b for a, b in zip(new, cols[i])]
        before = sum(degs)
        cols[js] = new
        xj = x[js]
        vj = V[js]
        V = [[a - (f[i] * b).scale(1 / xj) for a, b in zip(V[i], vj)] if i != js and x[i] else V[i]
             for i in range(n)]
        V[js] = [b.scale(1 / xj) for b in vj]
        after = max((e.degree for e in new), default=NEG_INF)
        check(after < degs[js], "reduction step did not lower the column degree")
        check(sum(degs) - degs[js] + after < before, "total column degree did not decrease")
    if canonical:
        for j in range(n):
            lead = next(e for e in cols[j] if e)
            s = 1 / lead.lc
            if s != 1:
                cols[j] = [e.scale(s) for e in cols[j]]
                V[j] = [e.scale(lead.lc) for e in V[j]]
        order = sorted(range(n), key=lambda j: _col_key(cols[j]))
        cols = [cols[j] for j in order]
        V = [V[j] for j in order]
    red = PolyMatrix([list(r) for r in zip(*cols)] if m and n else [], None, shape=(m, n))
    return red, PolyMatrix(V, None, shape=(n, n))


def _require_everywhere_full_rank(M: PolyMatrix, orientation: str) -> None:
    sd = smith_decompose(M)
    full = M.n if orientation == COLUMNS else M.m
    if sd.rank != full:
        raise PreconditionError(f"matrix has normal rank {sd.rank}, needs full {orientation[:-1]} rank {full}")
    bad = [e for e in sd.invariants if not e.is_one()]
    if bad:
        raise PreconditionError(f"matrix loses rank at the roots of invariant polynomial {bad[-1]}")


def column_reduce(M: PolyMatrix, canonical: bool = True) -> Tuple[PolyMatrix, PolyMatrix]:
    """Return (M_red, V) with M = M_red·V, V unimodular and M_red column reduced.

    M must have full column rank at every point; M_red is then a minimal basis
    of the column space and its column degrees are the minimal indices.
    """
    _require_everywhere_full_rank(M, COLUMNS)
    return _column_reduce(M, canonical)


def row_reduce(M: PolyMatrix, canonical: bool = True) -> Tuple[PolyMatrix, PolyMatrix]:
    """Return (M_red, U) with M = U·M_red and M_red row reduced."""
    red, V = column_reduce(M.T, canonical)
    return red.T, V.T


def is_minimal_basis(M: PolyMatrix, orientation: str, sd: Optional[SmithDecomposition] = None) -> bool:
    if not pm_is_reduced(M, orientation):
        return False
    sd = smith_decompose(M) if sd is None else sd
    full = M.n if orientation == COLUMNS else M.m
    return sd.rank == full and all(e.is_one() for e in sd.invariants)


def _basis(raw: PolyMatrix, orientation: str) -> MinimalBasis:
    if orientation == COLUMNS:
        red, _ = _column_reduce(raw)
    else:
        red, _ = _column_reduce(raw.T)
        red = red.T
    degs = col_degrees(red) if orientation == COLUMNS else col_degrees(red.T)
    return MinimalBasis(red, orientation, tuple(sorted(degs)))


def _smith(P: PolyMatrix, sd: Optional[SmithDecomposition]) -> SmithDecomposition:
    return smith_decompose(P) if sd is None else sd


def col_space_minimal_basis(P: PolyMatrix, sd: Optional[SmithDecomposition] = None) -> MinimalBasis:
    sd = _smith(P, sd)
    if sd.rank == 0:
        raise PreconditionError("the zero matrix has no column space basis")
    return _basis(sd.U.columns(range(sd.rank)), COLUMNS)


def row_space_minimal_basis(P: PolyMatrix, sd: Optional[SmithDecomposition] = None) -> MinimalBasis:
    sd = _smith(P, sd)
    if sd.rank == 0:
        raise PreconditionError("the zero matrix has no row space basis")
    return _basis(sd.V.rows(range(sd.rank)), ROWS)


def right_nullspace_minimal_basis(P: PolyMatrix, sd: Optional[SmithDecomposition] = None) -> MinimalBasis:
    sd = _smith(P, sd)
    return _basis(sd.V_inv.columns(range(sd.rank, P.n)), COLUMNS)


def left_nullspace_minimal_basis(P: PolyMatrix, sd: Optional[SmithDecomposition] = None) -> MinimalBasis:
    sd = _smith(P, sd)
    return _basis(sd.U_inv.rows(range(sd.rank, P.m)), ROWS)


def minimal_indices(P: PolyMatrix, sd: Optional[SmithDecomposition] = None) -> MinimalIndices:
    sd = _smith(P, sd)
    eta = left_nullspace_minimal_basis(P, sd).degrees
    eps = right_nullspace_minimal_basis(P, sd).degrees
    if sd.rank:
        rho = row_space_minimal_basis(P, sd).degrees
        c = col_space_minimal_basis(P, sd).degrees
    else:
        rho = c = ()
    check(sum(eta) == sum(c), f"left null indices {eta} and column space indices {c} differ in sum")
    check(sum(eps) == sum(rho), f"right null indices {eps} and row space indices {rho} differ in sum")
    return MinimalIndices(eta, eps, rho, c)
