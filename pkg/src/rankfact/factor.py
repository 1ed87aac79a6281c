"""Rank factorizations P = L·E·R and P = L·R, and their verification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple, Union

from .errors import ShapeError, ZeroMatrixError
from .polycore import NEG_INF
from .polymat import (COLUMNS, ROWS, PolyMatrix, col_degrees, pm_is_reduced,
                      pm_mul, pm_normal_rank, row_degrees)
from .minbasis import _column_reduce, is_minimal_basis, minimal_indices
from .smith import SmithDecomposition, smith_decompose

SMITH = "smith_rank"
LCER = "minimal_LcER"
LCR = "minimal_LcR"
LRR = "minimal_LRr"
KINDS = (SMITH, LCER, LCR, LRR)


@dataclass(frozen=True)
class RankFactorization:
    kind: str
    L: PolyMatrix
    E: Optional[PolyMatrix]
    R: PolyMatrix
    source: PolyMatrix

    @property
    def rank(self) -> int:
        return self.L.n

    def product(self) -> PolyMatrix:
        inner = self.R if self.E is None else pm_mul(self.E, self.R)
        return pm_mul(self.L, inner)


@dataclass(frozen=True)
class FactorizationReport:
    kind: Optional[str]
    product_ok: bool
    rank_ok: bool
    L_minimal: bool
    R_minimal: bool
    column_degrees: tuple
    row_degrees: tuple
    predictable_degree: object      # int, or NEG_INF if the product is zero
    predictable_applies: bool
    predictable_ok: bool
    degree_sums: tuple
    degree_sum_matches_grade: Tuple[bool, ...]
    kind_ok: Optional[bool]

    @property
    def ok(self) -> bool:
        return self.product_ok and self.rank_ok and self.predictable_ok and self.kind_ok is not False


def _smith_or_raise(P: PolyMatrix, sd: Optional[SmithDecomposition]) -> SmithDecomposition:
    sd = smith_decompose(P) if sd is None else sd
    if sd.rank == 0:
        raise ZeroMatrixError("the zero matrix has no rank factorization")
    return sd


def smith_rank_factorization(P: PolyMatrix, sd: Optional[SmithDecomposition] = None) -> RankFactorization:
    sd = _smith_or_raise(P, sd)
    r = sd.rank
    L = sd.U.columns(range(r))
    E = PolyMatrix.diag(sd.invariants)
    R = sd.V.rows(range(r))
    return RankFactorization(SMITH, L, E, R, P)


def minimal_rank_factorization(P: PolyMatrix, kind: str = LCER,
                               sd: Optional[SmithDecomposition] = None) -> RankFactorization:
    """One of the three minimal rank factorizations built from the Smith factors.

    With L~, E~, R~ the Smith rank factors, L~ = L_c·V_c and R~ = U_r·R_r by
    reduction; then LcER = (L_c, V_c·E~·U_r, R_r), LcR = (L_c, V_c·E~·R~) and
    LRr = (L~·E~·U_r, R_r). Full row (column) rank uses the identity for L_c (R_r).
    """
    if kind not in (LCER, LCR, LRR):
        raise ValueError(f"unknown minimal factorization kind {kind!r}")
    sf = smith_rank_factorization(P, sd)
    Lt, Et, Rt = sf.L, sf.E, sf.R
    m, n, r = P.m, P.n, sf.rank
    if r == m:
        Lc, Vc = PolyMatrix.identity(m), Lt
    else:
        Lc, Vc = _column_reduce(Lt)
    if r == n:
        Rr, Ur = PolyMatrix.identity(n), Rt
    else:
        RrT, UrT = _column_reduce(Rt.T)
        Rr, Ur = RrT.T, UrT.T
    if kind == LCER:
        return RankFactorization(kind, Lc, pm_mul(pm_mul(Vc, Et), Ur), Rr, P)
    if kind == LCR:
        return RankFactorization(kind, Lc, None, pm_mul(pm_mul(Vc, Et), Rt), P)
    return RankFactorization(kind, pm_mul(pm_mul(Lt, Et), Ur), None, Rr, P)


def _max_deg(*ds):
    return max(ds, default=NEG_INF)


def verify_factorization(P: PolyMatrix, f: Union[RankFactorization, tuple]) -> FactorizationReport:
    """Check a factorization, whether produced here or supplied from outside.

    ``f`` may be a RankFactorization or a raw tuple (L, R) / (L, E, R) with E
    possibly None. Failures are reported, never raised, except for shape errors.

    The predictable degree is max over i, j of deg L_{*i} + deg e_ij + deg R_{j*}
    (E taken as the identity when absent). It is guaranteed to equal deg P for
    L·R when either factor is reduced, and for L·E·R when both are.
    """
    if isinstance(f, RankFactorization):
        kind, L, E, R = f.kind, f.L, f.E, f.R
    else:
        kind = None
        L, E, R = (f[0], None, f[1]) if len(f) == 2 else f
    r = L.n
    if E is not None and E.shape != (r, R.m):
        raise ShapeError(f"middle factor has shape {E.shape}, expected {(r, R.m)}")
    if R.m != r or L.m != P.m or R.n != P.n:
        raise ShapeError("factor shapes are incompatible with P")
    inner = R if E is None else pm_mul(E, R)
    product = pm_mul(L, inner)
    product_ok = product.same_entries(P)
    rank_p = pm_normal_rank(P)
    rank_ok = (r == rank_p and pm_normal_rank(L) == r and pm_normal_rank(R) == r
               and (E is None or pm_normal_rank(E) == r))
    L_min = is_minimal_basis(L, COLUMNS)
    R_min = is_minimal_basis(R, ROWS)
    cdeg = col_degrees(L)
    rdeg = row_degrees(R)
    if E is None:
        pd = _max_deg(*(cdeg[i] + rdeg[i] for i in range(r)))
    else:
        pd = _max_deg(*(cdeg[i] + E[i, j].degree + rdeg[j] for i in range(r) for j in range(r)))
    L_red = pm_is_reduced(L, COLUMNS)
    R_red = pm_is_reduced(R, ROWS)
    applies = (L_red or R_red) if E is None else (L_red and R_red)
    predictable_ok = (not applies) or pd == P.degree
    inner_deg = row_degrees(inner)
    sums = tuple(cdeg[i] + inner_deg[i] for i in range(r))
    matches = tuple(s == P.grade for s in sums)
    return FactorizationReport(kind, product_ok, rank_ok, L_min, R_min, cdeg, rdeg, pd, applies,
                               predictable_ok, sums, matches, _kind_ok(kind, P, L, E, R, L_min, R_min))


def _kind_ok(kind, P, L, E, R, L_min, R_min) -> Optional[bool]:
    if kind is None:
        return None
    target = smith_decompose(P).invariants
    if kind == SMITH:
        diag = E is not None and all(E[i, j].is_zero() for i in range(E.m) for j in range(E.n) if i != j)
        return diag and tuple(E[i, i] for i in range(E.m)) == target
    if kind == LCER:
        return L_min and R_min and E is not None and smith_decompose(E).invariants == target
    if kind == LCR:
        return L_min and E is None and smith_decompose(R).invariants == target
    if kind == LRR:
        return R_min and E is None and smith_decompose(L).invariants == target
    raise ValueError(f"unknown factorization kind {kind!r}")


def degree_lower_bound(P: PolyMatrix) -> int:
    """ρ_max + c_max: no rank factorization has deg L + deg E + deg R below this."""
    sd = _smith_or_raise(P, None)
    mi = minimal_indices(P, sd)
    return max(mi.row_space) + max(mi.col_space)
