"""Complete eigenstructure, the Index Sum identity and generic orbit specifications."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import PreconditionError, check
from .polycore import Poly
from .polymat import PolyMatrix
from .minbasis import left_nullspace_minimal_basis, right_nullspace_minimal_basis
from .smith import invariant_polynomials, multiplicities_from_invariants, smith_decompose


@dataclass(frozen=True)
class Eigenstructure:
    m: int
    n: int
    grade: int
    rank: int
    invariant_polys: Tuple[Poly, ...]
    inf_mults: Tuple[int, ...]
    left_indices: Tuple[int, ...]
    right_indices: Tuple[int, ...]

    @property
    def finite_degree(self) -> int:
        return sum(e.degree for e in self.invariant_polys)

    def index_sum(self) -> int:
        return sum(self.left_indices) + sum(self.right_indices) + sum(self.inf_mults) + self.finite_degree

    @property
    def eigenvalue_free(self) -> bool:
        return all(e.is_one() for e in self.invariant_polys) and not any(self.inf_mults)


@dataclass(frozen=True)
class GenericOrbitSpec:
    m: int
    n: int
    d: int
    r: int
    a: int
    alpha: int
    s: int
    beta: int
    t: int
    right_indices: Tuple[int, ...]
    left_indices: Tuple[int, ...]


@dataclass(frozen=True)
class FullRankGenericSpec:
    """Generic structure of full-rank grade-d matrices.

    For m = n the generic matrix is regular with degree d and nd distinct
    eigenvalues; that case carries ``regular=True`` and no index lists.
    """
    m: int
    n: int
    d: int
    regular: bool
    alpha: Optional[int]
    s: Optional[int]
    right_indices: Tuple[int, ...]
    left_indices: Tuple[int, ...]


def _infinite_mults(P: PolyMatrix) -> Tuple[int, ...]:
    g = multiplicities_from_invariants(invariant_polynomials(P.reversal()), 0)
    if g:
        check(g[0] == P.grade - P.degree, "first infinite multiplicity differs from grade minus degree")
    return g


def complete_eigenstructure(P: PolyMatrix) -> Eigenstructure:
    sd = smith_decompose(P)
    gamma = _infinite_mults(P)
    check(len(gamma) == sd.rank, "reversal has a different normal rank")
    eta = left_nullspace_minimal_basis(P, sd).degrees
    eps = right_nullspace_minimal_basis(P, sd).degrees
    es = Eigenstructure(P.m, P.n, P.grade, sd.rank, sd.invariants, gamma, eta, eps)
    check(es.index_sum() == sd.rank * P.grade,
          f"index sum {es.index_sum()} differs from rank*grade {sd.rank * P.grade}")
    return es


def is_eigenvalue_free(P: PolyMatrix) -> bool:
    inv = invariant_polynomials(P)
    if not all(e.is_one() for e in inv):
        return False
    return not any(_infinite_mults(P))


def _split(total: int, parts: int) -> Tuple[int, int, Tuple[int, ...]]:
    q, s = divmod(total, parts)
    return q, s, (q,) * (parts - s) + (q + 1,) * s


def generic_orbit_spec(m: int, n: int, d: int, r: int, a: int) -> GenericOrbitSpec:
    if m < 2 or n < 2 or d < 1 or not 1 <= r < min(m, n):
        raise PreconditionError(f"need m, n >= 2, d >= 1 and 1 <= r < min(m, n); got {(m, n, d, r)}")
    if not 0 <= a <= r * d:
        raise PreconditionError(f"a = {a} outside [0, {r * d}]")
    alpha, s, right = _split(a, n - r)
    beta, t, left = _split(r * d - a, m - r)
    check(sum(right) + sum(left) == r * d, "generic index lists do not sum to rd")
    return GenericOrbitSpec(m, n, d, r, a, alpha, s, beta, t, right, left)


def full_rank_generic_spec(m: int, n: int, d: int) -> FullRankGenericSpec:
    if m < 1 or n < 1 or d < 0:
        raise PreconditionError(f"invalid dimensions {(m, n, d)}")
    if m == n:
        return FullRankGenericSpec(m, n, d, True, None, None, (), ())
    if m > n:
        t = full_rank_generic_spec(n, m, d)
        return FullRankGenericSpec(m, n, d, False, t.alpha, t.s, (), t.right_indices)
    alpha, s, right = _split(m * d, n - m)
    return FullRankGenericSpec(m, n, d, False, alpha, s, right, ())


def classify_orbit(P: PolyMatrix, r: int) -> Optional[int]:
    """Return a if P lies in the orbit of the a-th generic structure of rank r, else None."""
    generic_orbit_spec(P.m, P.n, P.grade, r, 0)  # parameter validation
    es = complete_eigenstructure(P)
    if es.rank != r or not es.eigenvalue_free:
        return None
    a = sum(es.right_indices)
    if a > r * P.grade:
        return None
    spec = generic_orbit_spec(P.m, P.n, P.grade, r, a)
    if es.right_indices == spec.right_indices and es.left_indices == spec.left_indices:
        return a
    return None
