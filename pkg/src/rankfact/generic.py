"""Factorized descriptions of low-rank polynomial matrices of bounded degree.

Families of sets of products L·R (L is m×r, R is r×n), all of grade d:

==========  =============================================================
``S``       deg L_i <= d, deg R_i <= d, deg L_i + deg R_i <= d
``A``       deg L_i + deg R_i = d
``A_a``     as ``A`` and sum of row degrees of R equals a
``A_rho``   deg R_i = rho_i and deg L_i = d - rho_i
``B``       ``A_rho`` with rho the balanced split of a (d_R + 1 first)
``C``       degree upper bounds of the balanced split
``M``       ``B`` with L and R minimal bases
``MH``      ``M`` with null-space indices of the generic orbit K_a
``OrbK``    the orbit of K_a itself, decided through the eigenstructure
==========  =============================================================

Only ``S`` and ``OrbK`` are decidable here; other families get a verified
witness, a violated necessary condition, or an honest ``Unknown``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .eigenstructure import classify_orbit, generic_orbit_spec, is_eigenvalue_free
from .errors import (EpsilonTooLarge, PreconditionError, SamplingError, ShapeError, check)
from .factor import LCR, LRR, minimal_rank_factorization
from .minbasis import (is_minimal_basis, left_nullspace_minimal_basis, minimal_indices,
                       right_nullspace_minimal_basis)
from .polycore import NEG_INF, Poly
from .polymat import (COLUMNS, ROWS, PolyMatrix, col_degrees, hstack, pm_distance_sq, pm_mul,
                      row_degrees, vstack)
from .rng import SplitMix64
from .smith import smith_decompose

FAMILIES = ("S", "A", "A_a", "A_rho", "B", "C", "M", "MH", "OrbK")
_NEEDS_A = {"A_a", "B", "C", "M", "MH", "OrbK"}

IN = "DefinitelyIn"
NOT = "DefinitelyNot"
UNKNOWN = "Unknown"


def bset_params(d: int, r: int, a: int) -> Tuple[int, int]:
    """(d_R, t_R) = (a // r, a % r)."""
    if r < 1 or not 0 <= a <= r * d:
        raise PreconditionError(f"need r >= 1 and 0 <= a <= rd; got d={d}, r={r}, a={a}")
    return divmod(a, r)


def balanced_profile(d: int, r: int, a: int) -> Tuple[int, ...]:
    dR, tR = bset_params(d, r, a)
    return (dR + 1,) * tR + (dR,) * (r - tR)


@dataclass(frozen=True)
class SetDescriptor:
    family: str
    m: int
    n: int
    d: int
    r: int
    a: Optional[int] = None
    rho: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise PreconditionError(f"unknown family {self.family!r}")
        m, n, d, r = self.m, self.n, self.d, self.r
        if m < 2 or n < 2 or d < 1 or not 0 < r < min(m, n):
            raise PreconditionError(f"need m, n >= 2, d >= 1, 0 < r < min(m, n); got {(m, n, d, r)}")
        if self.family == "A_rho":
            if self.rho is None or len(self.rho) != r:
                raise PreconditionError(f"A_rho needs a degree list of length {r}")
            if any(not 0 <= x <= d for x in self.rho):
                raise PreconditionError(f"row degrees {self.rho} must lie in [0, {d}]")
            object.__setattr__(self, "rho", tuple(self.rho))
            if self.a is None:
                object.__setattr__(self, "a", sum(self.rho))
            elif self.a != sum(self.rho):
                raise PreconditionError(f"a = {self.a} differs from sum of {self.rho}")
        elif self.family in _NEEDS_A:
            if self.a is None or not 0 <= self.a <= r * d:
                raise PreconditionError(f"family {self.family} needs 0 <= a <= {r * d}")

    @property
    def dR(self) -> int:
        return bset_params(self.d, self.r, self.a)[0]

    @property
    def tR(self) -> int:
        return bset_params(self.d, self.r, self.a)[1]

    def row_profile(self) -> Optional[Tuple[int, ...]]:
        """Exact row degrees of R demanded by the family, if it fixes them."""
        if self.family == "A_rho":
            return self.rho
        if self.family in ("B", "M", "MH"):
            return balanced_profile(self.d, self.r, self.a)
        return None


@dataclass(frozen=True)
class FactorizationWitness:
    L: PolyMatrix
    R: PolyMatrix

    def product(self) -> PolyMatrix:
        return pm_mul(self.L, self.R)


@dataclass(frozen=True)
class Membership:
    verdict: str
    evidence: Tuple[str, ...]
    witness: Optional[FactorizationWitness] = None


# -- witness checking ----------------------------------------------------------

def _null_index_check(desc: SetDescriptor, L: PolyMatrix, R: PolyMatrix, sdL, sdR) -> List[Tuple[str, bool]]:
    spec = generic_orbit_spec(desc.m, desc.n, desc.d, desc.r, desc.a)
    eta = left_nullspace_minimal_basis(L, sdL).degrees
    eps = right_nullspace_minimal_basis(R, sdR).degrees
    # the null spaces of full-rank factors coincide with those of the product
    if sdL.rank == desc.r == sdR.rank:
        P = pm_mul(L, R)
        sdP = smith_decompose(P)
        check(left_nullspace_minimal_basis(P, sdP).degrees == eta, "left null indices of L and L·R differ")
        check(right_nullspace_minimal_basis(P, sdP).degrees == eps, "right null indices of R and L·R differ")
    return [(f"left null indices of L are {spec.left_indices}", eta == spec.left_indices),
            (f"right null indices of R are {spec.right_indices}", eps == spec.right_indices)]


def witness_conditions(desc: SetDescriptor, L: PolyMatrix, R: PolyMatrix) -> List[Tuple[str, bool]]:
    """The family's defining conditions on (L, R), each as (description, holds)."""
    d, r = desc.d, desc.r
    cd, rd_ = col_degrees(L), row_degrees(R)
    out: List[Tuple[str, bool]] = []
    fam = desc.family
    if fam == "S":
        out.append(("deg L_i <= d and deg R_i <= d", all(x <= d for x in cd + rd_)))
        out.append(("deg L_i + deg R_i <= d", all(cd[i] + rd_[i] <= d for i in range(r))))
        return out
    if fam == "C":
        bounds = balanced_profile(d, r, desc.a)
        out.append((f"row degrees of R bounded by {bounds}", all(rd_[i] <= bounds[i] for i in range(r))))
        out.append(("column degrees of L bounded by the complements",
                    all(cd[i] <= d - bounds[i] for i in range(r))))
        return out
    out.append(("deg L_i + deg R_i = d", all(cd[i] + rd_[i] == d for i in range(r))))
    if fam == "A_a":
        out.append((f"row degrees of R sum to {desc.a}", sum(rd_) == desc.a))
    prof = desc.row_profile()
    if prof is not None:
        out.append((f"row degrees of R are {prof}", tuple(rd_) == prof))
    if fam in ("M", "MH", "OrbK") and all(ok for _, ok in out):
        sdL, sdR = smith_decompose(L), smith_decompose(R)
        out.append(("L is a minimal basis", is_minimal_basis(L, COLUMNS, sdL)))
        out.append(("R is a minimal basis", is_minimal_basis(R, ROWS, sdR)))
        if fam in ("MH", "OrbK") and all(ok for _, ok in out):
            out.extend(_null_index_check(desc, L, R, sdL, sdR))
    return out


def _check_witness(P: PolyMatrix, desc: SetDescriptor, w: FactorizationWitness):
    if w.L.shape != (desc.m, desc.r) or w.R.shape != (desc.r, desc.n):
        raise ShapeError(f"witness shapes {w.L.shape}, {w.R.shape} do not match "
                         f"{(desc.m, desc.r)}, {(desc.r, desc.n)}")
    conds = [("L·R equals P", w.product().same_entries(P))]
    if conds[0][1]:
        conds += witness_conditions(desc, w.L, w.R)
    return all(ok for _, ok in conds), conds


# -- constructive witnesses ----------------------------------------------------

def _permuted(L: PolyMatrix, R: PolyMatrix, order: Sequence[int]) -> FactorizationWitness:
    return FactorizationWitness(L.columns(order), R.rows(order))


def _arrangements(desc: SetDescriptor, L: PolyMatrix, R: PolyMatrix):
    """Orderings of the inner index worth trying for this family."""
    r = desc.r
    rd_ = row_degrees(R)
    prof = desc.row_profile()
    if prof is not None:
        slots = list(range(r))
        order = []
        for target in prof:
            i = next((k for k in slots if rd_[k] == target), None)
            if i is None:
                return []
            slots.remove(i)
            order.append(i)
        return [order]
    if desc.family == "C":
        # largest row degrees into the slots with the larger bound
        return [sorted(range(r), key=lambda i: -rd_[i])]
    return [list(range(r))]


def _candidate_factors(P: PolyMatrix, rank: int, r: int):
    if rank == 0:
        yield PolyMatrix.zeros(P.m, r), PolyMatrix.zeros(r, P.n)
        return
    for kind in (LCR, LRR):
        f = minimal_rank_factorization(P, kind)
        L, R = f.L, f.R
        if rank < r:
            L = hstack([L, PolyMatrix.zeros(P.m, r - rank)])
            R = vstack([R, PolyMatrix.zeros(r - rank, P.n)])
        yield L, R


def _construct(P: PolyMatrix, desc: SetDescriptor, rank: int) -> Optional[FactorizationWitness]:
    for L, R in _candidate_factors(P, rank, desc.r):
        for order in _arrangements(desc, L, R):
            w = _permuted(L, R, order)
            if _check_witness(P, desc, w)[0]:
                return w
    return None


# -- membership ----------------------------------------------------------------

def _dominates(upper: Sequence[int], lower: Sequence[int]) -> bool:
    return all(u >= v for u, v in zip(sorted(upper), sorted(lower)))


def _necessary_violations(P: PolyMatrix, desc: SetDescriptor, rank: int) -> List[str]:
    """Conditions every member must satisfy, checked from P alone."""
    d, r, fam = desc.d, desc.r, desc.family
    if P.degree > d:
        return [f"deg P = {P.degree} exceeds d = {d}"]
    if rank > r:
        return [f"normal rank {rank} exceeds r = {r}"]
    if rank < r:
        if fam in ("M", "MH", "OrbK"):
            return [f"normal rank {rank} is below r = {r}, but minimal-basis factors force rank r"]
        return []
    if fam == "S":
        return []
    mi = minimal_indices(P)
    rho, c = mi.row_space, mi.col_space
    out = []
    if fam in ("A", "A_a"):
        if max(rho) > d or max(c) > d:
            out.append(f"a minimal index exceeds d: row space {rho}, column space {c}")
        if sum(rho) + sum(c) > r * d:
            out.append(f"row and column space indices sum to {sum(rho) + sum(c)} > rd = {r * d}")
        if fam == "A_a":
            if sum(rho) > desc.a:
                out.append(f"row space indices {rho} sum above a = {desc.a}")
            if sum(c) > r * d - desc.a:
                out.append(f"column space indices {c} sum above rd - a = {r * d - desc.a}")
    prof = desc.row_profile()
    if prof is not None or fam == "C":
        rows = prof if prof is not None else balanced_profile(d, r, desc.a)
        cols = tuple(d - x for x in rows)
        if not _dominates(rows, rho):
            out.append(f"row degrees {rows} do not dominate the row space minimal indices {rho}")
        if not _dominates(cols, c):
            out.append(f"column degrees {cols} do not dominate the column space minimal indices {c}")
        if fam in ("M", "MH"):
            if tuple(sorted(rows)) != rho or tuple(sorted(cols)) != c:
                out.append(f"minimal-basis factors need row space indices {tuple(sorted(rows))} and "
                           f"column space indices {tuple(sorted(cols))}; P has {rho} and {c}")
    if fam in ("M", "MH") and not is_eigenvalue_free(P):
        out.append("P has eigenvalues, but minimal-basis factors with degree sums d exclude them")
    if fam == "MH":
        got = classify_orbit(P, r)
        if got != desc.a:
            out.append(f"P is not in the orbit of K_{desc.a} (classified as {got})")
    return out


def check_membership(P: PolyMatrix, desc: SetDescriptor,
                     witness: Optional[FactorizationWitness] = None) -> Membership:
    if P.shape != (desc.m, desc.n):
        raise ShapeError(f"P is {P.m}x{P.n}, descriptor expects {desc.m}x{desc.n}")
    if P.grade != desc.d:
        raise PreconditionError(f"P has grade {P.grade}, descriptor expects d = {desc.d}")
    evidence: List[str] = []
    if witness is not None:
        ok, conds = _check_witness(P, desc, witness)
        if ok:
            return Membership(IN, tuple(f"witness: {c}" for c, _ in conds), witness)
        evidence += [f"witness fails: {c}" for c, holds in conds if not holds]

    rank = smith_decompose(P).rank
    if desc.family == "OrbK" and P.degree <= desc.d:
        got = classify_orbit(P, desc.r)
        if got == desc.a:
            w = _construct(P, desc, rank)
            check(w is not None, "orbit member without a minimal factorization witness")
            return Membership(IN, tuple(evidence + [f"eigenstructure matches K_{desc.a}"]), w)
        return Membership(NOT, tuple(evidence + [f"eigenstructure classified as {got}, not K_{desc.a}"]))

    violated = _necessary_violations(P, desc, rank)
    if violated:
        return Membership(NOT, tuple(evidence + violated))
    w = _construct(P, desc, rank)
    if w is not None:
        return Membership(IN, tuple(evidence + ["constructed witness verified"]), w)
    return Membership(UNKNOWN, tuple(evidence + ["necessary conditions hold; no witness found"]))


# -- samplers ------------------------------------------------------------------

def _random_poly(rng: SplitMix64, degree: int, bound: int) -> Poly:
    if degree < 0:
        return Poly.zero()
    coeffs = [rng.coeff(bound) for _ in range(degree)]
    coeffs.append(rng.nonzero_coeff(bound))
    return Poly(coeffs)


def _draw_B(rng: SplitMix64, m: int, n: int, d: int, r: int, a: int, bound: int) -> FactorizationWitness:
    rows = balanced_profile(d, r, a)
    cols = [d - x for x in rows]
    L = PolyMatrix([[_random_poly(rng, cols[j], bound) for j in range(r)] for _ in range(m)])
    R = PolyMatrix([[_random_poly(rng, rows[i], bound) for _ in range(n)] for i in range(r)])
    return FactorizationWitness(L, R)


def _check_sampler_params(m, n, d, r, a, bound):
    SetDescriptor("B", m, n, d, r, a)
    if bound < 1:
        raise PreconditionError("coefficient bound must be at least 1")


def sample_B_member(m: int, n: int, d: int, r: int, a: int, seed: int, coeff_bound: int = 5) -> FactorizationWitness:
    """Random L·R with the balanced degree profile; L drawn row-major, then R."""
    _check_sampler_params(m, n, d, r, a, coeff_bound)
    return _draw_B(SplitMix64(seed), m, n, d, r, a, coeff_bound)


@dataclass(frozen=True)
class SampleResult:
    witness: FactorizationWitness
    attempts: int


def sample_MH_member_verbose(m: int, n: int, d: int, r: int, a: int, seed: int,
                             coeff_bound: int = 5, max_attempts: int = 50) -> SampleResult:
    _check_sampler_params(m, n, d, r, a, coeff_bound)
    desc = SetDescriptor("MH", m, n, d, r, a)
    rng = SplitMix64(seed)
    for attempt in range(1, max_attempts + 1):
        w = _draw_B(rng, m, n, d, r, a, coeff_bound)
        if all(ok for _, ok in witness_conditions(desc, w.L, w.R)):
            return SampleResult(w, attempt)
    raise SamplingError(f"no verified witness in {max_attempts} attempts for {(m, n, d, r, a)}, seed {seed}")


def sample_MH_member(m: int, n: int, d: int, r: int, a: int, seed: int,
                     coeff_bound: int = 5, max_attempts: int = 50) -> FactorizationWitness:
    return sample_MH_member_verbose(m, n, d, r, a, seed, coeff_bound, max_attempts).witness


# -- perturbations -------------------------------------------------------------

@dataclass(frozen=True)
class PerturbationResult:
    witness: FactorizationWitness
    original: PolyMatrix
    product: PolyMatrix
    dist_sq: Fraction
    bound: Fraction
    steps: int
    epsilon: Fraction
    notes: Tuple[str, ...] = field(default=())


def _norm_sq(polys) -> Fraction:
    return sum((c * c for p in polys for c in p.coeffs), Fraction(0))


def _cols(M: PolyMatrix) -> List[List[Poly]]:
    return [list(M.col(j)) for j in range(M.n)]


def _from_cols(cols: List[List[Poly]], m: int) -> PolyMatrix:
    return PolyMatrix([list(r) for r in zip(*cols)] if cols and m else [], None, shape=(m, len(cols)))


def pad_to_equality(w: FactorizationWitness, d: int, eps) -> PerturbationResult:
    """Raise each slack pair to deg L_i + deg R_i = d with an ε-sized term.

    A pair with R_i ≠ 0 gets ε·λ^(d - deg R_i)·e_1 added to L_i; a zero pair
    becomes (ε·λ^d·e_1, ε·e_1^T). The bound uses Cauchy-Schwarz over the K
    modified pairs: K·Σ‖ΔL_i R_i‖².
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionError("epsilon must be positive")
    L, R = w.L, w.R
    m, r, n = L.m, L.n, R.n
    cd, rdg = col_degrees(L), row_degrees(R)
    for i in range(r):
        if rdg[i] == NEG_INF and cd[i] != NEG_INF:
            raise PreconditionError(f"column {i} of L is nonzero while row {i} of R is zero")
        if cd[i] > d or rdg[i] > d or cd[i] + rdg[i] > d:
            raise PreconditionError(f"pair {i} has degrees ({cd[i]}, {rdg[i]}) outside the grade {d}")
    Lc = _cols(L)
    Rr = [list(R.row(i)) for i in range(r)]
    terms: List[Fraction] = []
    for i in range(r):
        if cd[i] + rdg[i] == d:
            continue
        if rdg[i] == NEG_INF:
            Lc[i] = [Poly.monomial(d, eps) if k == 0 else Poly.zero() for k in range(m)]
            Rr[i] = [Poly.const(eps) if k == 0 else Poly.zero() for k in range(n)]
            terms.append(eps ** 4)
        else:
            Lc[i][0] = Lc[i][0] + Poly.monomial(d - rdg[i], eps)
            terms.append(eps * eps * _norm_sq(Rr[i]))
    out = FactorizationWitness(_from_cols(Lc, m), PolyMatrix(Rr, None, shape=(r, n)))
    ncd, nrd = col_degrees(out.L), row_degrees(out.R)
    check(all(ncd[i] + nrd[i] == d for i in range(r)), "padding did not reach equal degree sums")
    old, new = w.product(), out.product()
    return PerturbationResult(out, old, new, pm_distance_sq(old, new),
                              len(terms) * sum(terms, Fraction(0)), len(terms), eps)


def _require_equal_sums(w: FactorizationWitness, d: int):
    cd, rdg = col_degrees(w.L), row_degrees(w.R)
    if not all(cd[i] + rdg[i] == d for i in range(w.L.n)):
        raise PreconditionError(f"degree sums {[cd[i] + rdg[i] for i in range(w.L.n)]} are not all {d}")
    return cd, rdg


def redistribute_degrees(w: FactorizationWitness, j: int, k: int, eps, d: Optional[int] = None) -> PerturbationResult:
    """Move one unit of row degree of R from index j to index k (needs ρ_j - ρ_k >= 2).

    The grade d defaults to deg L_j + deg R_j. Raises EpsilonTooLarge when the
    resulting degree pattern is wrong, which only happens for ε not small enough.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionError("epsilon must be positive")
    L, R = w.L, w.R
    m, r, n = L.m, L.n, R.n
    if not (0 <= j < r and 0 <= k < r and j != k):
        raise PreconditionError(f"invalid index pair ({j}, {k}) for r = {r}")
    if d is None:
        d = col_degrees(L)[j] + row_degrees(R)[j]
    cd, rho = _require_equal_sums(w, d)
    gap = rho[j] - rho[k]
    if gap < 2:
        raise PreconditionError(f"row degrees {rho[j]} and {rho[k]} differ by less than 2")
    v = [p.coeff(rho[j]) for p in R.row(j)]          # top coefficient of R_j
    w2 = [p.coeff(d - rho[k]) for p in L.col(k)]     # top coefficient of L_k
    Lc = _cols(L)
    Rr = [list(R.row(i)) for i in range(r)]
    Lc[j] = [p - Poly.monomial(d - rho[j] + 1, eps * c) if c else p for p, c in zip(Lc[j], w2)]
    Rr[k] = [p + Poly.monomial(rho[k] + 1, eps * c) if c else p for p, c in zip(Rr[k], v)]
    Lk = _from_cols(Lc, m)
    Rk = PolyMatrix(Rr, None, shape=(r, n))
    perturbed = pm_mul(Lk, Rk)
    # D = I - (1/ε) λ^(gap-1) e_j e_k^T, D^{-1} = I + (1/ε) λ^(gap-1) e_j e_k^T
    shift = Poly.monomial(gap - 1, 1 / eps)
    new_Rj = [a - shift * b for a, b in zip(Rr[j], Rr[k])]
    new_Lk = [b + shift * a for a, b in zip(Lc[j], Lc[k])]
    Rr[j] = new_Rj
    Lc[k] = new_Lk
    out = FactorizationWitness(_from_cols(Lc, m), PolyMatrix(Rr, None, shape=(r, n)))
    product = out.product()
    check(product.same_entries(perturbed), "rebalancing changed the product")
    want_rows = list(rho)
    want_rows[j] -= 1
    want_rows[k] += 1
    got_rows, got_cols = row_degrees(out.R), col_degrees(out.L)
    if list(got_rows) != want_rows or list(got_cols) != [d - x for x in want_rows]:
        raise EpsilonTooLarge(f"epsilon {eps} gave row degrees {got_rows}, expected {tuple(want_rows)}")
    old = w.product()
    ds = pm_distance_sq(old, product)
    return PerturbationResult(out, old, product, ds, ds, 1, eps)


def _height(w: FactorizationWitness) -> Fraction:
    return max((abs(c) for M in (w.L, w.R) for row in M.entries for p in row for c in p.coeffs),
               default=Fraction(0))


def homogenize_degrees(w: FactorizationWitness, eps, d: Optional[int] = None,
                       max_halvings: int = 64) -> PerturbationResult:
    """Repeat redistribution on (first max, first min) until row degrees differ by at most one.

    Step s uses ε / (2^s · max(1, H)) with H the current coefficient height,
    halving further on EpsilonTooLarge. The result is reordered into the
    balanced profile (rows of degree d_R + 1 first). The reported bound is
    steps · Σ dist²_s, which dominates the exact total dist² by Cauchy-Schwarz.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionError("epsilon must be positive")
    r = w.L.n
    if d is None:
        d = col_degrees(w.L)[0] + row_degrees(w.R)[0]
    _require_equal_sums(w, d)
    cur = w
    step_sq: List[Fraction] = []
    notes: List[str] = []
    smallest = eps
    while True:
        rho = row_degrees(cur.R)
        hi, lo = max(rho), min(rho)
        if hi - lo < 2:
            break
        j, k = rho.index(hi), rho.index(lo)
        e = eps / (2 ** len(step_sq) * max(Fraction(1), _height(cur)))
        for _ in range(max_halvings):
            try:
                res = redistribute_degrees(cur, j, k, e, d)
                break
            except EpsilonTooLarge:
                e /= 2
        else:
            raise EpsilonTooLarge(f"no epsilon down to {e} worked at step {len(step_sq) + 1}")
        notes.append(f"step {len(step_sq) + 1}: move a unit from row {j} to row {k} with epsilon {e}")
        step_sq.append(res.dist_sq)
        smallest = min(smallest, e)
        cur = res.witness
    rho = row_degrees(cur.R)
    order = sorted(range(r), key=lambda i: -rho[i])  # stable: d_R + 1 rows first
    cur = _permuted(cur.L, cur.R, order)
    a = sum(rho)
    check(row_degrees(cur.R) == balanced_profile(d, r, a), "homogenization missed the balanced profile")
    old, new = w.product(), cur.product()
    return PerturbationResult(cur, old, new, pm_distance_sq(old, new),
                              len(step_sq) * sum(step_sq, Fraction(0)), len(step_sq), smallest, tuple(notes))
