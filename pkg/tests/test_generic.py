import random
from fractions import Fraction

import pytest

from rankfact import (COLUMNS, ROWS, FactorizationWitness, PolyMatrix, Poly, SetDescriptor, bset_params,
                      check_membership, classify_orbit, complete_eigenstructure, homogenize_degrees,
                      is_minimal_basis, pad_to_equality, redistribute_degrees,
                      sample_B_member, sample_MH_member)
from rankfact.errors import EpsilonTooLarge, PreconditionError, SamplingError, ShapeError
from rankfact.generic import IN, NOT, UNKNOWN, sample_MH_member_verbose
from rankfact.polymat import col_degrees, row_degrees
from rankfact.rng import SplitMix64

from conftest import X, load_factors, load_matrix


@pytest.fixture(scope="module")
def technical():
    L, _, R = load_factors("unbalanced_witness")
    return load_matrix("unbalanced"), FactorizationWitness(L, R)


# -- parameters --------------------------------------------------------------------

@pytest.mark.parametrize("args,expected", [((2, 2, 2), (1, 0)), ((3, 2, 0), (0, 0)), ((4, 2, 5), (2, 1))])
def test_bset_params(args, expected):
    assert bset_params(*args) == expected


def test_bset_params_range():
    with pytest.raises(PreconditionError):
        bset_params(2, 2, 5)
    with pytest.raises(PreconditionError):
        bset_params(2, 0, 0)


def test_descriptor_validation():
    assert SetDescriptor("A_rho", 3, 3, 2, 2, rho=(2, 0)).a == 2
    with pytest.raises(PreconditionError):
        SetDescriptor("A_rho", 3, 3, 2, 2, a=1, rho=(2, 0))
    with pytest.raises(PreconditionError):
        SetDescriptor("A_rho", 3, 3, 2, 2, rho=(3, 0))
    with pytest.raises(PreconditionError):
        SetDescriptor("B", 3, 3, 2, 2)
    with pytest.raises(PreconditionError):
        SetDescriptor("Q", 3, 3, 2, 2, 1)
    with pytest.raises(PreconditionError):
        SetDescriptor("S", 3, 3, 2, 3)


# -- SplitMix64 ------------------------------------------------------------------------

def test_splitmix_reference_values():
    # first outputs for seed 0 of the standard SplitMix64 generator
    g = SplitMix64(0)
    assert [g.next_u64() for _ in range(3)] == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_splitmix_ranges():
    g = SplitMix64(42)
    draws = [g.coeff(3) for _ in range(2000)]
    assert set(draws) == set(range(-3, 4))
    nz = [g.nonzero_coeff(3) for _ in range(2000)]
    assert set(nz) == {-3, -2, -1, 1, 2, 3}


# -- membership ------------------------------------------------------------------------

def test_technical_example_with_witness(technical):
    P, w = technical
    res = check_membership(P, SetDescriptor("A_rho", 3, 3, 2, 2, rho=(2, 0)), w)
    assert res.verdict == IN and res.witness == w


def test_technical_example_refutations(technical):
    P, _ = technical
    assert check_membership(P, SetDescriptor("A_rho", 3, 3, 2, 2, rho=(1, 1))).verdict == NOT
    assert check_membership(P, SetDescriptor("C", 3, 3, 2, 2, 2)).verdict == NOT
    assert check_membership(P, SetDescriptor("B", 3, 3, 2, 2, 2)).verdict == NOT


def test_technical_example_in_no_C_set(technical):
    P, _ = technical
    for a in range(5):
        assert check_membership(P, SetDescriptor("C", 3, 3, 2, 2, a)).verdict == NOT, a


def test_technical_example_positive_memberships(technical):
    P, _ = technical
    for desc in (SetDescriptor("S", 3, 3, 2, 2), SetDescriptor("A", 3, 3, 2, 2),
                 SetDescriptor("OrbK", 3, 3, 2, 2, 2)):
        res = check_membership(P, desc)
        assert res.verdict == IN
        assert res.witness.product().same_entries(P)


def test_orbit4_refutations():
    P = load_matrix("orbit4")
    for fam in ("B", "M", "MH", "C"):
        assert check_membership(P, SetDescriptor(fam, 4, 4, 4, 2, 4)).verdict == NOT, fam
    assert check_membership(P, SetDescriptor("OrbK", 4, 4, 4, 2, 4)).verdict == IN


def test_off_orbit_memberships():
    Q = load_matrix("off_orbit")
    for fam in ("M", "B", "C", "A_a"):
        res = check_membership(Q, SetDescriptor(fam, 4, 4, 4, 2, 4))
        assert res.verdict == IN, fam
        assert res.witness.product().same_entries(Q)
    assert check_membership(Q, SetDescriptor("OrbK", 4, 4, 4, 2, 4)).verdict == NOT
    assert check_membership(Q, SetDescriptor("MH", 4, 4, 4, 2, 4)).verdict == NOT


def test_failing_witness_does_not_decide_set(technical):
    P, w = technical
    bad = FactorizationWitness(w.L, w.R.map(lambda e: e * 2))
    res = check_membership(P, SetDescriptor("A_rho", 3, 3, 2, 2, rho=(2, 0)), bad)
    assert res.verdict == IN  # still constructible without the bad witness
    assert any("witness fails" in e for e in res.evidence)


def test_membership_checks_grade_and_shape(technical):
    P, _ = technical
    with pytest.raises(PreconditionError):
        check_membership(P.regrade(3), SetDescriptor("S", 3, 3, 2, 2))
    with pytest.raises(ShapeError):
        check_membership(P, SetDescriptor("S", 4, 3, 2, 2))


def test_rank_too_large_is_refuted():
    P = PolyMatrix([[1, 0, 0], [0, X, 0], [0, 0, 0]])
    assert check_membership(P, SetDescriptor("S", 3, 3, 1, 1)).verdict == NOT


def test_verdicts_agree_with_own_witness():
    # without the witness the screen may say In or Unknown, never Not
    for seed in range(6):
        w = sample_B_member(3, 4, 3, 2, 3, seed)
        P = w.product().regrade(3)
        desc = SetDescriptor("B", 3, 4, 3, 2, 3)
        assert check_membership(P, desc, w).verdict == IN
        assert check_membership(P, desc).verdict in (IN, UNKNOWN)


# -- samplers --------------------------------------------------------------------------

def test_B_sampler_profile():
    w = sample_B_member(3, 3, 2, 2, 2, seed=1, coeff_bound=5)
    assert row_degrees(w.R) == (1, 1) and col_degrees(w.L) == (1, 1)
    assert w == sample_B_member(3, 3, 2, 2, 2, seed=1, coeff_bound=5)
    w0 = sample_B_member(3, 4, 3, 2, 0, seed=9)
    assert row_degrees(w0.R) == (0, 0) and col_degrees(w0.L) == (3, 3)


@pytest.mark.parametrize("params", [(3, 3, 2, 2, 1), (3, 4, 3, 2, 5), (4, 4, 4, 2, 3)])
def test_B_sampler_degree_total(params):
    m, n, d, r, a = params
    _, tR = bset_params(d, r, a)
    for seed in range(5):
        w = sample_B_member(m, n, d, r, a, seed)
        assert w.L.degree + w.R.degree == (d + 1 if tR else d)
        P = w.product().regrade(d)
        assert check_membership(P, SetDescriptor("B", m, n, d, r, a), w).verdict == IN


def test_MH_sampler():
    w = sample_MH_member(3, 4, 3, 2, 3, seed=7, coeff_bound=5, max_attempts=50)
    P = w.product().regrade(3)
    assert classify_orbit(P, 2) == 3
    assert check_membership(P, SetDescriptor("MH", 3, 4, 3, 2, 3), w).verdict == IN
    es = complete_eigenstructure(P)
    assert es.eigenvalue_free and es.rank == 2 and P.degree == 3


def test_MH_sampler_generic_indices():
    w = sample_MH_member(4, 4, 4, 2, 4, seed=3)
    es = complete_eigenstructure(w.product().regrade(4))
    assert es.left_indices == (2, 2) and es.right_indices == (2, 2)
    assert is_minimal_basis(w.L, COLUMNS) and is_minimal_basis(w.R, ROWS)


def test_MH_sampler_errors():
    with pytest.raises(PreconditionError):
        sample_MH_member(3, 3, 2, 2, 5, seed=1)
    # with coefficients in {-1, 0, 1}, seed 4 needs three draws for these parameters
    assert sample_MH_member_verbose(4, 4, 4, 2, 3, seed=4, coeff_bound=1).attempts == 3
    with pytest.raises(SamplingError):
        sample_MH_member_verbose(4, 4, 4, 2, 3, seed=4, coeff_bound=1, max_attempts=2)


# -- perturbations ---------------------------------------------------------------------

def test_redistribution_example(technical):
    _, w = technical
    res = redistribute_degrees(w, 0, 1, Fraction(1, 10))
    assert row_degrees(res.witness.R) == (1, 1) and col_degrees(res.witness.L) == (1, 1)
    assert res.dist_sq == Fraction(1, 50)
    assert res.witness.product().same_entries(res.product)
    P2 = res.product.regrade(2)
    assert check_membership(P2, SetDescriptor("A_rho", 3, 3, 2, 2, rho=(1, 1)), res.witness).verdict == IN
    assert check_membership(P2, SetDescriptor("B", 3, 3, 2, 2, 2), res.witness).verdict == IN


def test_redistribution_needs_gap(technical):
    _, w = technical
    step = redistribute_degrees(w, 0, 1, Fraction(1, 10)).witness
    with pytest.raises(PreconditionError):
        redistribute_degrees(step, 0, 1, Fraction(1, 10))


def test_redistribution_gap_of_exactly_two(technical):
    _, w = technical  # row degrees (2, 0)
    res = redistribute_degrees(w, 0, 1, Fraction(1, 3))
    assert row_degrees(res.witness.R) == (1, 1)


def test_displacement_shrinks_with_epsilon(technical):
    _, w = technical
    ds = [redistribute_degrees(w, 0, 1, Fraction(1, 10) / 2**k).dist_sq for k in range(3)]
    assert ds[0] > ds[1] > ds[2] > 0


def test_homogenize_example(technical):
    _, w = technical
    res = homogenize_degrees(w, Fraction(1, 10))
    assert res.steps == 1 and res.bound == Fraction(1, 50)
    assert row_degrees(res.witness.R) == (1, 1)


def test_homogenize_noop():
    w = sample_B_member(3, 3, 2, 2, 2, seed=4)
    res = homogenize_degrees(w, Fraction(1, 10))
    assert res.steps == 0 and res.dist_sq == 0 and res.witness.product().same_entries(w.product())


def test_homogenize_three_rows():
    # row degrees (4, 0, 2) at grade 4: two unit transfers reach (2, 2, 2)
    rng = random.Random(1)
    rho = (4, 0, 2)

    def poly(deg):
        return Poly([rng.randint(-2, 2) for _ in range(deg)] + [rng.choice((-1, 1, 2))])

    R = PolyMatrix([[poly(rho[i]) for _ in range(4)] for i in range(3)])
    L = PolyMatrix([[poly(4 - rho[j]) for j in range(3)] for _ in range(4)])
    res = homogenize_degrees(FactorizationWitness(L, R), Fraction(1, 10))
    assert res.steps == 2
    assert row_degrees(res.witness.R) == (2, 2, 2)
    assert res.dist_sq <= res.bound


def test_homogenize_rejects_unequal_sums():
    w = FactorizationWitness(PolyMatrix([[X, 1], [1, 0], [0, 1]]), PolyMatrix([[1, 0, 0], [0, X, 1]]))
    with pytest.raises(PreconditionError):
        homogenize_degrees(w, Fraction(1, 10), d=2)


def test_padding():
    L, _, R = load_factors("eigfree_factors")
    assert pad_to_equality(FactorizationWitness(L, R), 6, Fraction(1, 10)).steps == 0
    # drop the first row of R by one degree so the first pair has slack
    w = FactorizationWitness(L, PolyMatrix([[1, 1, 0], list(R.row(1))]))
    res = pad_to_equality(w, 6, Fraction(1, 10))
    sums = [c + r for c, r in zip(col_degrees(res.witness.L), row_degrees(res.witness.R))]
    assert sums == [6, 6]
    assert res.dist_sq <= res.bound
    ds = [pad_to_equality(w, 6, Fraction(1, 10) / 2**k).dist_sq for k in range(3)]
    assert ds[0] > ds[1] > ds[2] > 0


def test_padding_zero_pair():
    w = FactorizationWitness(PolyMatrix([[1, 0], [X, 0], [0, 0]]), PolyMatrix([[1, X, 0], [0, 0, 0]]))
    res = pad_to_equality(w, 2, Fraction(1, 10))
    assert res.witness.L.col(1)[0] == Poly.monomial(2, Fraction(1, 10))
    assert res.witness.R.row(1)[0] == Poly.const(Fraction(1, 10))
    ds = [pad_to_equality(w, 2, Fraction(1, 10) / 2**k).dist_sq for k in range(3)]
    assert ds[0] > ds[1] > ds[2]


def test_padding_precondition():
    w = FactorizationWitness(PolyMatrix([[X**3], [1]]), PolyMatrix([[1, 0]]))
    with pytest.raises(PreconditionError):
        pad_to_equality(w, 2, Fraction(1, 10))
    w = FactorizationWitness(PolyMatrix([[1], [1]]), PolyMatrix([[0, 0]]))
    with pytest.raises(PreconditionError):
        pad_to_equality(w, 2, Fraction(1, 10))


def test_epsilon_too_large_is_reported():
    # with ε = 1 the rebalanced row [λ - λ/ε, 0, 1] collapses to a constant
    w = FactorizationWitness(PolyMatrix([[0, X**2], [1, 1], [1, 0]]), PolyMatrix([[X, X**2, 1], [1, 0, 0]]))
    with pytest.raises(EpsilonTooLarge):
        redistribute_degrees(w, 0, 1, 1)
    assert row_degrees(redistribute_degrees(w, 0, 1, Fraction(1, 2)).witness.R) == (1, 1)
    res = homogenize_degrees(w, 1)
    assert res.steps == 1 and res.epsilon == Fraction(1, 2)
