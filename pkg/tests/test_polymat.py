import random
from fractions import Fraction

import pytest

from rankfact import (COLUMNS, NEG_INF, ROWS, Poly, PolyMatrix, pm_degree_profile, pm_distance_sq,
                      pm_highest_coeff, pm_is_reduced, pm_is_unimodular, pm_mul, pm_normal_rank)
from rankfact.errors import GradeError, PreconditionError, ShapeError
from rankfact.polymat import (const_nullspace, const_rank, distance_display, hstack, pm_determinant,
                              pm_mul_chain, vstack)

from conftest import X, load_factors, load_matrix
from oracles import brute_rank, leibniz_det, random_matrix, scalar_dot, to_sympy


@pytest.fixture(scope="module")
def example():
    L, E, R = load_factors("rank2_example_smith_factors")
    return load_matrix("rank2_example"), L, E, R


# -- construction ----------------------------------------------------------------

def test_grade_defaults_to_degree():
    M = PolyMatrix([[X**3, 1]])
    assert M.grade == 3 and M.degree == 3
    assert PolyMatrix([[0, 0]]).grade == 0


def test_grade_below_degree_rejected():
    with pytest.raises(GradeError):
        PolyMatrix([[X**3]], 2)


def test_ragged_rows_rejected():
    with pytest.raises(ShapeError):
        PolyMatrix([[1, 2], [3]])


def test_zero_size_matrices():
    E = PolyMatrix([], 0, shape=(3, 0))
    assert E.shape == (3, 0)
    assert (PolyMatrix.identity(2) @ PolyMatrix([], 0, shape=(2, 0))).shape == (2, 0)
    assert (PolyMatrix([], 0, shape=(2, 0)) @ PolyMatrix([], 0, shape=(0, 3))) == PolyMatrix.zeros(2, 3)


def test_equality_includes_grade():
    A = PolyMatrix([[X]], 1)
    B = A.regrade(4)
    assert A != B and A.same_entries(B)


def test_transpose_and_stacking():
    A = PolyMatrix([[1, X], [X**2, 0]])
    assert A.T.T == A
    assert A.T[0, 1] == X**2
    assert hstack([A, A]).shape == (2, 4)
    assert vstack([A, A]).row(3) == A.row(1)


# -- products --------------------------------------------------------------------

def test_smith_factors_multiply_to_rank2_example(example):
    P, L, E, R = example
    assert pm_mul_chain(L, E, R).same_entries(P)


def test_identity_is_neutral(example):
    P = example[0]
    assert pm_mul(PolyMatrix.identity(3), P).same_entries(P)


def test_row_times_column_is_dot_product():
    rng = random.Random(7)
    for _ in range(20):
        A = random_matrix(rng, 1, 2, 3)
        B = random_matrix(rng, 2, 1, 3)
        assert pm_mul(A, B)[0, 0] == scalar_dot(A.row(0), B.col(0))


def test_product_grade_is_actual_degree():
    A = PolyMatrix([[X, 0]], 5)
    B = PolyMatrix([[0], [X]], 5)
    assert pm_mul(A, B).grade == 0


def test_shape_mismatch():
    with pytest.raises(ShapeError):
        pm_mul(PolyMatrix.identity(2), PolyMatrix.identity(3))


def test_product_matches_sympy():
    rng = random.Random(11)
    for _ in range(10):
        A, B = random_matrix(rng, 2, 3, 2), random_matrix(rng, 3, 2, 2)
        assert (to_sympy(A) * to_sympy(B) - to_sympy(A @ B)).expand().is_zero_matrix


# -- degree profiles and highest coefficients -------------------------------------

def test_degree_profiles(example):
    _, L, _, _ = example
    assert pm_degree_profile(L, COLUMNS).degrees == (8, 2)
    assert pm_degree_profile(PolyMatrix.zeros(2, 2), ROWS).degrees == (NEG_INF, NEG_INF)
    Rr = PolyMatrix([[1, 0, 0], [0, X**2, 1]])
    assert pm_degree_profile(Rr, ROWS).degrees == (0, 2)


def test_highest_coefficient_matrices(example):
    _, L, _, R = example
    assert pm_highest_coeff(L, COLUMNS) == ((1, 1), (0, 0), (0, 0))
    assert pm_highest_coeff(R, ROWS) == ((0, -1, 0), (0, 1, 0))
    assert pm_highest_coeff(PolyMatrix.identity(2), COLUMNS) == ((1, 0), (0, 1))


def test_highest_coefficient_zero_line():
    with pytest.raises(PreconditionError, match="column 1"):
        pm_highest_coeff(PolyMatrix([[1, 0], [X, 0]]), COLUMNS)


def test_reducedness(example):
    _, L, _, _ = example
    Lc = load_factors("rank2_example_lcer")[0]
    assert not pm_is_reduced(L, COLUMNS)
    assert pm_is_reduced(Lc, COLUMNS)
    for o in (ROWS, COLUMNS):
        assert pm_is_reduced(PolyMatrix.identity(3), o)
    assert not pm_is_reduced(PolyMatrix([[1, 0], [X, 0]]), COLUMNS)


# -- rank, determinant, unimodularity ---------------------------------------------

def test_normal_rank_examples(example):
    assert pm_normal_rank(example[0]) == 2
    assert pm_normal_rank(PolyMatrix.zeros(3, 2)) == 0
    assert pm_normal_rank(PolyMatrix([[X, X**2], [1, X]])) == 1


def test_normal_rank_matches_brute_force_minors():
    rng = random.Random(2024)
    for _ in range(25):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        k = rng.randint(1, min(m, n))
        M = random_matrix(rng, m, k, 2) @ random_matrix(rng, k, n, 1)
        assert pm_normal_rank(M) == brute_rank(M)


def test_rank_of_product_bounded():
    rng = random.Random(5)
    for _ in range(20):
        A, B = random_matrix(rng, 3, 2, 2), random_matrix(rng, 2, 4, 2)
        assert pm_normal_rank(A @ B) <= min(pm_normal_rank(A), pm_normal_rank(B))


def test_determinant_matches_leibniz():
    rng = random.Random(3)
    for _ in range(15):
        n = rng.randint(1, 4)
        M = random_matrix(rng, n, n, 2)
        assert pm_determinant(M) == leibniz_det(M)


def test_unimodular_examples():
    assert pm_is_unimodular(PolyMatrix([[1, 0], [X**6, 1]]))
    assert not pm_is_unimodular(PolyMatrix.diag([Poly.one(), X], 2, 2))
    assert not pm_is_unimodular(PolyMatrix([[1, 0, 0], [0, 1, 0]]))


def test_unimodular_closed_under_product():
    U = PolyMatrix([[1, X**2], [0, 1]])
    V = PolyMatrix([[2, 0], [X - 3, Fraction(1, 2)]])
    assert pm_is_unimodular(U) and pm_is_unimodular(V)
    assert pm_is_unimodular(U @ V)


def test_const_linear_algebra():
    A = [[1, 2, 3], [2, 4, 6]]
    assert const_rank(A) == 1
    null = const_nullspace(A, 3)
    assert len(null) == 2
    for v in null:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)


# -- distance --------------------------------------------------------------------

def test_distance_examples():
    P = load_matrix("unbalanced")
    assert pm_distance_sq(P, P) == 0
    c0, c1 = Fraction(3, 2), Fraction(-2)
    Z = PolyMatrix.zeros(1, 1, 1)
    assert pm_distance_sq(Z, PolyMatrix([[Poly([c0, c1])]])) == c0**2 + c1**2


def test_distance_shape_mismatch():
    with pytest.raises(ShapeError):
        pm_distance_sq(PolyMatrix.identity(2), PolyMatrix.identity(3))


def _triangle_holds(ab, bc, ac):
    # sqrt(ac) <= sqrt(ab) + sqrt(bc) without square roots
    slack = ac - ab - bc
    return slack <= 0 or slack * slack <= 4 * ab * bc


def test_distance_metric_properties():
    rng = random.Random(17)
    for _ in range(20):
        P, Q, R = (random_matrix(rng, 2, 3, 2) for _ in range(3))
        assert pm_distance_sq(P, Q) == pm_distance_sq(Q, P)
        assert (pm_distance_sq(P, Q) == 0) == P.same_entries(Q)
        assert _triangle_holds(pm_distance_sq(P, Q), pm_distance_sq(Q, R), pm_distance_sq(P, R))


def test_distance_display():
    assert distance_display(Fraction(1, 50)).startswith("0.1414213562373095")
    assert distance_display(Fraction(0)) == "0"
