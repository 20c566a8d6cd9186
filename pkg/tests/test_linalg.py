import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lieinvar.linalg import (
    determinant,
    evaluate_matrix,
    exact_nullspace,
    fraction_free_solve,
    generic_rank,
    pfaffian,
    random_point,
    rank,
    rref,
)
from lieinvar.poly import Polynomial

V = ("a", "b", "c")


def const(v):
    return Polynomial.constant(V, v)


def leibniz_det(M):
    """Permutation-sum determinant, used as an independent check."""
    n = len(M)
    total = Polynomial.zero(V)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        term = const(-1 if inv % 2 else 1)
        for i in range(n):
            term = term * M[i][perm[i]]
        total = total + term
    return total


def random_poly_matrix(rng, rows, cols, density=0.7):
    M = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            if rng.random() < density:
                terms = {tuple(rng.randint(0, 1) for _ in V): Fraction(rng.randint(-3, 3)) for _ in range(2)}
                row.append(Polynomial(V, terms))
            else:
                row.append(Polynomial.zero(V))
        M.append(row)
    return M


rational_matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(
            st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3), min_size=c, max_size=c),
            min_size=r, max_size=r,
        )
    )
)


@settings(max_examples=200)
@given(rational_matrices)
def test_generic_rank_matches_exact_rank_on_constants(rows):
    M = [[const(v) for v in row] for row in rows]
    assert generic_rank(M) == rank(rows)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_rank_at_points_bounded_by_generic_rank(seed):
    rng = random.Random(seed)
    M = random_poly_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
    g = generic_rank(M)
    ranks = [rank(evaluate_matrix(M, random_point(len(V), rng))) for _ in range(6)]
    assert max(ranks) <= g


def test_generic_rank_of_rank_deficient_product():
    a, b, c = (Polynomial.var(V, n) for n in V)
    # rank one: outer product of (a, b) and (b, c)
    M = [[a * b, a * c], [b * b, b * c]]
    assert generic_rank(M) == 1
    assert generic_rank([[Polynomial.zero(V)] * 3] * 2) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_determinant_matches_permutation_sum(n):
    rng = random.Random(n)
    for _ in range(5):
        M = random_poly_matrix(rng, n, n)
        assert determinant(M) == leibniz_det(M)


def test_determinant_with_zero_leading_entry():
    a, b, _ = (Polynomial.var(V, n) for n in V)
    z = Polynomial.zero(V)
    assert determinant([[z, a], [b, z]]) == -(a * b)


def test_fraction_free_solve_identity():
    rng = random.Random(7)
    for _ in range(10):
        A = random_poly_matrix(rng, 3, 3, density=1.0)
        if not determinant(A):
            continue
        B = random_poly_matrix(rng, 3, 2)
        D, N = fraction_free_solve(A, B)
        assert D == determinant(A) or D == -determinant(A)
        for i in range(3):
            for j in range(2):
                lhs = sum((A[i][k] * N[k][j] for k in range(3)), Polynomial.zero(V))
                assert lhs == D * B[i][j]


def test_fraction_free_solve_singular():
    a = Polynomial.var(V, "a")
    with pytest.raises(ZeroDivisionError):
        fraction_free_solve([[a, a], [a, a]], [[a], [a]])


@pytest.mark.parametrize("n", [2, 4, 6])
def test_pfaffian_squares_to_determinant(n):
    rng = random.Random(n)
    A = [[Polynomial.zero(V)] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        e = Polynomial(V, {tuple(rng.randint(0, 1) for _ in V): Fraction(rng.randint(-3, 3))})
        A[i][j], A[j][i] = e, -e
    assert pfaffian(A) * pfaffian(A) == determinant(A)


def test_pfaffian_odd_order_rejected():
    with pytest.raises(ValueError):
        pfaffian([[const(0)]])


def test_nullspace_and_rref():
    rows = [[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(6)]]
    R, piv = rref(rows)
    assert piv == [0]
    assert R == [[1, 2, 3]]
    ns = exact_nullspace(rows)
    assert len(ns) == 2
    for v in ns:
        assert all(sum(r[k] * v[k] for k in range(3)) == 0 for r in rows)
    assert exact_nullspace([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]) == []


def test_random_point_range_and_determinism():
    p1 = random_point(5, random.Random(3))
    p2 = random_point(5, random.Random(3))
    assert p1 == p2
    assert all(-10 <= v <= 10 for v in p1)
