
import numpy as np
import pytest

from lieinvar.algebra import abelian_algebra
from lieinvar.invariants import find_invariants
from lieinvar.oracle import (
    FlowError,
    evaluate_along,
    flow_drift,
    generator_matrix,
    integrate_flow,
    max_drift,
    numeric_rank_at,
    random_start,
)
from lieinvar.poly import parse_polynomial

from conftest import L


@pytest.mark.parametrize("m", range(5))
def test_invariants_are_conserved(m):
    A = L(m)
    for p in find_invariants(A, 4).polys:
        for seed in range(1, 6):
            assert max_drift(A, p, seed) < 1e-8


def test_v1_drifts_under_x_but_not_h():
    A = L(2)
    v1 = parse_polynomial("v1", A.basis)
    start = random_start(A.dim, 1)
    assert flow_drift(A, v1, A.index("x"), start) > 1e-3
    # v1 spans the zero-weight space, so the h flow fixes it
    assert flow_drift(A, v1, A.index("h"), start) == 0.0


def test_rk4_matches_matrix_exponential():
    A = L(1)
    start = random_start(A.dim, 3)
    traj = integrate_flow(A, 0, start, 1e-3, 1000)
    M = generator_matrix(A, 0)
    # the x generator is nilpotent on L(1), so the exponential series terminates
    E = np.eye(A.dim)
    term = np.eye(A.dim)
    for k in range(1, A.dim + 1):
        term = term @ M / k
        E = E + term
    assert np.allclose(traj.points[-1], E @ np.asarray(start), atol=1e-10)


def test_generator_matrix_of_h_is_diagonal_weight():
    A = L(2)
    G = generator_matrix(A, A.index("h"))
    assert np.allclose(G, np.diag(np.diag(G)))


def test_evaluate_along():
    A = L(0)
    F = parse_polynomial("4*x*y + h^2 - 3", A.basis)
    pts = np.array([[1.0, 2.0, 3.0, 0.0], [0.0, 0.0, 0.0, 5.0]])
    assert evaluate_along(F, pts).tolist() == [14.0, -3.0]


def test_start_and_horizon_checked():
    A = L(1)
    F = parse_polynomial("v0", A.basis)
    with pytest.raises(ValueError):
        flow_drift(A, F, 0, [3.0] * A.dim)
    with pytest.raises(ValueError):
        flow_drift(A, F, 0, [0.0] * A.dim, step=1e-2, steps=1000)


def test_blow_up_raises_flow_error():
    A = L(6)
    with pytest.raises(FlowError, match="step"):
        integrate_flow(A, A.index("h"), [1.0] * A.dim, 50.0, 200)


def test_random_start_deterministic():
    assert random_start(5, 4) == random_start(5, 4)
    assert all(-2 <= v <= 2 for v in random_start(5, 4))


@pytest.mark.parametrize("m", range(6))
def test_numeric_rank_matches_exact(m):
    A = L(m)
    expected = [2, 4, 4, 6, 6, 6][m]
    assert numeric_rank_at(A, random_start(A.dim, m)) == expected


def test_numeric_rank_degenerate_points():
    assert numeric_rank_at(L(3), [0.0] * 7) == 0
    assert numeric_rank_at(abelian_algebra(["a", "b"]), [1.0, 1.0]) == 0
