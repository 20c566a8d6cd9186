"""Floating-point cross-checks: RK4 flows of coadjoint generators, numeric rank."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import LieAlgebra
from .poly import Polynomial


class FlowError(ArithmeticError):
    pass


@dataclass(frozen=True)
class FlowTrajectory:
    points: np.ndarray     # shape (steps + 1, n)
    field_index: int
    step: float
    steps: int


def generator_matrix(L: LieAlgebra, i: int) -> np.ndarray:
    """A with x' = A x for the flow of generator i: A[j, k] = -c_ij^k."""
    A = np.zeros((L.dim, L.dim))
    for j in range(L.dim):
        for k, c in L.bracket(i, j).items():
            A[j, k] = -float(c)
    return A


def integrate_flow(L: LieAlgebra, field_index: int, start: Sequence[float],
                   step: float, steps: int) -> FlowTrajectory:
    """Classical fixed-step RK4 on the linear flow of one generator.

    For x' = A x the four RK4 stages collapse to multiplication by
    I + hA + (hA)^2/2 + (hA)^3/6 + (hA)^4/24, which is used directly.
    """
    hA = step * generator_matrix(L, field_index)
    P = np.eye(L.dim)
    term = np.eye(L.dim)
    for k in range(1, 5):
        term = term @ hA / k
        P = P + term
    x = np.asarray(start, dtype=float)
    pts = np.empty((steps + 1, L.dim))
    pts[0] = x
    for s in range(steps):
        with np.errstate(over="ignore", invalid="ignore"):
            x = P @ x
        if not np.all(np.isfinite(x)):
            raise FlowError(f"non-finite state at step {s + 1}")
        pts[s + 1] = x
    return FlowTrajectory(pts, field_index, step, steps)


def flow_drift(L: LieAlgebra, F: Polynomial, field_index: int, start: Sequence[float],
               step: float = 1e-3, steps: int = 1000) -> float:
    """max_t |F(x(t)) - F(x(0))| / max(1, |F(x(0))|) along an RK4 trajectory."""
    if any(abs(v) > 2 for v in start):
        raise ValueError("start point must lie in [-2, 2]^n")
    if step * steps > 1 + 1e-12:
        raise ValueError("integration horizon step*steps must not exceed 1")
    traj = integrate_flow(L, field_index, start, step, steps)
    values = evaluate_along(F, traj.points)
    f0 = values[0]
    return float(np.max(np.abs(values - f0)) / max(1.0, abs(f0)))


def evaluate_along(F: Polynomial, points: np.ndarray) -> np.ndarray:
    """Values of F at each row of ``points``."""
    out = np.zeros(points.shape[0])
    for m, c in F.terms.items():
        t = np.full(points.shape[0], float(c))
        for k, e in enumerate(m):
            if e:
                t = t * points[:, k] ** e
        out += t
    return out


def random_start(n: int, seed: int) -> list:
    rng = random.Random(seed)
    return [rng.uniform(-2.0, 2.0) for _ in range(n)]


def max_drift(L: LieAlgebra, F: Polynomial, seed: int, step: float = 1e-3, steps: int = 1000) -> float:
    """Worst drift over every generator field from one seeded start."""
    start = random_start(L.dim, seed)
    return max(flow_drift(L, F, i, start, step, steps) for i in range(L.dim))


def numeric_rank_at(L: LieAlgebra, point: Sequence[float], tol: float = 1e-9) -> int:
    """Rank of M_L(point) by complete-pivoting elimination.

    A pivot counts when it exceeds ``tol`` times the first (largest) pivot.
    """
    n = L.dim
    M = np.zeros((n, n))
    x = np.asarray(point, dtype=float)
    for i in range(n):
        for j in range(i + 1, n):
            v = sum(float(c) * x[k] for k, c in L.bracket(i, j).items())
            M[i, j], M[j, i] = v, -v
    r = 0
    first = None
    for k in range(n):
        sub = np.abs(M[k:, k:])
        i, j = np.unravel_index(int(np.argmax(sub)), sub.shape)
        piv = sub[i, j]
        if first is None:
            first = piv
        if piv == 0 or piv <= tol * first or not math.isfinite(piv):
            break
        i += k
        j += k
        M[[k, i]] = M[[i, k]]
        M[:, [k, j]] = M[:, [j, k]]
        M[k + 1:, k:] -= np.outer(M[k + 1:, k] / M[k, k], M[k, k:])
        r += 1
    return r
