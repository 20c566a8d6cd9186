"""Coadjoint generators, the commutator matrix and the invariant count."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import LieAlgebra, sl2_semidirect
from .linalg import determinant, evaluate_matrix, generic_rank, rank
from .poly import Polynomial


@dataclass(frozen=True)
class LinearVectorField:
    """sum_j coefficients[j] * d/dx_j with polynomial coefficients."""

    coefficients: tuple

    @property
    def variables(self):
        return self.coefficients[0].variables

    def __call__(self, F: Polynomial) -> Polynomial:
        return apply_field(self, F)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __add__(self, other):
        return LinearVectorField(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def scale(self, c) -> "LinearVectorField":
        return LinearVectorField(tuple(a.scale(c) for a in self.coefficients))

    def commutator(self, other: "LinearVectorField") -> "LinearVectorField":
        """[V, W]_j = V(W_j) - W(V_j)."""
        return LinearVectorField(tuple(
            apply_field(self, w) - apply_field(other, v)
            for v, w in zip(self.coefficients, other.coefficients)
        ))


def apply_field(V: LinearVectorField, F: Polynomial) -> Polynomial:
    """V . F = sum_j V_j dF/dx_j."""
    out = Polynomial.zero(F.variables)
    for j, coef in enumerate(V.coefficients):
        if coef:
            d = F.diff_index(j)
            if d:
                out = out + coef * d
    return out


@dataclass(frozen=True)
class CommutatorMatrix:
    """entries[i][j] = [x_i, x_j] = sum_k c_ij^k x_k."""

    variables: tuple
    entries: tuple

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self):
        return [list(r) for r in self.entries]

    def block(self, rows: Sequence[int], cols: Sequence[int]):
        return [[self.entries[i][j] for j in cols] for i in rows]

    def is_antisymmetric(self) -> bool:
        n = self.size
        return all(self.entries[i][j] == -self.entries[j][i] for i in range(n) for j in range(n))


def commutator_matrix(L: LieAlgebra) -> CommutatorMatrix:
    names = L.basis
    rows = []
    for i in range(L.dim):
        rows.append(tuple(Polynomial.linear(names, L.bracket(i, j)) for j in range(L.dim)))
    return CommutatorMatrix(names, tuple(rows))


def infinitesimal_generators(L: LieAlgebra) -> list:
    """Generators v_i = -sum_{j,k} c_ij^k x_k d/dx_j of the coadjoint action."""
    M = commutator_matrix(L)
    return [LinearVectorField(tuple(-M[i, j] for j in range(L.dim))) for i in range(L.dim)]


def homomorphism_failures(L: LieAlgebra) -> list:
    """Pairs (i, j) where [v_i, v_j] != sum_k c_ij^k v_k."""
    gens = infinitesimal_generators(L)
    bad = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = gens[i].commutator(gens[j])
            rhs = [Polynomial.zero(L.basis)] * L.dim
            for k, c in L.bracket(i, j).items():
                rhs = [r + g.scale(c) for r, g in zip(rhs, gens[k].coefficients)]
            if list(lhs.coefficients) != rhs:
                bad.append((L.basis[i], L.basis[j]))
    return bad


def rank_ml(L: LieAlgebra) -> int:
    return generic_rank(commutator_matrix(L).rows())


def invariant_count(L: LieAlgebra) -> int:
    """Number of functionally independent invariants: dim L - rank M_L."""
    return L.dim - rank_ml(L)


def det_m6(m: int) -> Polynomial:
    """Determinant of the leading 6x6 block of M_L for L(m), m >= 3."""
    if m < 3:
        raise ValueError("the leading 6x6 block is only considered for m >= 3 (dim R >= 4)")
    M = commutator_matrix(sl2_semidirect(m))
    return determinant(M.block(range(6), range(6)))


def det_m6_expected(m: int) -> Polynomial:
    """Closed form -((m-2) v1 ((m-1) v1^2 - 3m v0 v2) + 3m^2 v0^2 v3)^2."""
    names = sl2_semidirect(m).basis
    v = [Polynomial.var(names, f"v{i}") for i in range(4)]
    inner = v[1].scale(m - 2) * (v[1] ** 2 * (m - 1) - v[0] * v[2] * (3 * m)) + v[0] ** 2 * v[3] * (3 * m * m)
    return -(inner ** 2)


def rank_at_point(L: LieAlgebra, point: Sequence[Fraction]) -> int:
    """Exact rank of M_L at a rational point."""
    return rank(evaluate_matrix(commutator_matrix(L).rows(), point))
