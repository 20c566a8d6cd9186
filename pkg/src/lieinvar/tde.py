"""Jacobian systems and adjoint systems of total differential equations.

From the commutator matrix M_L of rank q, the determining equations
``M_L . grad F = 0`` are solved for q partial derivatives.  This gives

    dF/dx_t = -sum_s U[s][t] dF/du_s      (t over the q solved variables)

with the remaining p = n - q coordinates u_s as dependent variables of the
adjoint system ``du_s = sum_t U[s][t] dx_t``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .algebra import LieAlgebra
from .coadjoint import commutator_matrix
from .linalg import fraction_free_solve, generic_rank, pfaffian
from .poly import Polynomial, RationalFunction, format_polynomial


@dataclass(frozen=True)
class TdeSystem:
    variables: tuple
    dependent: tuple      # indices u_s
    independent: tuple    # indices x_t
    U: tuple              # U[s][t], RationalFunction
    denominator: Polynomial | None = None  # common pole polynomial, if known

    @property
    def p(self) -> int:
        return len(self.dependent)

    @property
    def q(self) -> int:
        return len(self.independent)

    def names(self, idx: Sequence[int]) -> list:
        return [self.variables[i] for i in idx]


def _choose_split(M, n: int, q: int):
    """Lexicographically last dependent set whose complement has full rank."""
    for dep in itertools.combinations(reversed(range(n)), n - q):
        dep = tuple(sorted(dep))
        ind = [j for j in range(n) if j not in dep]
        cols = [[row[j] for j in ind] for row in M]
        if generic_rank(cols) == q:
            return ind, list(dep)
    raise ArithmeticError("no admissible split of variables found")


def jacobian_system(L: LieAlgebra) -> TdeSystem:
    """Solve M_L Z = 0 for rank-many partials in terms of the rest."""
    CM = commutator_matrix(L)
    M = CM.rows()
    n = L.dim
    q = generic_rank(M)
    if q == 0:
        return TdeSystem(L.basis, tuple(range(n)), (), tuple(() for _ in range(n)), None)
    ind, dep = _choose_split(M, n, q)
    # M_L is antisymmetric, so independent columns give a nonsingular
    # principal block
    A = [[M[i][j] for j in ind] for i in ind]
    B = [[M[i][j] for j in dep] for i in ind]
    D, N = fraction_free_solve(A, B)
    # A Z_ind + B Z_dep = 0  =>  Z_ind = -(A^{-1} B) Z_dep, so U[s][t] = (A^{-1}B)[t][s]
    U = tuple(tuple(RationalFunction(N[t][s], D) for t in range(q)) for s in range(len(dep)))
    return TdeSystem(L.basis, tuple(dep), tuple(ind), U, D)


def check_solution(sys: TdeSystem, F: Polynomial) -> bool:
    """True iff dF/dx_t + sum_s U[s][t] dF/du_s vanishes for every t."""
    if F.variables != sys.variables:
        raise ValueError("polynomial context differs from the system's variables")
    grads = {i: F.diff_index(i) for i in sys.dependent}
    for t_pos, t in enumerate(sys.independent):
        expr = RationalFunction(F.diff_index(t))
        for s_pos, s in enumerate(sys.dependent):
            if grads[s]:
                expr = expr + sys.U[s_pos][t_pos] * grads[s]
        if not expr.is_zero():
            return False
    return True


def _apply_delta(sys: TdeSystem, t_pos: int, f: RationalFunction) -> RationalFunction:
    """Delta_t f = df/dx_t + sum_s U[s][t] df/du_s."""
    names = sys.variables
    out = f.diff(names[sys.independent[t_pos]])
    for s_pos, s in enumerate(sys.dependent):
        d = f.diff(names[s])
        if d:
            out = out + sys.U[s_pos][t_pos] * d
    return out


def integrability_defects(sys: TdeSystem) -> list:
    """Pairs (x_t, x_t') whose operator commutator [Delta_t, Delta_t'] is nonzero.

    The commutator has no d/dx component; its d/du_s coefficient is
    Delta_t U[s][t'] - Delta_t' U[s][t].
    """
    bad = []
    for a, b in itertools.combinations(range(sys.q), 2):
        for s_pos in range(sys.p):
            c = _apply_delta(sys, a, sys.U[s_pos][b]) - _apply_delta(sys, b, sys.U[s_pos][a])
            if not c.is_zero():
                bad.append((sys.variables[sys.independent[a]], sys.variables[sys.independent[b]]))
                break
    return bad


def check_integrability(sys: TdeSystem) -> bool:
    return not integrability_defects(sys)


@dataclass(frozen=True)
class AdjointEquation:
    """lhs * du = sum_t rhs[t] dx_t with polynomial coefficients."""

    dependent: str
    lhs: Polynomial
    rhs: tuple  # (name, Polynomial) pairs

    def __str__(self):
        terms = []
        for name, c in self.rhs:
            if c:
                terms.append(f"({format_polynomial(c)}) d{name}")
        right = " + ".join(terms) if terms else "0"
        return f"({format_polynomial(self.lhs)}) d{self.dependent} = {right}"


def adjoint_equations(sys: TdeSystem, L: LieAlgebra | None = None) -> list:
    """Adjoint system with denominators cleared, one equation per u_s.

    When the common denominator is a square of the Pfaffian of the solved
    block and that Pfaffian divides every numerator, it is cancelled.  Each
    equation is scaled so its left coefficient has leading coefficient 1.
    """
    if sys.q == 0:
        return []
    D = sys.denominator
    nums = [[u.numer * (D.divide_exact(u.denom)) for u in row] for row in sys.U]
    if L is not None and sys.q % 2 == 0:
        CM = commutator_matrix(L)
        pf = pfaffian(CM.block(sys.independent, sys.independent))
        if pf and (pf * pf == D or pf * pf == -D):
            reduced = [[c.try_divide(pf) for c in row] for row in nums]
            if all(c is not None for row in reduced for c in row):
                nums = reduced
                D = D.divide_exact(pf)
    eqs = []
    names = sys.variables
    for s_pos, s in enumerate(sys.dependent):
        scale = 1 / D.leading_coefficient()
        eqs.append(AdjointEquation(
            names[s],
            D.scale(scale),
            tuple((names[t], nums[s_pos][t_pos].scale(scale)) for t_pos, t in enumerate(sys.independent)),
        ))
    return eqs
