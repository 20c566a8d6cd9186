"""Polynomial invariants of the coadjoint action by degree-bounded ansatz."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import AlgebraError, LieAlgebra
from .coadjoint import (
    LinearVectorField,
    apply_field,
    commutator_matrix,
    infinitesimal_generators,
    invariant_count,
)
from .linalg import determinant, generic_rank, random_point, rank, sparse_echelon, sparse_nullspace
from .poly import Polynomial, monomial_key, monomials_of_degree

DEFAULT_TRIALS = 8
DEFAULT_SEED = 0


@dataclass
class InvariantSet:
    algebra: LieAlgebra
    polys: tuple
    degrees: tuple
    independent_count: int
    counted: int | None = None

    def __len__(self):
        return len(self.polys)


def verify_invariant(L: LieAlgebra, F: Polynomial) -> bool:
    """True iff every coadjoint generator annihilates F."""
    if F.variables != L.basis:
        raise ValueError(f"polynomial context {list(F.variables)} differs from basis {list(L.basis)}")
    return all(not apply_field(g, F) for g in infinitesimal_generators(L))


def _poly_from_vector(variables, monos, vec) -> Polynomial:
    return Polynomial(variables, {m: c for m, c in zip(monos, vec) if c})


def _products(kept: Sequence[tuple], degree: int) -> list:
    """All products of kept (poly, degree) pairs with total degree ``degree``."""
    out = []

    def rec(start, left, acc):
        if left == 0:
            out.append(acc)
            return
        for i in range(start, len(kept)):
            p, d = kept[i]
            if d <= left:
                rec(i, left - d, p if acc is None else acc * p)

    rec(0, degree, None)
    return [p for p in out if p is not None]


def invariant_space(L: LieAlgebra, degree: int, restrict_vars: Iterable[str] | None = None,
                    generators: Sequence[LinearVectorField] | None = None) -> list:
    """Basis of the homogeneous degree-``degree`` invariants, echelonized.

    Returned polynomials are primitive with positive leading coefficient and
    have distinct leading monomials.
    """
    names = L.basis
    n = L.dim
    slots = None if restrict_vars is None else [L.index(v) for v in restrict_vars]
    monos = monomials_of_degree(n, degree, slots)
    if not monos:
        return []
    gens = generators if generators is not None else infinitesimal_generators(L)
    col = {m: k for k, m in enumerate(monos)}
    rows: dict = {}
    for g_idx, g in enumerate(gens):
        if g.is_zero():
            continue
        for m in monos:
            image = apply_field(g, Polynomial._raw(names, {m: Fraction(1)}))
            for out_m, c in image.terms.items():
                rows.setdefault((g_idx, out_m), {})[col[m]] = c
    null = sparse_nullspace(list(rows.values()), len(monos))
    # columns are already in descending monomial order, so pivots land on
    # leading monomials
    basis = sparse_echelon([{k: v for k, v in enumerate(vec) if v} for vec in null])
    return [_poly_from_vector(names, monos, [row.get(k, 0) for k in range(len(monos))]).primitive()
            for _, row in sorted(basis.items())]


def _new_members(candidates: list, span: list) -> list:
    """Candidates that enlarge the span of ``span`` (greedy, in order)."""
    index: dict = {}
    rows = []

    def vec(p):
        out = {}
        for m, c in p.terms.items():
            out[index.setdefault(m, len(index))] = c
        return out

    for p in span:
        rows.append(vec(p))
    base = len(sparse_echelon(rows))
    chosen = []
    for p in candidates:
        trial = rows + [vec(p)]
        r = len(sparse_echelon(trial))
        if r > base:
            rows, base = trial, r
            chosen.append(p)
    return chosen


def find_invariants(L: LieAlgebra, max_degree: int, restrict_vars: Iterable[str] | None = None,
                    seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS,
                    stop_early: bool = True) -> InvariantSet:
    """Search homogeneous polynomial invariants up to ``max_degree``.

    At each degree only the invariants not already spanned by products of
    lower-degree finds are kept.  The search stops once the kept set
    reaches the invariant count of ``L``.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    restrict = None if restrict_vars is None else list(restrict_vars)
    gens = infinitesimal_generators(L)
    target = invariant_count(L)
    kept: list = []
    indep = 0
    for D in range(1, max_degree + 1):
        space = invariant_space(L, D, restrict, gens)
        if not space:
            continue
        fresh = _new_members(space, _products(kept, D))
        kept.extend((p, D) for p in fresh)
        if fresh:
            indep = independent_count([p for p, _ in kept], trials=trials, seed=seed)
        if stop_early and indep >= target:
            break
    return InvariantSet(L, tuple(p for p, _ in kept), tuple(d for _, d in kept), indep, target)


def jacobian_rank_at(polys: Sequence[Polynomial], point) -> int:
    J = [[p.diff_index(j).evaluate_seq(point) for j in range(len(p.variables))] for p in polys]
    return rank(J)


def independent_count(polys: Sequence[Polynomial], trials: int = DEFAULT_TRIALS,
                      seed: int = DEFAULT_SEED) -> int:
    """Largest Jacobian rank seen at ``trials`` seeded random integer points.

    A lower bound on the number of functionally independent members, exact
    with high probability.
    """
    polys = list(polys)
    if not polys:
        return 0
    n = len(polys[0].variables)
    rng = random.Random(seed)
    best = 0
    for _ in range(trials):
        best = max(best, jacobian_rank_at(polys, random_point(n, rng)))
        if best == len(polys):
            break
    return best


def inter_reduce(inv: InvariantSet, priority_vars: Iterable[str] | None = None) -> InvariantSet:
    """Simplify each member modulo products of lower-degree members.

    Monomials involving ``priority_vars`` are eliminated first (default:
    the Levi-factor variables when the algebra carries semidirect
    metadata).  Members reducing to zero are dropped.
    """
    L = inv.algebra
    if priority_vars is None:
        sd = L.meta.get("semidirect")
        priority_vars = L.basis[: int(sd["s_dim"])] if sd else ()
    pidx = [L.index(v) for v in priority_vars]

    def col_key(m):
        k = monomial_key(m)
        return (0 if any(m[i] for i in pidx) else 1, -k[0], tuple(-e for e in k[1]))

    order = sorted(range(len(inv.polys)), key=lambda i: (inv.polys[i].degree(), i))
    out: list = []
    for i in order:
        F = inv.polys[i]
        D = F.degree()
        lower = [(p, p.degree()) for p in out if p.degree() < D]
        cands = []
        for d in range(1, D + 1):
            cands.extend(_products(lower, d))
        if cands:
            piv = sparse_echelon([dict(p.terms) for p in cands], order=col_key)
            terms = dict(F.terms)
            for m, row in piv.items():
                c = terms.get(m)
                if not c:
                    continue
                for mm, vv in row.items():
                    s = terms.get(mm, 0) - c * vv
                    if s:
                        terms[mm] = s
                    else:
                        terms.pop(mm, None)
            F = Polynomial(F.variables, terms)
        if not F:
            continue
        F = F.primitive()
        if not verify_invariant(L, F):
            raise ArithmeticError(f"reduced member {F} is not invariant")
        out.append(F)
    indep = independent_count(out) if out else 0
    return InvariantSet(L, tuple(out), tuple(p.degree() for p in out), indep, inv.counted)


def same_span(a: Sequence[Polynomial], b: Sequence[Polynomial]) -> bool:
    """Whether two lists of polynomials span the same Q-vector space."""
    index: dict = {}

    def vec(p):
        return {index.setdefault(m, len(index)): c for m, c in p.terms.items()}

    ra = len(sparse_echelon([vec(p) for p in a]))
    rb = len(sparse_echelon([vec(p) for p in b]))
    rab = len(sparse_echelon([vec(p) for p in list(a) + list(b)]))
    return ra == rb == rab


# -- radical-only theorems -------------------------------------------------


def det_a_expected(L: LieAlgebra, m: int) -> Polynomial:
    """(-2+3m-m^2) v1^3 + (-6m+3m^2) v0 v1 v2 - 3m^2 v0^2 v3."""
    v = [Polynomial.var(L.basis, f"v{i}") for i in range(4)]
    return (v[1] ** 3 * (-2 + 3 * m - m * m)
            + v[0] * v[1] * v[2] * (-6 * m + 3 * m * m)
            - v[0] ** 2 * v[3] * (3 * m * m))


@dataclass
class RadicalOnlyReport:
    m: int
    det_a: Polynomial
    det_a_expected: Polynomial
    invariants: tuple
    restricted: tuple
    free_of_levi: bool
    same_space: bool
    reduced_generators_annihilate: bool

    @property
    def det_ok(self) -> bool:
        return self.det_a == self.det_a_expected

    @property
    def ok(self) -> bool:
        return self.det_ok and self.free_of_levi and self.same_space and self.reduced_generators_annihilate


def _semidirect_module(L: LieAlgebra) -> int:
    sd = L.meta.get("semidirect")
    if not sd or int(sd.get("s_dim", 0)) != 3 or sd.get("module") is None:
        raise AlgebraError("algebra is not tagged as sl(2) + V(m)")
    return int(sd["module"])


def reduced_generators(L: LieAlgebra) -> list:
    """E_i = sum_j [e_i, v_j] d/dv_j for e_i in the Levi factor."""
    M = commutator_matrix(L)
    zero = Polynomial.zero(L.basis)
    out = []
    for i in range(3):
        out.append(LinearVectorField(tuple(zero if j < 3 else M[i, j] for j in range(L.dim))))
    return out


def radical_only_check(L: LieAlgebra, max_degree: int) -> RadicalOnlyReport:
    """Check that invariants of sl(2) + V(m), m >= 3, avoid x, y, h."""
    m = _semidirect_module(L)
    if m < 3:
        raise ValueError(f"needs dim R >= 4 (m >= 3), got m={m}")
    M = commutator_matrix(L)
    det_a = determinant(M.block([3, 4, 5], [0, 1, 2]))
    levi = L.basis[:3]
    radical = L.basis[3:]
    full = find_invariants(L, max_degree, stop_early=False)
    restricted = find_invariants(L, max_degree, restrict_vars=radical, stop_early=False)
    free = all(not p.involves(levi) for p in full.polys)
    same = all(
        same_space_at(L, D) for D in range(1, max_degree + 1)
    )
    gens = reduced_generators(L)
    annihilate = all(not apply_field(g, p) for g in gens for p in restricted.polys)
    return RadicalOnlyReport(m, det_a, det_a_expected(L, m), full.polys, restricted.polys,
                             free, same, annihilate)


def same_space_at(L: LieAlgebra, degree: int, restrict_vars: Iterable[str] | None = None) -> bool:
    """Unrestricted and restricted degree-D invariant spaces coincide."""
    if restrict_vars is None:
        restrict_vars = L.basis[3:]
    return same_span(invariant_space(L, degree), invariant_space(L, degree, restrict_vars))


@dataclass
class GenInvReport:
    l2: tuple
    l1: tuple
    dim_condition: bool
    b_rank: int
    b_max_rank: bool
    checked_degree: int | None = None
    spaces_agree: bool | None = None
    details: list = field(default_factory=list)

    @property
    def hypotheses_hold(self) -> bool:
        return self.dim_condition and self.b_max_rank


def geninv_check(L: LieAlgebra, l2_indices: Iterable[int], degree: int | None = None) -> GenInvReport:
    """Hypotheses (and, optionally, conclusion) for invariants living on an abelian L_2.

    With ``degree`` given and the hypotheses satisfied, the invariant spaces
    with and without restriction to the L_2 coordinates are compared for
    every degree up to ``degree``.
    """
    l2 = sorted(set(l2_indices))
    for i in l2:
        if not 0 <= i < L.dim:
            raise ValueError(f"index {i} out of range")
    for i, j in itertools.combinations(l2, 2):
        if L.bracket(i, j):
            raise AlgebraError(f"L_2 is not abelian: [{L.basis[i]}, {L.basis[j]}] != 0")
    l1 = [i for i in range(L.dim) if i not in l2]
    dim_ok = len(l2) >= len(l1)
    M = commutator_matrix(L)
    B = M.block(l2, l1)
    b_rank = generic_rank(B) if l1 and l2 else 0
    b_max = b_rank == min(len(l2), len(l1))
    report = GenInvReport(tuple(L.basis[i] for i in l2), tuple(L.basis[i] for i in l1),
                          dim_ok, b_rank, b_max)
    if degree is not None and report.hypotheses_hold:
        names = [L.basis[i] for i in l2]
        agree = True
        for D in range(1, degree + 1):
            full = invariant_space(L, D)
            ok = same_span(full, invariant_space(L, D, names)) and \
                all(not p.involves([L.basis[i] for i in l1]) for p in full)
            report.details.append((D, len(full), ok))
            agree = agree and ok
        report.checked_degree = degree
        report.spaces_agree = agree
    return report
