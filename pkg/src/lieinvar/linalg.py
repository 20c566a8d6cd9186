"""Exact linear algebra over the rationals and over polynomial rings.

Matrices are plain lists of rows.  Rational matrices hold Fractions;
symbolic matrices hold :class:`~lieinvar.poly.Polynomial` entries sharing
one variable context.  Nothing here touches floating point.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .poly import Polynomial, monomial_key


def to_fraction_matrix(rows) -> list:
    return [[Fraction(v) for v in row] for row in rows]


def sparse_echelon(rows, order=None) -> dict:
    """Fully reduced echelon form of sparse rows ``{col: Fraction}``.

    ``order`` maps a column to its sort key (smallest key pivots first);
    by default columns are compared directly.  Returns ``{pivot: row}``
    where each row has a 1 at its pivot and no entries in other pivots.
    """
    key = order or (lambda c: c)
    pivots: dict = {}
    for raw in rows:
        r = {c: Fraction(v) for c, v in raw.items() if v}
        while r:
            c = min(r, key=key)
            p = pivots.get(c)
            if p is None:
                break
            f = r[c]
            for cc, vv in p.items():
                s = r.get(cc, 0) - f * vv
                if s:
                    r[cc] = s
                else:
                    r.pop(cc, None)
        if r:
            c = min(r, key=key)
            inv = 1 / r[c]
            pivots[c] = {cc: vv * inv for cc, vv in r.items()}
    # back-substitution, last pivot first
    for c in sorted(pivots, key=key, reverse=True):
        row = pivots[c]
        for c2, row2 in pivots.items():
            f = row2.get(c)
            if c2 != c and f:
                for cc, vv in row.items():
                    s = row2.get(cc, 0) - f * vv
                    if s:
                        row2[cc] = s
                    else:
                        row2.pop(cc, None)
    return pivots


def _sparse(rows):
    return [{j: v for j, v in enumerate(r) if v} for r in rows]


def rref(rows, ncols: int | None = None):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    piv = sparse_echelon(_sparse(rows))
    cols = sorted(piv)
    R = [[piv[c].get(j, Fraction(0)) for j in range(ncols)] for c in cols]
    return R, cols


def rank(rows) -> int:
    return len(sparse_echelon(_sparse(rows)))


def sparse_nullspace(rows, ncols: int) -> list:
    """Right nullspace of sparse rows, one vector per free column (ascending)."""
    piv = sparse_echelon(rows)
    basis = []
    for f in range(ncols):
        if f in piv:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for pc, row in piv.items():
            c = row.get(f)
            if c:
                v[pc] = -c
        basis.append(v)
    return basis


def exact_nullspace(rows, ncols: int | None = None) -> list:
    """Basis of the right nullspace, in reduced echelon form.

    Each basis vector has a 1 in exactly one free column and zeros in the
    other free columns; the vectors are listed by free column.  The list is
    empty when the matrix has full column rank.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return sparse_nullspace(_sparse(rows), ncols)


def echelon_basis(vectors, ncols: int) -> list:
    """Canonical (reduced echelon) basis of the span of ``vectors``."""
    if not vectors:
        return []
    return rref(vectors, ncols)[0]


# -- symbolic matrices -----------------------------------------------------


def _pivot_rank(p: Polynomial):
    m, _ = p.leading_term()
    return (p.degree(), monomial_key(m))


def generic_rank(M: Sequence[Sequence[Polynomial]]) -> int:
    """Rank over the fraction field, by fraction-free (Bareiss) elimination.

    Pivots are chosen among all remaining nonzero entries by minimal total
    degree, ties broken by the graded-lex order of the leading monomial,
    then by position.
    """
    if not M or not M[0]:
        return 0
    A = [list(row) for row in M]
    nrows, ncols = len(A), len(A[0])
    prev = None
    k = 0
    while k < min(nrows, ncols):
        best = None
        for i in range(k, nrows):
            for j in range(k, ncols):
                e = A[i][j]
                if e:
                    key = (_pivot_rank(e), i, j)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        _, pi, pj = best
        A[k], A[pi] = A[pi], A[k]
        if pj != k:
            for row in A:
                row[k], row[pj] = row[pj], row[k]
        piv = A[k][k]
        for i in range(k + 1, nrows):
            aik = A[i][k]
            for j in range(k + 1, ncols):
                e = piv * A[i][j]
                if aik and A[k][j]:
                    e = e - aik * A[k][j]
                if prev is not None and e:
                    e = e.divide_exact(prev)
                A[i][j] = e
            A[i][k] = piv.zero(piv.variables)
        prev = piv
        k += 1
    return k


def determinant(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant of a square polynomial matrix by Bareiss elimination."""
    n = len(M)
    if n == 0:
        raise ValueError("determinant of an empty matrix")
    if any(len(r) != n for r in M):
        raise ValueError("determinant needs a square matrix")
    A = [list(row) for row in M]
    variables = A[0][0].variables
    sign = 1
    prev = None
    for k in range(n - 1):
        if not A[k][k]:
            p = next((i for i in range(k + 1, n) if A[i][k]), None)
            if p is None:
                return Polynomial.zero(variables)
            A[k], A[p] = A[p], A[k]
            sign = -sign
        piv = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                e = piv * A[i][j] - A[i][k] * A[k][j]
                if prev is not None and e:
                    e = e.divide_exact(prev)
                A[i][j] = e
        prev = piv
    return A[n - 1][n - 1] if sign > 0 else -A[n - 1][n - 1]


def fraction_free_solve(A, B):
    """Solve ``A X = B`` fraction-free for nonsingular polynomial ``A``.

    Uses Gauss-Jordan elimination with Bareiss divisions.  Returns
    ``(D, N)`` with ``D = det(A)`` (up to the sign of row swaps, applied
    consistently) and ``N = D * A^{-1} B`` as polynomial matrices.
    """
    q = len(A)
    if q == 0:
        return None, []
    aug = [list(A[i]) + list(B[i]) for i in range(q)]
    width = len(aug[0])
    prev = None
    for k in range(q):
        if not aug[k][k]:
            p = next((i for i in range(k + 1, q) if aug[i][k]), None)
            if p is None:
                raise ZeroDivisionError("matrix is singular over the fraction field")
            aug[k], aug[p] = aug[p], aug[k]
        piv = aug[k][k]
        for i in range(q):
            if i == k:
                continue
            aik = aug[i][k]
            new = []
            for j in range(width):
                e = piv * aug[i][j]
                if aik and aug[k][j]:
                    e = e - aik * aug[k][j]
                if prev is not None and e:
                    e = e.divide_exact(prev)
                new.append(e)
            aug[i] = new
        prev = piv
    D = aug[0][0]
    return D, [row[q:] for row in aug]


def pfaffian(A) -> Polynomial:
    """Pfaffian of an antisymmetric polynomial matrix of even order."""
    n = len(A)
    if n % 2:
        raise ValueError("Pfaffian needs even order")
    if n == 0:
        raise ValueError("Pfaffian of an empty matrix")
    return _pf(A, list(range(n)))


def _pf(A, idx):
    if len(idx) == 2:
        return A[idx[0]][idx[1]]
    first = idx[0]
    total = None
    for pos in range(1, len(idx)):
        j = idx[pos]
        a = A[first][j]
        if not a:
            continue
        rest = [k for k in idx[1:] if k != j]
        t = a * _pf(A, rest)
        if pos % 2 == 0:
            t = -t
        total = t if total is None else total + t
    if total is None:
        return A[idx[0]][idx[1]].zero(A[idx[0]][idx[1]].variables)
    return total


def evaluate_matrix(M, values: Sequence[Fraction]) -> list:
    return [[e.evaluate_seq(values) for e in row] for row in M]


def random_point(nvars: int, rng: random.Random, low: int = -10, high: int = 10) -> list:
    return [Fraction(rng.randint(low, high)) for _ in range(nvars)]
