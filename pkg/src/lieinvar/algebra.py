"""Lie algebras given by structure constants, sl(2)-modules and semidirect sums."""
from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Sequence

from .linalg import echelon_basis, exact_nullspace, rank
from .poly import as_fraction

log = logging.getLogger(__name__)

SL2_BASIS = ("x", "y", "h")


class AlgebraError(ValueError):
    """Raised for malformed structure constants or failed construction checks."""


def _clean_vector(vec: Mapping) -> dict:
    out = {}
    for k, c in vec.items():
        c = as_fraction(c)
        if c:
            out[int(k)] = c
    return out


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q in a fixed basis.

    Only brackets ``[e_i, e_j]`` with ``i < j`` are stored, as sparse
    vectors ``{k: c_ij^k}``; the rest follow from antisymmetry.  Instances
    are treated as immutable.
    """

    def __init__(self, basis: Sequence[str], brackets: Mapping[tuple, Mapping] | None = None,
                 meta: Mapping | None = None):
        basis = tuple(basis)
        if not basis:
            raise AlgebraError("a Lie algebra needs at least one basis element")
        if len(set(basis)) != len(basis):
            raise AlgebraError(f"basis names must be distinct: {list(basis)}")
        n = len(basis)
        table = {}
        for (i, j), vec in (brackets or {}).items():
            if not (0 <= i < n and 0 <= j < n):
                raise AlgebraError(f"bracket index ({i}, {j}) out of range for dim {n}")
            if i >= j:
                raise AlgebraError(f"only i<j brackets may be given, got ({i}, {j})")
            vec = _clean_vector(vec)
            for k in vec:
                if not 0 <= k < n:
                    raise AlgebraError(f"structure constant index {k} out of range for dim {n}")
            if vec:
                table[(i, j)] = MappingProxyType(vec)
        self.basis = basis
        self.brackets = MappingProxyType(table)
        self.meta = MappingProxyType(dict(meta or {}))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, basis={list(self.basis)})"

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.basis == other.basis and dict(self.brackets) == dict(other.brackets)

    __hash__ = None

    def index(self, name: str) -> int:
        try:
            return self.basis.index(name)
        except ValueError:
            raise AlgebraError(f"unknown basis element {name!r}") from None

    def bracket(self, i: int, j: int) -> dict:
        """``[e_i, e_j]`` as a sparse vector."""
        if i == j:
            return {}
        if i < j:
            return dict(self.brackets.get((i, j), {}))
        return {k: -c for k, c in self.brackets.get((j, i), {}).items()}

    def bracket_names(self, a: str, b: str) -> dict:
        """``[a, b]`` keyed by basis names."""
        return {self.basis[k]: c for k, c in self.bracket(self.index(a), self.index(b)).items()}

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        return self.bracket(i, j).get(k, Fraction(0))

    def bracket_vectors(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.bracket(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: c for k, c in out.items() if c}

    def is_abelian(self) -> bool:
        return not self.brackets

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        d = {
            "dim": self.dim,
            "basis": list(self.basis),
            "brackets": [
                {"i": i, "j": j, "c": {str(k): _frac_str(c) for k, c in sorted(vec.items())}}
                for (i, j), vec in sorted(self.brackets.items())
            ],
        }
        if "semidirect" in self.meta:
            d["semidirect"] = dict(self.meta["semidirect"])
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


_TOP_KEYS = {"dim", "basis", "brackets", "semidirect"}


def algebra_from_json_dict(data) -> LieAlgebra:
    if not isinstance(data, dict):
        raise AlgebraError("algebra file must hold a JSON object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise AlgebraError(f"unknown keys in algebra file: {sorted(unknown)}")
    for key in ("dim", "basis"):
        if key not in data:
            raise AlgebraError(f"algebra file lacks required key {key!r}")
    basis = data["basis"]
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise AlgebraError("'basis' must be a list of strings")
    if data["dim"] != len(basis):
        raise AlgebraError(f"'dim' is {data['dim']} but basis has {len(basis)} names")
    brackets = {}
    for pos, entry in enumerate(data.get("brackets", [])):
        if not isinstance(entry, dict) or set(entry) - {"i", "j", "c"} or not {"i", "j", "c"} <= set(entry):
            raise AlgebraError(f"bracket entry #{pos} must have exactly the keys i, j, c")
        i, j = entry["i"], entry["j"]
        if not isinstance(i, int) or not isinstance(j, int):
            raise AlgebraError(f"bracket entry #{pos}: indices must be integers")
        if i >= j:
            raise AlgebraError(f"bracket entry #{pos}: only i<j entries permitted, got i={i}, j={j}")
        if (i, j) in brackets:
            raise AlgebraError(f"bracket entry #{pos}: duplicate entry for ({i}, {j})")
        coeffs = {}
        for k, c in entry["c"].items():
            try:
                coeffs[int(k)] = as_fraction(c)
            except (TypeError, ValueError):
                raise AlgebraError(f"bracket entry #{pos}: bad coefficient {c!r} for index {k!r}") from None
        brackets[(i, j)] = coeffs
    meta = {}
    if "semidirect" in data:
        sd = data["semidirect"]
        if not isinstance(sd, dict) or set(sd) - {"s_dim", "module"}:
            raise AlgebraError("'semidirect' metadata must be {\"s_dim\": ..., \"module\": ...}")
        meta["semidirect"] = dict(sd)
    return LieAlgebra(basis, brackets, meta)


def algebra_from_json(text: str) -> LieAlgebra:
    """Parse an algebra file; JSON syntax errors carry line and column."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return algebra_from_json_dict(data)


# -- Jacobi ----------------------------------------------------------------


@dataclass
class JacobiReport:
    ok: bool
    failures: list = field(default_factory=list)


def check_jacobi(L: LieAlgebra) -> JacobiReport:
    """Check the Jacobi identity on every basis triple i<j<k."""
    failures = []
    e = [{i: Fraction(1)} for i in range(L.dim)]
    for i, j, k in itertools.combinations(range(L.dim), 3):
        total: dict = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for idx, val in L.bracket_vectors(L.bracket(a, b), e[c]).items():
                total[idx] = total.get(idx, 0) + val
        if any(total.values()):
            failures.append((L.basis[i], L.basis[j], L.basis[k]))
    return JacobiReport(ok=not failures, failures=failures)


# -- sl(2) and its modules -------------------------------------------------


def build_sl2() -> LieAlgebra:
    """sl(2) in the basis (x, y, h): [h,x]=2x, [h,y]=-2y, [x,y]=h."""
    return LieAlgebra(SL2_BASIS, {
        (0, 1): {2: 1},   # [x, y] = h
        (0, 2): {0: -2},  # [x, h] = -2x
        (1, 2): {1: 2},   # [y, h] = 2y
    })


def _zeros(d):
    return [[Fraction(0)] * d for _ in range(d)]


def _matmul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0)) for j in range(len(B[0]))]
            for i in range(len(A))]


def _commutator(A, B):
    AB, BA = _matmul(A, B), _matmul(B, A)
    return [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(AB, BA)]


def _apply(A, vec):
    return [sum((A[i][j] * vec[j] for j in range(len(vec))), Fraction(0)) for i in range(len(A))]


@dataclass(frozen=True)
class ModuleAction:
    """Matrices of a representation, one per basis element of the acting algebra.

    Column ``j`` of ``matrices[a]`` holds the coordinates of ``pi(s_a) v_j``.
    """

    algebra: LieAlgebra
    matrices: tuple
    label: object = None

    @property
    def module_dim(self) -> int:
        return len(self.matrices[0]) if self.matrices else 0

    def matrix(self, name: str):
        return self.matrices[self.algebra.index(name)]

    def representation_failures(self) -> list:
        """Pairs (a, b) with [pi(a), pi(b)] != pi([a, b])."""
        S = self.algebra
        d = self.module_dim
        bad = []
        for a, b in itertools.combinations(range(S.dim), 2):
            lhs = _commutator(self.matrices[a], self.matrices[b])
            rhs = _zeros(d)
            for k, c in S.bracket(a, b).items():
                for r in range(d):
                    for s in range(d):
                        rhs[r][s] += c * self.matrices[k][r][s]
            if lhs != rhs:
                bad.append((S.basis[a], S.basis[b]))
        return bad


def _as_module_action(S: LieAlgebra, matrices) -> ModuleAction:
    if isinstance(matrices, ModuleAction):
        return matrices
    if isinstance(matrices, Mapping):
        mats = [matrices[i] for i in range(S.dim)]
    else:
        mats = list(matrices)
    if len(mats) != S.dim:
        raise AlgebraError(f"need {S.dim} action matrices, got {len(mats)}")
    mats = tuple(tuple(tuple(as_fraction(v) for v in row) for row in M) for M in mats)
    return ModuleAction(S, mats)


def build_irreducible_module(m: int) -> ModuleAction:
    """The irreducible sl(2)-module V(m) in the basis v_0..v_m.

    h v_i = (m-2i) v_i,  y v_i = (i+1) v_{i+1},  x v_i = (m-i+1) v_{i-1}.
    """
    if m < 0:
        raise ValueError("highest weight must be non-negative")
    d = m + 1
    X, Y, H = _zeros(d), _zeros(d), _zeros(d)
    for i in range(d):
        H[i][i] = Fraction(m - 2 * i)
        if i + 1 < d:
            Y[i + 1][i] = Fraction(i + 1)
        if i >= 1:
            X[i - 1][i] = Fraction(m - i + 1)
    mats = tuple(tuple(tuple(r) for r in M) for M in (X, Y, H))
    return ModuleAction(build_sl2(), mats, label=m)


def direct_sum(a: ModuleAction, b: ModuleAction) -> ModuleAction:
    if a.algebra != b.algebra:
        raise AlgebraError("direct sum needs modules over the same algebra")
    da, db = a.module_dim, b.module_dim
    mats = []
    for A, B in zip(a.matrices, b.matrices):
        M = _zeros(da + db)
        for i in range(da):
            for j in range(da):
                M[i][j] = A[i][j]
        for i in range(db):
            for j in range(db):
                M[da + i][da + j] = B[i][j]
        mats.append(tuple(tuple(r) for r in M))
    return ModuleAction(a.algebra, tuple(mats))


def zero_action(S: LieAlgebra, d: int) -> ModuleAction:
    z = tuple(tuple(Fraction(0) for _ in range(d)) for _ in range(d))
    return ModuleAction(S, tuple(z for _ in range(S.dim)))


def abelian_algebra(basis: Sequence[str]) -> LieAlgebra:
    return LieAlgebra(basis, {})


def build_semidirect(S: LieAlgebra, R: LieAlgebra, act, meta: Mapping | None = None) -> LieAlgebra:
    """Semidirect sum with [s_a, r_j] = pi(s_a) r_j; S basis first, then R."""
    action = _as_module_action(S, act)
    d = R.dim
    if action.module_dim != d:
        raise AlgebraError(f"action matrices are {action.module_dim}x{action.module_dim}, radical has dim {d}")
    bad = action.representation_failures()
    if bad:
        a, b = bad[0]
        raise AlgebraError(f"action is not a representation: [pi({a}), pi({b})] != pi([{a}, {b}])")
    # each pi(z) must be a derivation of R
    for a in range(S.dim):
        P = action.matrices[a]
        for u, v in itertools.combinations(range(d), 2):
            uv = R.bracket(u, v)
            lhs = _apply(P, [uv.get(k, Fraction(0)) for k in range(d)])
            pu = {k: c for k, c in enumerate(_apply(P, [Fraction(int(t == u)) for t in range(d)])) if c}
            pv = {k: c for k, c in enumerate(_apply(P, [Fraction(int(t == v)) for t in range(d)])) if c}
            r1 = R.bracket_vectors(pu, {v: Fraction(1)})
            r2 = R.bracket_vectors({u: Fraction(1)}, pv)
            rhs = [r1.get(k, 0) + r2.get(k, 0) for k in range(d)]
            if lhs != rhs:
                raise AlgebraError(
                    f"pi({S.basis[a]}) is not a derivation of the radical on "
                    f"u={R.basis[u]}, v={R.basis[v]}"
                )
    s = S.dim
    names = S.basis + R.basis
    if len(set(names)) != len(names):
        raise AlgebraError(f"basis names of the summands overlap: {list(names)}")
    table = {}
    for (i, j), vec in S.brackets.items():
        table[(i, j)] = dict(vec)
    for (i, j), vec in R.brackets.items():
        table[(s + i, s + j)] = {s + k: c for k, c in vec.items()}
    for a in range(s):
        P = action.matrices[a]
        for j in range(d):
            vec = {s + i: P[i][j] for i in range(d) if P[i][j]}
            if vec:
                table[(a, s + j)] = vec
    L = LieAlgebra(names, table, meta)
    report = check_jacobi(L)
    if not report.ok:
        raise AlgebraError(f"semidirect sum fails Jacobi on {report.failures[:3]}")
    return L


def sl2_semidirect(m: int) -> LieAlgebra:
    """L(m) = sl(2) + V(m) with abelian radical, basis x, y, h, v0..vm."""
    R = abelian_algebra([f"v{i}" for i in range(m + 1)])
    return build_semidirect(build_sl2(), R, build_irreducible_module(m),
                            meta={"semidirect": {"s_dim": 3, "module": m}})


def module_action_of(L: LieAlgebra) -> ModuleAction | None:
    """Recover the action of S on the radical from ``semidirect`` metadata."""
    sd = L.meta.get("semidirect")
    if not sd:
        return None
    s = int(sd["s_dim"])
    S = LieAlgebra(L.basis[:s], {k: v for k, v in L.brackets.items() if k[1] < s})
    d = L.dim - s
    mats = []
    for a in range(s):
        M = _zeros(d)
        for j in range(d):
            for k, c in L.bracket(a, s + j).items():
                if k < s:
                    raise AlgebraError("metadata claims a semidirect sum but [S, R] leaves R")
                M[k - s][j] = c
        mats.append(tuple(tuple(r) for r in M))
    return ModuleAction(S, tuple(mats), label=sd.get("module"))


# -- opt(2,1) --------------------------------------------------------------

OPT21_BASIS = ("k1", "k2", "l3", "w", "m", "q", "c")

# (a, b, {name: coefficient}) meaning [a, b] = sum, read row by row from the
# printed table; "-[a, b] = z" is stored as [a, b] = -z.
OPT21_TABLE = (
    ("w", "m", {"m": Fraction(1, 2)}),
    ("k1", "m", {"m": Fraction(-1, 2)}),
    ("k2", "q", {"m": Fraction(1, 2)}),
    ("l3", "m", {"m": Fraction(1, 2)}),
    ("w", "q", {"q": Fraction(1, 2)}),
    ("k1", "q", {"q": Fraction(1, 2)}),
    ("k2", "m", {"q": Fraction(1, 2)}),
    ("w", "c", {"c": Fraction(1)}),
    ("m", "q", {"c": Fraction(-1)}),
    ("l3", "m", {"q": Fraction(-1, 2)}),
    ("k1", "k2", {"l3": Fraction(-1)}),
    ("k1", "l3", {"k2": Fraction(-1)}),
    ("k2", "l3", {"k1": Fraction(1)}),
)


@dataclass
class QuarantineReport:
    conflicts: list
    jacobi_failures: list

    @property
    def quarantined(self) -> bool:
        return bool(self.conflicts or self.jacobi_failures)


def build_opt21() -> LieAlgebra:
    """The 7-dim optical algebra opt(2,1), transcribed literally.

    The printed table assigns [l3, m] twice with different values.  The
    first assignment is kept, conflicts are recorded, and Jacobi is run;
    ``meta["quarantine"]`` holds a :class:`QuarantineReport` whenever either
    check fails.
    """
    idx = {n: i for i, n in enumerate(OPT21_BASIS)}
    table: dict = {}
    conflicts = []
    for a, b, rhs in OPT21_TABLE:
        i, j = idx[a], idx[b]
        vec = {idx[k]: c for k, c in rhs.items()}
        if i > j:
            i, j = j, i
            vec = {k: -c for k, c in vec.items()}
        if (i, j) in table:
            if table[(i, j)] != vec:
                conflicts.append((a, b))
            continue
        table[(i, j)] = vec
    L = LieAlgebra(OPT21_BASIS, table)
    report = check_jacobi(L)
    q = QuarantineReport(conflicts=conflicts, jacobi_failures=report.failures)
    if q.quarantined:
        log.warning("opt(2,1) fixture quarantined: conflicts=%s, %d failing Jacobi triples",
                    conflicts, len(report.failures))
        return LieAlgebra(OPT21_BASIS, table, meta={"quarantine": q})
    return L


# -- subspaces -------------------------------------------------------------


@dataclass(frozen=True)
class SubspaceBasis:
    """Echelonized basis of a subspace of a coordinate space of dimension ``ambient_dim``."""

    ambient_dim: int
    vectors: tuple
    ambient: object = None

    @property
    def dim(self) -> int:
        return len(self.vectors)


def derived_subalgebra(L: LieAlgebra) -> SubspaceBasis:
    """Span of all brackets [e_i, e_j]."""
    vecs = []
    for (i, j), vec in L.brackets.items():
        vecs.append([vec.get(k, Fraction(0)) for k in range(L.dim)])
    basis = echelon_basis(vecs, L.dim)
    return SubspaceBasis(L.dim, tuple(tuple(v) for v in basis), L)


def is_perfect(L: LieAlgebra) -> bool:
    return derived_subalgebra(L).dim == L.dim


@dataclass(frozen=True)
class TrivialRepReport:
    fixed: SubspaceBasis        # R^S
    image_dim: int              # dim pi(S)R
    module_dim: int

    @property
    def has_trivial_copy(self) -> bool:
        return self.fixed.dim > 0

    @property
    def image_is_full(self) -> bool:
        return self.image_dim == self.module_dim

    @property
    def consistent(self) -> bool:
        """R^S = 0 exactly when pi(S)R = R."""
        return (self.fixed.dim == 0) == self.image_is_full


def trivial_rep_copies(act: ModuleAction) -> TrivialRepReport:
    """Common kernel R^S of the action, plus the dimension of pi(S)R."""
    d = act.module_dim
    stacked = [list(row) for M in act.matrices for row in M]
    fixed = exact_nullspace(stacked, d)
    side_by_side = [[M[i][j] for M in act.matrices for j in range(d)] for i in range(d)]
    image_dim = rank(side_by_side) if d else 0
    return TrivialRepReport(
        fixed=SubspaceBasis(d, tuple(tuple(v) for v in echelon_basis(fixed, d))),
        image_dim=image_dim,
        module_dim=d,
    )
