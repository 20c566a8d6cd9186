"""Command-line entry point: ``lieinvar <command> ...``."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .algebra import (
    AlgebraError,
    LieAlgebra,
    algebra_from_json,
    build_opt21,
    check_jacobi,
    derived_subalgebra,
    module_action_of,
    sl2_semidirect,
    trivial_rep_copies,
)
from .coadjoint import rank_ml
from .invariants import find_invariants, independent_count, inter_reduce, radical_only_check, verify_invariant
from .oracle import max_drift
from .poly import parse_polynomial
from .tde import adjoint_equations, check_integrability, check_solution, jacobian_system

DRIFT_TOLERANCE = 1e-8


class CliError(Exception):
    def __init__(self, message, code=2):
        super().__init__(message)
        self.code = code


def default_seed() -> int:
    raw = os.environ.get("LIEINVAR_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"LIEINVAR_SEED must be an integer, got {raw!r}") from None


def load_algebra(path: str) -> LieAlgebra:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return algebra_from_json(text)
    except AlgebraError as exc:
        raise CliError(f"{path}: {exc}") from None


def run_report(command: str, L: LieAlgebra, results: dict, seed: int | None = None) -> dict:
    return {
        "command": command,
        "algebra_summary": {"dim": L.dim, "basis": list(L.basis)},
        "results": results,
        "seed": seed,
        "version": __version__,
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _emit(args, command, L, results, human_lines=None, seed=None):
    if args.json:
        print(dumps(run_report(command, L, results, seed)))
    elif human_lines is not None:
        for line in human_lines:
            print(line)
    else:
        print(dumps(results))


def _semidirect_module(L: LieAlgebra):
    sd = L.meta.get("semidirect")
    if sd and int(sd.get("s_dim", 0)) == 3 and sd.get("module") is not None:
        return int(sd["module"])
    return None


def default_max_degree(L: LieAlgebra) -> int:
    m = _semidirect_module(L)
    if m is not None and m + 1 >= 5:
        return 3
    return 4


# -- commands --------------------------------------------------------------


def cmd_build(args) -> int:
    if args.sl2_module is not None:
        if args.sl2_module < 0:
            raise CliError("--sl2-module must be non-negative")
        L = sl2_semidirect(args.sl2_module)
    elif args.opt21:
        L = build_opt21()
    else:
        L = load_algebra(args.file)
    report = check_jacobi(L)
    if not report.ok:
        for triple in report.failures:
            print(f"Jacobi fails on ({', '.join(triple)})", file=sys.stderr)
        q = L.meta.get("quarantine")
        if q is not None and q.conflicts:
            for a, b in q.conflicts:
                print(f"conflicting table entries for [{a}, {b}]", file=sys.stderr)
        return 1
    text = L.to_json()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_check(args) -> int:
    L = load_algebra(args.file)
    jac = check_jacobi(L)
    derived = derived_subalgebra(L)
    results = {
        "jacobi": {"ok": jac.ok, "failures": [list(t) for t in jac.failures]},
        "derived_dim": derived.dim,
        "perfect": derived.dim == L.dim,
    }
    act = module_action_of(L)
    if act is not None:
        tr = trivial_rep_copies(act)
        results["trivial_rep"] = {"fixed_dim": tr.fixed.dim, "image_dim": tr.image_dim,
                                  "consistent": tr.consistent}
    lines = [
        f"Jacobi identity: {'ok' if jac.ok else 'FAILS on ' + str(jac.failures)}",
        f"derived subalgebra: dim {derived.dim} of {L.dim} ({'perfect' if results['perfect'] else 'not perfect'})",
    ]
    if "trivial_rep" in results:
        t = results["trivial_rep"]
        lines.append(f"fixed vectors R^S: dim {t['fixed_dim']}; pi(S)R: dim {t['image_dim']}")
    _emit(args, "check", L, results, lines)
    return 0 if jac.ok else 1


def cmd_analyze(args) -> int:
    L = load_algebra(args.file)
    r = rank_ml(L)
    results = {"dim": L.dim, "rank": r, "invariants": L.dim - r}
    _emit(args, f"analyze {args.what}", L, results)
    return 0


def _parse_poly(L, text):
    try:
        return parse_polynomial(text, L.basis)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def cmd_invariants_find(args) -> int:
    L = load_algebra(args.file)
    seed = default_seed() if args.seed is None else args.seed
    restrict = None
    if args.radical_only:
        sd = L.meta.get("semidirect")
        if not sd:
            raise CliError("--radical-only needs an algebra file with semidirect metadata")
        restrict = L.basis[int(sd["s_dim"]):]
    max_degree = args.max_degree or default_max_degree(L)
    inv = find_invariants(L, max_degree, restrict_vars=restrict, seed=seed)
    if args.reduce:
        inv = inter_reduce(inv)
    polys = [str(p) for p in inv.polys]
    summary = {"found": len(polys), "independent": inv.independent_count, "counted": inv.counted}
    results = dict(summary, polys=polys, degrees=list(inv.degrees), max_degree=max_degree)
    _emit(args, "invariants find", L, results, polys + [dumps(summary)], seed)
    return 0


def cmd_invariants_verify(args) -> int:
    L = load_algebra(args.file)
    F = _parse_poly(L, args.poly)
    ok = verify_invariant(L, F)
    _emit(args, "invariants verify", L, {"poly": str(F), "invariant": ok}, [f"{F}: {'invariant' if ok else 'not invariant'}"])
    return 0 if ok else 1


def cmd_tde_emit(args) -> int:
    L = load_algebra(args.file)
    sys_ = jacobian_system(L)
    eqs = adjoint_equations(sys_, L)
    results = {
        "dependent": sys_.names(sys_.dependent),
        "independent": sys_.names(sys_.independent),
        "equations": [str(e) for e in eqs],
        "singular_locus": str(sys_.denominator) if sys_.denominator is not None else None,
    }
    lines = [str(e) for e in eqs] or ["(empty system: every coordinate is an invariant)"]
    _emit(args, "tde emit", L, results, lines)
    return 0


def cmd_tde_check(args) -> int:
    L = load_algebra(args.file)
    F = _parse_poly(L, args.poly)
    ok = check_solution(jacobian_system(L), F)
    _emit(args, "tde check", L, {"poly": str(F), "solution": ok}, [f"{F}: {'solves' if ok else 'does not solve'} the system"])
    return 0 if ok else 1


def cmd_oracle_flow(args) -> int:
    L = load_algebra(args.file)
    F = _parse_poly(L, args.poly)
    seed = default_seed() if args.seed is None else args.seed
    if args.step * args.steps > 1 + 1e-12:
        raise CliError("--step times --steps must not exceed 1")
    d = max_drift(L, F, seed, step=args.step, steps=args.steps)
    _emit(args, "oracle flow", L, {"max_drift": d, "seed": seed}, seed=seed)
    return 0


def build_report(L: LieAlgebra, max_degree: int | None, seed: int) -> tuple:
    """Run every analysis stage; returns (results, all_ok)."""
    stages = {}
    res: dict = {}

    def stage(name, fn):
        try:
            ok = fn()
            stages[name] = "ok" if ok is not False else "failed"
        except Exception as exc:  # noqa: BLE001 - recorded per stage
            stages[name] = f"error: {exc}"

    def jacobi():
        r = check_jacobi(L)
        res["jacobi"] = {"ok": r.ok, "failures": [list(t) for t in r.failures]}
        return r.ok

    def perfect():
        d = derived_subalgebra(L)
        res["derived_dim"] = d.dim
        res["perfect"] = d.dim == L.dim

    def trivial():
        act = module_action_of(L)
        if act is None:
            res["trivial_rep"] = None
            return None
        tr = trivial_rep_copies(act)
        res["trivial_rep"] = {"fixed_dim": tr.fixed.dim, "image_dim": tr.image_dim, "consistent": tr.consistent}
        return tr.consistent

    def rank_count():
        r = rank_ml(L)
        res["rank"] = r
        res["invariants"] = L.dim - r

    found = {}

    def invariants():
        deg = max_degree or default_max_degree(L)
        inv = find_invariants(L, deg, seed=seed)
        red = inter_reduce(inv)
        found["polys"] = red.polys
        res["max_degree"] = deg
        res["found"] = [{"poly": str(p), "degree": p.degree()} for p in red.polys]
        res["independent"] = independent_count(red.polys, seed=seed)
        return all(verify_invariant(L, p) for p in red.polys)

    def radical():
        m = _semidirect_module(L)
        if m is None or m < 3:
            res["radical_only"] = None
            return None
        rep = radical_only_check(L, max_degree or default_max_degree(L))
        res["radical_only"] = rep.free_of_levi and rep.same_space
        res["det_a_ok"] = rep.det_ok
        return rep.ok

    def tde():
        s = jacobian_system(L)
        integrable = check_integrability(s)
        solves = all(check_solution(s, p) for p in found.get("polys", ()))
        res["tde"] = {
            "dependent": s.names(s.dependent),
            "independent": s.names(s.independent),
            "integrable": integrable,
            "invariants_solve": solves,
        }
        return integrable and solves

    def oracle():
        drift = max((max_drift(L, p, seed) for p in found.get("polys", ())), default=0.0)
        res["oracle"] = {"max_drift": drift, "seed": seed, "tolerance": DRIFT_TOLERANCE}
        return drift < DRIFT_TOLERANCE

    for name, fn in (("jacobi", jacobi), ("perfect", perfect), ("trivial_rep", trivial),
                     ("rank", rank_count), ("invariants", invariants), ("radical_only", radical),
                     ("tde", tde), ("oracle", oracle)):
        if name != "jacobi" and stages.get("jacobi") != "ok":
            stages[name] = "skipped"
            continue
        stage(name, fn)
    res["stages"] = stages
    all_ok = all(v in ("ok", "skipped") for v in stages.values()) and stages["jacobi"] == "ok"
    return res, all_ok


def cmd_report(args) -> int:
    L = load_algebra(args.file)
    seed = default_seed() if args.seed is None else args.seed
    results, ok = build_report(L, args.max_degree, seed)
    if args.json:
        print(dumps(run_report("report", L, results, seed)))
    else:
        print(f"algebra: dim {L.dim}, basis {' '.join(L.basis)}")
        for name, status in results["stages"].items():
            print(f"  {name:<13} {status}")
        for key in ("perfect", "rank", "invariants", "independent", "radical_only"):
            if key in results:
                print(f"{key}: {json.dumps(results[key])}")
        for item in results.get("found", []):
            print(f"  I (degree {item['degree']}) = {item['poly']}")
    return 0 if ok else 1


# -- parser ----------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lieinvar", description=__doc__)
    parser.add_argument("--json", action="store_true", help="machine-readable JSON output")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="write an algebra file")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--sl2-module", type=int, metavar="M", help="sl(2) + V(M) with abelian radical")
    src.add_argument("--file", help="validate and canonicalize an existing algebra file")
    src.add_argument("--opt21", action="store_true", help="the optical algebra opt(2,1)")
    p.add_argument("-o", "--output", help="output path (default: stdout)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("check", help="Jacobi identity, perfectness, trivial-representation test")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("analyze", help="rank of the commutator matrix and invariant count")
    p.add_argument("what", choices=["rank", "count"])
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("invariants", help="search or verify polynomial invariants")
    isub = p.add_subparsers(dest="action", required=True)
    f = isub.add_parser("find")
    f.add_argument("file")
    f.add_argument("--max-degree", type=int)
    f.add_argument("--radical-only", action="store_true")
    f.add_argument("--reduce", action="store_true")
    f.add_argument("--seed", type=int)
    f.set_defaults(func=cmd_invariants_find)
    v = isub.add_parser("verify")
    v.add_argument("file")
    v.add_argument("--poly", required=True)
    v.set_defaults(func=cmd_invariants_verify)

    p = sub.add_parser("tde", help="adjoint system of total differential equations")
    tsub = p.add_subparsers(dest="action", required=True)
    e = tsub.add_parser("emit")
    e.add_argument("file")
    e.set_defaults(func=cmd_tde_emit)
    c = tsub.add_parser("check")
    c.add_argument("file")
    c.add_argument("--poly", required=True)
    c.set_defaults(func=cmd_tde_check)

    p = sub.add_parser("oracle", help="numerical cross-checks")
    osub = p.add_subparsers(dest="action", required=True)
    fl = osub.add_parser("flow")
    fl.add_argument("file")
    fl.add_argument("--poly", required=True)
    fl.add_argument("--seed", type=int)
    fl.add_argument("--steps", type=int, default=1000)
    fl.add_argument("--step", type=float, default=1e-3)
    fl.set_defaults(func=cmd_oracle_flow)

    p = sub.add_parser("report", help="run the full analysis pipeline")
    p.add_argument("file")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "invariants" and args.action == "find" and args.max_degree is not None \
            and args.max_degree < 1:
        parser.error("--max-degree must be at least 1")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
