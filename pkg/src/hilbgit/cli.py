"""Command-line interface: ``hilbgit <command> ...``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import bridgeland as br
from . import final7 as f7
from . import quiver as qv
from .degeneration import WallWeight, corner_cut, corner_cut_ideal, flat_limit
from .exact import ParseError, to_q
from .git import (
    HilbertPointUndefined, OneParamSubgroup, chow_stability, default_base_degree, destabilize_diagonal, mu,
    mu_integer, parse_m, state_polytope,
)
from .ideals import DegenerateParameters, NotZeroDimensional, format_ideal_file, parse_ideal_file
from .suites import SUITES
from .walls import wall_scan

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
JOBS_ENV = "HILBGIT_JOBS"


class UsageError(Exception):
    pass


def _q(text: str) -> Fraction:
    try:
        return to_q(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _qlist(text: str) -> list:
    return [_q(t) for t in text.split(",") if t.strip()]


def _lambda(text: str) -> OneParamSubgroup:
    parts = _qlist(text)
    try:
        if len(parts) == 1:
            return OneParamSubgroup.normalized(parts[0])
        if len(parts) == 2:
            return OneParamSubgroup.ab(*parts)
        return OneParamSubgroup(*parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _m(text: str):
    try:
        return parse_m(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad m: {text!r}") from exc


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        return parse_ideal_file(text)
    except (ParseError, DegenerateParameters, NotZeroDimensional, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _jobs(text: str) -> int:
    try:
        k = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad worker count: {text!r}") from exc
    if k < 1:
        raise argparse.ArgumentTypeError("worker count must be positive")
    return k


def default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "")
    try:
        return _jobs(raw) if raw else 1
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"${JOBS_ENV}: {exc}") from exc


def _s(v) -> str:
    return str(v)


# ------------------------------------------------------------ commands

def cmd_mu(args) -> tuple:
    Zs = _load(args.ideal)
    d = args.base_degree or default_base_degree(Zs)
    lam = args.lam
    value = mu(Zs, args.m, lam, d)
    return EXIT_OK, {"lambda": [_s(w) for w in lam.weights], "m": _s(args.m), "base_degree": d,
                     "mu_d": _s(mu_integer(Zs, d, lam)), "mu_d1": _s(mu_integer(Zs, d + 1, lam)),
                     "mu": _s(value)}


def cmd_state_polytope(args) -> tuple:
    Zs = _load(args.ideal)
    P = state_polytope(Zs, args.m)
    return EXIT_OK, {"m": args.m, "vertices": sorted([list(v) for v in P.vertices])}


def cmd_limit(args) -> tuple:
    Zs = _load(args.ideal)
    L = flat_limit(Zs, args.lam, cap=args.degree_cap)
    return EXIT_OK, {"lambda": [_s(w) for w in args.lam.weights], "limit": format_ideal_file(L)}


def cmd_corner_cut(args) -> tuple:
    M = corner_cut(args.w, args.n)
    I = corner_cut_ideal(M)
    return EXIT_OK, {"n": args.n, "weight": [_s(v) for v in args.w],
                     "cells": sorted([list(c) for c in M.cells]),
                     "generators": [str(g) for g in I.ideal.generators]}


def cmd_wall_scan(args) -> tuple:
    rows = wall_scan(args.n, args.seed, args.jobs)
    ok = all(r["verified"] is not False for r in rows)
    out = [{**r, "m": _s(r["m"])} for r in rows]
    return (EXIT_OK if ok else EXIT_FAIL), {"n": args.n, "walls": out}


def cmd_bridgeland(args) -> tuple:
    cat = br.walls_catalog(args.n)
    return EXIT_OK, {"n": args.n, "walls": [c.to_json() for c in cat],
                     "d2_effective": br.d2_effective(args.n)}


def cmd_quiver(args) -> tuple:
    rep = qv.locus_report(args.locus, args.n, args.a)
    ok = rep.relations_hold and rep.fixed
    return (EXIT_OK if ok else EXIT_FAIL), rep.to_json()


def cmd_final7(args) -> tuple:
    sub = args.final7_cmd
    if sub == "basis":
        return EXIT_OK, {"basis": [str(e) for e in f7.BASIS]}
    if sub == "act":
        A = [args.matrix[i * 3:(i + 1) * 3] for i in range(3)]
        if len(args.matrix) != 9:
            raise UsageError("--matrix needs 9 entries")
        img = f7.act(A, f7.section(_need15(args.coords)))
        return EXIT_OK, {"section": str(img), "coords": [_s(c) for c in f7.coordinates(img)]}
    if sub == "mu":
        coords = _need15(args.coords)
        if args.r is not None:
            return EXIT_OK, {"r": _s(args.r), "mu": _s(f7.mu14(coords, args.r)),
                             "pattern": f7.unstable_pattern(coords)}
        best, r = f7.mu14(coords)
        return EXIT_OK, {"max_mu": _s(best), "argmax_r": _s(r), "pattern": f7.unstable_pattern(coords)}
    if sub == "orbit":
        w = f7.INF_W if args.w in ("inf", "oo") else _q(args.w)
        rep = f7.minimal_orbit(w)
        return (EXIT_OK if rep.matches_printed else EXIT_FAIL), rep.to_json()
    if sub == "family":
        fn = {"x1": f7.family_x1, "x2": f7.family_x2, "x3": f7.family_x3}[args.which]
        need = {"x1": 1, "x2": 2, "x3": 3}[args.which]
        if len(args.params) != need:
            raise UsageError(f"family {args.which} takes {need} parameters")
        member = fn(*args.params)
        out = member.to_json()
        out["pattern"] = f7.unstable_pattern(member.coords)
        return (EXIT_OK if member.agrees else EXIT_FAIL), out
    raise UsageError("unknown final7 subcommand")


def _need15(coords):
    if coords is None or len(coords) != 15:
        raise UsageError("--coords needs 15 comma-separated rationals")
    return coords


def cmd_verify(args) -> tuple:
    checks = SUITES[args.suite]()
    checks.sort(key=lambda c: c.id)
    ok = all(c.ok for c in checks)
    return (EXIT_OK if ok else EXIT_FAIL), {"suite": args.suite, "passed": sum(c.ok for c in checks),
                                            "total": len(checks), "checks": [c.to_json() for c in checks]}


def cmd_chow(args) -> tuple:
    Zs = _load(args.ideal)
    if not Zs.has_hints:
        raise UsageError("the Chow test needs complete support hints in the ideal file")
    res = chow_stability(Zs.cycle())
    return EXIT_OK, {"status": res.status, "witness": res.witness}


def cmd_scan(args) -> tuple:
    Zs = _load(args.ideal)
    sc = destabilize_diagonal(Zs, args.m, args.base_degree)
    return EXIT_OK, {"m": _s(args.m), "max_mu": _s(sc.max_mu), "argmax": [_s(w) for w in sc.argmax.weights],
                     "certificate": sc.certificate.to_json() if sc.certificate else None}


# ------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hilbgit", description="Exact GIT of points in the plane.")
    p.add_argument("--seed", type=int, default=0, help="seed for generic coefficients")
    p.add_argument("--degree-cap", type=int, default=None, help="degree cap for limits")
    p.add_argument("--output", choices=("json", "human"), default="json")
    p.add_argument("--jobs", type=_jobs, default=None,
                   help=f"worker processes for batch verification (default ${JOBS_ENV} or 1)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("mu", help="Hilbert-Mumford index mu_m(Z, lambda)")
    s.add_argument("--ideal", required=True)
    s.add_argument("--m", type=_m, required=True)
    s.add_argument("--lambda", dest="lam", type=_lambda, required=True, help="r, or a,b, or a,b,c")
    s.add_argument("--base-degree", type=int)
    s.set_defaults(func=cmd_mu)

    s = sub.add_parser("state-polytope", help="vertices of State_m")
    s.add_argument("--ideal", required=True)
    s.add_argument("--m", type=int, required=True)
    s.set_defaults(func=cmd_state_polytope)

    s = sub.add_parser("limit", help="flat limit under a one-parameter subgroup")
    s.add_argument("--ideal", required=True)
    s.add_argument("--lambda", dest="lam", type=_lambda, required=True)
    s.set_defaults(func=cmd_limit)

    s = sub.add_parser("scan", help="maximize mu over diagonal subgroups")
    s.add_argument("--ideal", required=True)
    s.add_argument("--m", type=_m, required=True)
    s.add_argument("--base-degree", type=int)
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("corner-cut", help="corner cut for an affine weight")
    s.add_argument("--w", type=_qlist, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_corner_cut)

    s = sub.add_parser("wall-scan", help="closed-form GIT walls with verification")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_wall_scan)

    s = sub.add_parser("bridgeland-walls", help="numerical Bridgeland walls for (1, 0, -n)")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_bridgeland)

    s = sub.add_parser("quiver-check", help="matrices, relations and pairings for a locus")
    s.add_argument("--locus", type=int, choices=(1, 2, 3), required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--a", type=_qlist, default=None, help="extension vector")
    s.set_defaults(func=cmd_quiver)

    s = sub.add_parser("final7", help="the n = 7 final model")
    f = s.add_subparsers(dest="final7_cmd", required=True)
    f.add_parser("basis")
    a = f.add_parser("act")
    a.add_argument("--matrix", type=_qlist, required=True, help="9 entries, row major")
    a.add_argument("--coords", type=_qlist, required=True)
    a = f.add_parser("mu")
    a.add_argument("--coords", type=_qlist, required=True)
    a.add_argument("--r", type=_q, default=None)
    a = f.add_parser("orbit")
    a.add_argument("--w", required=True)
    a = f.add_parser("family")
    a.add_argument("--which", choices=("x1", "x2", "x3"), required=True)
    a.add_argument("--params", type=_qlist, required=True)
    s.set_defaults(func=cmd_final7)

    s = sub.add_parser("verify-paper", help="replay the published computations")
    s.add_argument("--suite", choices=sorted(SUITES), required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("chow", help="Chow stability of the support cycle")
    s.add_argument("--ideal", required=True)
    s.set_defaults(func=cmd_chow)
    return p


def _human(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        return "\n".join(f"{pad}{k}:" + ("\n" + _human(v, indent + 1) if isinstance(v, (dict, list)) and v
                                         else f" {v}") for k, v in obj.items())
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return f"{pad}({', '.join(map(str, obj))})"
        if all(isinstance(v, list) and all(not isinstance(u, (dict, list)) for u in v) for v in obj):
            return "\n".join(f"{pad}- ({', '.join(map(str, v))})" for v in obj)
        return "\n".join(_human(v, indent) if isinstance(v, (dict, list)) else f"{pad}- {v}" for v in obj)
    return f"{pad}{obj}"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        if args.jobs is None:
            args.jobs = default_jobs()
        code, result = args.func(args)
    except UsageError as exc:
        print(f"hilbgit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (WallWeight, DegenerateParameters, qv.ZeroExtension, HilbertPointUndefined, ValueError) as exc:
        print(f"hilbgit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    payload = {"schema_version": SCHEMA_VERSION, "command": args.command, "seed": args.seed, "result": result}
    if args.output == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(_human(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
