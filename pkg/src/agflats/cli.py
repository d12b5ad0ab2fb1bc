"""Command-line entry point.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 scale cap exceeded.
stdout carries machine-readable output; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import ast
import itertools
import json
import operator
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from . import counting, oracles
from .affine import flat_join
from .counting import (
    count_flats_containing,
    count_flats_within,
    count_type_subspaces,
    gauss,
)
from .families import (
    NonCanonicalError,
    ScaleError,
    default_kflat,
    default_line,
    f3_family,
    family_from_dict,
    family_stats,
    family_to_dict,
    hm_family,
    pencil_family,
    seeded_selector,
)
from .fieldlinalg import is_prime
from .search import DEFAULT_VERTEX_CAP, search

THREADS_ENV = "AGFLATS_THREADS"
EXIT_MISMATCH, EXIT_USAGE, EXIT_SCALE = 1, 2, 3

DEFAULT_GRIDS = {
    "2.6": "a=0..2,k=a+1..6,n=k..20,q=2,3,5",
    "2.7": "k=3..6,r=4..8,q=2,3,5,n=2*k+r",
    "dominance": "k=3..6,q=2,3,4,r=4..8,n=2*k+r",
}


class UsageError(Exception):
    pass


# -- grid micro-syntax -----------------------------------------------------------

_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.FloorDiv: operator.floordiv}


def _eval(expr: str, env: dict) -> int:
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise UsageError(f"grid expression {expr!r} uses {node.id!r} before it is defined")
            return env[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        raise UsageError(f"unsupported grid expression {expr!r}")

    try:
        return ev(ast.parse(expr.strip(), mode="eval"))
    except SyntaxError:
        raise UsageError(f"bad grid expression {expr!r}") from None


def parse_grid(spec: str) -> list:
    """Expand ``name=lo..hi`` / ``name=v1,v2,...`` clauses into parameter dicts.

    Bounds and values may be integer expressions in earlier names (``n=k+1..20``).
    Points are produced in clause order, later clauses varying fastest.
    """
    clauses: list = []
    for tok in spec.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if "=" in tok:
            name, rhs = tok.split("=", 1)
            name = name.strip()
            if not name.isidentifier():
                raise UsageError(f"bad grid variable {name!r}")
            clauses.append((name, [rhs.strip()]))
        elif clauses:
            clauses[-1][1].append(tok)
        else:
            raise UsageError(f"grid spec must start with name=..., got {tok!r}")
    if not clauses:
        raise UsageError("empty grid spec")

    def values(items, env):
        if len(items) == 1 and ".." in items[0]:
            lo, hi = items[0].split("..", 1)
            return range(_eval(lo, env), _eval(hi, env) + 1)
        return [_eval(x, env) for x in items]

    points = []

    def rec(i, env):
        if i == len(clauses):
            points.append(dict(env))
            return
        name, items = clauses[i]
        for v in values(items, env):
            env[name] = v
            rec(i + 1, env)
        env.pop(name, None)

    rec(0, {})
    return points


def parse_params(spec: str) -> dict:
    out = {}
    for tok in spec.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if "=" not in tok:
            raise UsageError(f"expected name=value, got {tok!r}")
        name, v = tok.split("=", 1)
        try:
            out[name.strip()] = int(v)
        except ValueError:
            raise UsageError(f"parameter {name} must be an integer, got {v!r}") from None
    return out


def _workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


# -- commands -------------------------------------------------------------------


def cmd_gauss(args) -> int:
    print(gauss(args.n, args.k, args.q))
    return 0


COUNT_SPECS = {
    "flats-within": (("m", "k", "q"), lambda p: count_flats_within(p["m"], p["k"], p["q"])),
    "flats-containing": (("n", "k", "m", "q"), lambda p: count_flats_containing(p["n"], p["k"], p["m"], p["q"])),
    "type-subspaces": (("m1", "k1", "m", "k", "n", "l", "q"),
                       lambda p: count_type_subspaces(*(p[x] for x in ("m1", "k1", "m", "k", "n", "l", "q")))),
}


def _enumerated_count(what: str, p: dict, cap: int) -> int:
    q = p["q"]
    if what == "flats-within":
        n = p.get("n", p["m"])
        size = count_flats_within(p["m"], p["k"], q)
        if size > cap:
            raise ScaleError(f"enumeration of {size} flats exceeds cap {cap}")
        return oracles.enum_flats_within(n, p["m"], p["k"], q)
    if what == "flats-containing":
        size = count_flats_containing(p["n"], p["k"], p["m"], q)
        if size > cap:
            raise ScaleError(f"enumeration of {size} flats exceeds cap {cap}")
        return oracles.enum_flats_containing(p["n"], p["k"], p["m"], q)
    N = p["n"] + p["l"]
    size = gauss(N - p["m1"], p["m"] - p["m1"], q)
    if size > cap:
        raise ScaleError(f"enumeration of {size} subspaces exceeds cap {cap}")
    return oracles.enum_type_subspaces(p["m1"], p["k1"], p["m"], p["k"], p["n"], p["l"], q)


def cmd_count(args) -> int:
    names, fn = COUNT_SPECS[args.what]
    p = parse_params(args.params)
    missing = [x for x in names if x not in p]
    if missing:
        raise UsageError(f"--what {args.what} needs parameters {', '.join(names)}; missing {missing}")
    try:
        closed = fn(p)
    except ValueError as e:
        raise UsageError(str(e)) from None
    out = {"what": args.what, "params": p, "closed_form": closed}
    code = 0
    if args.verify:
        if not is_prime(p["q"]):
            raise UsageError("--verify needs a prime q")
        got = _enumerated_count(args.what, p, args.cap)
        out["enumerated"] = got
        out["match"] = got == closed
        if got != closed:
            print(f"mismatch: closed form {closed}, enumeration {got}", file=sys.stderr)
            code = EXIT_MISMATCH
    print(json.dumps(out))
    return code


def _family_size_estimate(kind: str, n: int, k: int, q: int) -> int:
    if kind == "pencil":
        return gauss(n - 1, k - 1, q)
    if kind == "hm":
        return counting.hm_size(n, k, q)
    return counting.f3_size(n, q)


def cmd_family_build(args) -> int:
    n, k, q = args.n, args.k, args.q
    if not is_prime(q):
        raise UsageError(f"family construction needs a prime q, got {q}")
    if args.type == "f3" and k != 3:
        raise UsageError("--type f3 requires --k 3")
    if args.type == "hm" and not n >= k + 1 >= 2:
        raise UsageError("--type hm requires n >= k + 1 >= 2")
    if args.type == "pencil" and not 1 <= k <= n:
        raise UsageError("--type pencil requires 1 <= k <= n")
    size = _family_size_estimate(args.type, n, k, q)
    if size > args.max_size:
        raise ScaleError(f"family of size {size} exceeds --max-size {args.max_size}")
    E = default_line(n, q)
    if args.type == "pencil":
        fam = pencil_family(E, k)
    elif args.type == "hm":
        U = default_kflat(n, k, q)
        sel = None if args.seed is None else seeded_selector(flat_join(E, U), args.seed)
        fam = hm_family(E, U, sel)
    else:
        U = default_kflat(n, 3, q, offset=0)
        sel = None if args.seed is None else seeded_selector(U, args.seed)
        fam = f3_family(U, sel)
    text = json.dumps(family_to_dict(fam))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {len(fam)} flats to {args.out}", file=sys.stderr)
    else:
        print(text)
    return 0


def cmd_family_check(args) -> int:
    with open(args.inp) as fh:
        data = json.load(fh)
    try:
        fam = family_from_dict(data)
    except NonCanonicalError as e:
        print(f"non-canonical input: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    except (KeyError, ValueError) as e:
        print(f"invalid family file: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    stats = family_stats(fam, args.tau_budget)
    print(json.dumps(stats))
    if not stats["intersecting"]:
        print("family is not intersecting", file=sys.stderr)
        return EXIT_MISMATCH
    return 0


AUDITS = {
    "2.6": counting.audit_product_inequality,
    "2.7": counting.audit_hm_sandwich,
    "dominance": counting.dominance_audit,
}


def _audit_one(lemma: str, point: dict):
    return AUDITS[lemma]([point]).rows


def run_audit(lemma: str, grid: str) -> counting.AuditReport:
    points = parse_grid(grid)
    need = {"2.6": ("a", "n", "k", "q"), "2.7": ("k", "q"), "dominance": ("k", "q")}[lemma]
    for p in points[:1]:
        missing = [x for x in need if x not in p]
        if lemma != "2.6" and "n" not in p and "r" not in p:
            missing.append("n or r")
        if missing:
            raise UsageError(f"grid for {lemma} is missing {missing}")
    workers = _workers()
    report = counting.AuditReport(grid)
    if workers > 1 and len(points) > 1:
        with ProcessPoolExecutor(workers) as pool:
            for rows in pool.map(_audit_one, itertools.repeat(lemma), points, chunksize=64):
                report.rows.extend(rows)
    else:
        report.rows.extend(AUDITS[lemma](points).rows)
    return report


def cmd_audit(args) -> int:
    grid = args.grid or DEFAULT_GRIDS[args.lemma]
    report = run_audit(args.lemma, grid)
    text = report.to_json() if args.json else report.to_csv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    summary = report.summary()
    print(f"audit {args.lemma} on {grid!r}: {summary}", file=sys.stderr)
    if report.failures:
        r = report.failures[0]
        print(f"first failure: {r.lemma_id} {r.params} lhs={r.lhs} rhs={r.rhs}", file=sys.stderr)
        return EXIT_MISMATCH
    return 0


def cmd_search(args) -> int:
    if not is_prime(args.q):
        raise UsageError(f"search needs a prime q, got {args.q}")
    outcome = search(args.n, args.k, args.q, args.tau_min, args.budget, args.cap)
    print(json.dumps(outcome.to_dict()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="agflats", description="Flats, counts and intersecting families in AG(n, q).")
    sub = p.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gauss", help="Gaussian binomial [n, k]_q")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--q", type=int, required=True)
    g.set_defaults(func=cmd_gauss)

    c = sub.add_parser("count", help="closed-form counts, optionally checked by enumeration")
    c.add_argument("--what", choices=sorted(COUNT_SPECS), required=True)
    c.add_argument("--params", required=True, help="e.g. 'm=2,k=1,q=2'")
    c.add_argument("--verify", action="store_true")
    c.add_argument("--cap", type=int, default=2**16, help="largest enumeration allowed by --verify")
    c.set_defaults(func=cmd_count)

    f = sub.add_parser("family", help="build or check families of k-flats")
    fsub = f.add_subparsers(dest="action", required=True)
    b = fsub.add_parser("build")
    b.add_argument("--type", choices=("pencil", "hm", "f3"), required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--seed", type=int, default=None)
    b.add_argument("--out", default=None)
    b.add_argument("--max-size", type=int, default=200_000)
    b.set_defaults(func=cmd_family_build)
    ch = fsub.add_parser("check")
    ch.add_argument("--in", dest="inp", required=True)
    ch.add_argument("--tau-budget", type=int, default=500_000)
    ch.set_defaults(func=cmd_family_check)

    a = sub.add_parser("audit", help="inequality and dominance audits over a parameter grid")
    a.add_argument("--lemma", choices=sorted(AUDITS), required=True)
    a.add_argument("--grid", default=None, help="e.g. 'a=0..2,k=3..6,n=k+1..20,q=2,3,5'")
    a.add_argument("--out", default=None)
    a.add_argument("--json", action="store_true", help="write JSON instead of CSV")
    a.set_defaults(func=cmd_audit)

    s = sub.add_parser("search", help="exact maximum intersecting family on a toy instance")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--tau-min", type=int, default=None)
    s.add_argument("--budget", type=int, default=1_000_000)
    s.add_argument("--cap", type=int, default=DEFAULT_VERTEX_CAP)
    s.set_defaults(func=cmd_search)
    return p


def run(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ScaleError as e:
        print(f"scale cap exceeded: {e}", file=sys.stderr)
        return EXIT_SCALE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
