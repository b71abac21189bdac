"""Command-line interface.

Exit codes: 0 success or pass, 1 definite negative (not QR, obstructed,
verification failure), 2 search exhausted or status unknown, 3 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from .errors import InvalidInput, PartialResult, ResourceLimit, SchemaError, UnsupportedScope

OK, NEGATIVE, EXHAUSTED, USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise InvalidInput(f"expected comma-separated integers, got {text!r}") from exc


# qr

def cmd_qr_check(args):
    from .signmatrix import SignMatrix, qr_test

    S = SignMatrix.parse(args.matrix)
    v = qr_test(S)
    diag = "(" + ",".join(str(d) for d in v.diagonal) + ")"
    res = {"matrix": str(S), "is_qr": v.is_qr, "k": v.k, "diagonal": list(v.diagonal),
           "reason": f"diagonal of S^2 = {diag}"}
    text = f"{'QR' if v.is_qr else 'not QR'}: diagonal of S^2 = {diag}" + (f", k = {v.k}" if v.is_qr else "")
    return (OK if v.is_qr else NEGATIVE), res, text


def cmd_qr_find(args):
    from .signmatrix import SignMatrix, find_primes_for_sign_matrix, qr_test

    S = SignMatrix.parse(args.matrix)
    v = qr_test(S)
    if not v.is_qr:
        return NEGATIVE, {"matrix": str(S), "is_qr": False, "primes": None}, "not QR: no primes exist"
    primes = find_primes_for_sign_matrix(S, args.bound)
    res = {"matrix": str(S), "is_qr": True, "bound": args.bound, "primes": list(primes) if primes else None}
    if primes is None:
        return EXHAUSTED, res, f"no primes up to {args.bound}"
    return OK, res, "primes: " + ", ".join(map(str, primes))


def cmd_qr_census(args):
    from .signmatrix import census

    c = census(args.s)
    res = {"s": args.s, "sign_classes": c.sign_classes, "qr_classes": c.qr_classes}
    return OK, res, f"s = {args.s}: {c.sign_classes} classes, {c.qr_classes} QR"


# groups

def _config_from_args(args):
    from .corpus import find_entry, load_corpus
    from .smallgroup import TameConfig, catalog_group

    if getattr(args, "entry", None):
        return find_entry(load_corpus(args.corpus), args.entry).config()
    if not args.group or not args.pair:
        raise UsageError("give --entry, or --group with one --pair per prime")
    G = catalog_group(args.group)
    Ts, Zs = [], []
    for spec in args.pair:
        if "/" not in spec:
            raise UsageError(f"pair {spec!r} must look like T-words/Z-words")
        t, z = spec.split("/", 1)
        Ts.append(G.subgroup([G.element(w) for w in t.split(",")]))
        Zs.append(G.subgroup([G.element(w) for w in z.split(",")]))
    return TameConfig(G, tuple(Ts), tuple(Zs))


def cmd_group_enumerate(args):
    from .smallgroup import catalog_group, enumerate_configs, known_obstruction

    G = catalog_group(args.group)
    configs = enumerate_configs(G)
    rows = []
    lines = [f"{args.group}: {len(configs)} configurations"]
    for i, c in enumerate(configs, 1):
        v = known_obstruction(c)
        rows.append({"pairs": c.describe(), "obstruction": v.reason})
        pairs = "; ".join(f"T=<{','.join(p['T'])}> Z=<{','.join(p['Z'])}>" for p in c.describe())
        lines.append(f"{i:3d}. {pairs}" + (f"  [obstructed: {v.reason}]" if v.obstructed else ""))
    return OK, {"group": args.group, "count": len(configs), "configs": rows}, "\n".join(lines)


def cmd_group_rank(args):
    from .smallgroup import abelian_invariants, abelianization, catalog_group, rank

    G = catalog_group(args.group)
    A, _ = abelianization(G)
    res = {"group": args.group, "order": G.order, "rank": rank(G), "abelianization": abelian_invariants(A)}
    return OK, res, f"{args.group}: order {G.order}, rank {res['rank']}, abelianization {res['abelianization']}"


def cmd_group_obstruction(args):
    from .smallgroup import known_obstruction

    cfg = _config_from_args(args)
    v = known_obstruction(cfg)
    res = {"pairs": cfg.describe(), "status": v.status, "reason": v.reason}
    text = f"obstructed ({v.reason})" if v.obstructed else "no known obstruction"
    return (NEGATIVE if v.obstructed else OK), res, text


# abelian fields

def _cert_outcome(cert, extra: dict):
    if cert is None:
        return EXHAUSTED, dict(extra, certificate=None), "no realization within the bound"
    if not cert.verify():
        return NEGATIVE, dict(extra, certificate=cert.to_json(), verified=False), "certificate failed re-verification"
    body = cert.to_json()
    text = "primes " + ", ".join(map(str, cert.primes)) + " (roots " + ", ".join(map(str, cert.roots)) + ")"
    return OK, dict(extra, certificate=body, verified=True), text


def cmd_realize_split(args):
    from .cycabelian import realize_split

    return _cert_outcome(realize_split(args.n, args.s, args.bound), {"n": args.n, "s": args.s, "bound": args.bound})


def cmd_realize_matrix(args):
    from .cycabelian import DecompMatrix, realize_matrix_odd

    M = DecompMatrix.parse(args.n, args.matrix)
    return _cert_outcome(realize_matrix_odd(args.n, M, args.bound),
                         {"n": args.n, "matrix": str(M), "bound": args.bound})


def cmd_realize_config(args):
    from .cycabelian import realize_abelian_general

    cfg = _config_from_args(args)
    r = realize_abelian_general(cfg, args.bound)
    code, res, text = _cert_outcome(r.certificate, {"pairs": cfg.describe(), "bound": args.bound,
                                                    "tuples_tried": r.tuples_tried})
    return code, res, text + f" [{r.tuples_tried} prime tuples tried]"


def cmd_reciprocity(args):
    from .cycabelian import ReciprocityInstance, reciprocity_unit

    inst = ReciprocityInstance(args.n, args.p, tuple(_int_list(args.primes)), args.zeta)
    u = reciprocity_unit(inst)
    res = {"n": inst.n, "p": inst.p, "primes": list(inst.primes), "zeta": inst.zeta,
           "a": list(inst.kummer_exponents()), "b": list(inst.cyclotomic_indices()), "unit": u, "holds": u is not None}
    text = f"a = {res['a']}, b = {res['b']}: " + (f"b = {u} a" if u is not None else "no unit relates them")
    return (OK if u is not None else NEGATIVE), res, text


# corpus verification

def _verify_one(args_tuple):
    from .corpus import load_corpus, verify_entry

    path, eid = args_tuple
    entry = next(e for e in load_corpus(path) if e.id == eid)
    return verify_entry(entry)


def cmd_verify_corpus(args):
    from .corpus import load_corpus, verify_entry

    entries = load_corpus(args.corpus)
    if args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            reports = list(pool.map(_verify_one, [(args.corpus, e.id) for e in entries]))
    else:
        reports = [verify_entry(e) for e in entries]
    counts: dict[str, int] = {}
    for r in reports:
        counts[r["status"]] = counts.get(r["status"], 0) + 1
    failed = [r for r in reports if r["status"] in ("fail", "index_obstruction")]
    lines = [f"{r['id']:14s} {r['status']}" + (": " + "; ".join(r["details"]) if r["status"] == "fail" else "")
             for r in reports]
    lines.append(", ".join(f"{k}: {v}" for k, v in sorted(counts.items())))
    return (NEGATIVE if failed else OK), {"counts": counts, "entries": reports}, "\n".join(lines)


def cmd_verify_entry(args):
    from .corpus import find_entry, load_corpus, verify_entry

    r = verify_entry(find_entry(load_corpus(args.corpus), args.id))
    code = {"pass": OK, "unknown": EXHAUSTED}.get(r["status"], NEGATIVE)
    text = f"{r['id']}: {r['status']}" + ("".join("\n  " + d for d in r["details"]))
    return code, r, text


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--corpus", default=None, help="corpus file (default: bundled)")

    # subcommands repeat the options with suppressed defaults so a flag given
    # before the subcommand is not reset by the subparser
    late = _Parser(add_help=False)
    late.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit a JSON report")
    late.add_argument("--corpus", default=argparse.SUPPRESS, help="corpus file (default: bundled)")

    p = _Parser(prog="tameconf", description="Tame decomposition configurations over Q.", parents=[common])
    top = p.add_subparsers(dest="area", parser_class=_Parser)
    top.required = True

    def sub(group, name, func, help_):
        q = group.add_parser(name, help=help_, parents=[late])
        q.set_defaults(func=func)
        return q

    qr = top.add_parser("qr", help="sign matrices").add_subparsers(dest="cmd", parser_class=_Parser)
    qr.required = True
    q = sub(qr, "check", cmd_qr_check, "decide whether a sign matrix is a QR matrix")
    q.add_argument("--matrix", required=True)
    q = sub(qr, "find", cmd_qr_find, "least primes realizing a sign matrix")
    q.add_argument("--matrix", required=True)
    q.add_argument("--bound", type=int, default=10**4)
    q = sub(qr, "census", cmd_qr_census, "count sign-matrix classes and QR classes")
    q.add_argument("--s", type=int, required=True)

    grp = top.add_parser("group", help="small groups").add_subparsers(dest="cmd", parser_class=_Parser)
    grp.required = True
    q = sub(grp, "enumerate", cmd_group_enumerate, "list configurations up to equivalence")
    q.add_argument("--group", required=True)
    q = sub(grp, "rank", cmd_group_rank, "rank and abelianization")
    q.add_argument("--group", required=True)
    q = sub(grp, "obstruction", cmd_group_obstruction, "test the known obstruction predicates")
    _config_args(q)

    ab = top.add_parser("abelian", help="abelian fields").add_subparsers(dest="cmd", parser_class=_Parser)
    ab.required = True
    q = sub(ab, "realize-split", cmd_realize_split, "split configuration on (Z/n)^s")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--s", type=int, required=True)
    q.add_argument("--bound", type=int, default=10**6)
    q = sub(ab, "realize-matrix", cmd_realize_matrix, "odd n, prescribed decomposition matrix")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--matrix", required=True)
    q.add_argument("--bound", type=int, default=10**6)
    q = sub(ab, "realize-config", cmd_realize_config, "bounded search for an abelian configuration")
    _config_args(q)
    q.add_argument("--bound", type=int, default=10**6)
    q = sub(ab, "reciprocity", cmd_reciprocity, "compare Kummer and cyclotomic Frobenius exponents")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--primes", required=True)
    q.add_argument("--zeta", type=int, default=None)

    ver = top.add_parser("verify", help="corpus verification").add_subparsers(dest="cmd", parser_class=_Parser)
    ver.required = True
    q = sub(ver, "corpus", cmd_verify_corpus, "verify every corpus entry")
    q.add_argument("--threads", type=int, default=1)
    q = sub(ver, "entry", cmd_verify_entry, "verify one corpus entry")
    q.add_argument("--id", required=True)
    return p


def _config_args(q):
    q.add_argument("--entry", help="corpus entry id")
    q.add_argument("--group")
    q.add_argument("--pair", action="append", help="T-words/Z-words, e.g. 'y/y,x1^2'; repeat per prime")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else 0
    start = time.perf_counter()
    try:
        code, result, text = args.func(args)
    except (UsageError, InvalidInput, UnsupportedScope, ResourceLimit, SchemaError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except PartialResult as exc:
        code, result, text = EXHAUSTED, {"error": str(exc), "unresolved": str(exc.unresolved)}, f"partial: {exc}"
    elapsed = time.perf_counter() - start
    if args.json:
        argv_list = list(argv) if argv is not None else sys.argv[1:]
        report = {
            "command": [a for a in argv_list if a != "--json"],
            "outcome": {OK: "success", NEGATIVE: "negative", EXHAUSTED: "exhausted", USAGE: "usage"}[code],
            "exit_code": code,
            "result": result,
            "elapsed_seconds": round(elapsed, 3),
        }
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
