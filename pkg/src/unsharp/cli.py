"""Command-line interface.

Exit status: 0 on success, 1 when a law or deductive-system check fails,
2 on usage, parse or validation errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from unsharp import io
from unsharp.connectives import operator_table
from unsharp.deduction import (
    check_theta_theorem,
    induced_relation,
    relevant_universe,
    search_deductive_systems,
    set_key,
    theta_classes,
    verify_deductive_system,
)
from unsharp.enumeration import GeneratorSpec, sweep
from unsharp.errors import ParseError, PosetError
from unsharp.laws import LAWS, describe_value, report_json, run_law_suite
from unsharp.poset import Poset

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def parse_system(p: Poset, spec: str) -> frozenset:
    """``"d,e,1"`` or ``"ab,c+d"`` -> family of sets (each group is one set)."""
    out = set()
    for group in spec.split(","):
        group = group.strip()
        if not group:
            raise ParseError(f"empty group in system {spec!r}")
        out.add(p.set_of(_split_group(p, group)))
    return frozenset(out)


def _split_group(p: Poset, group: str) -> list[str]:
    if "+" in group:
        return [g.strip() for g in group.split("+")]
    if group in p.names:
        return [group]
    labels = sorted(p.names, key=len, reverse=True)
    out, i = [], 0
    while i < len(group):
        for lbl in labels:
            if group.startswith(lbl, i):
                out.append(lbl)
                i += len(lbl)
                break
        else:
            raise ParseError(f"cannot split {group!r} into element labels")
    return out


def _emit(args, lines: Sequence[dict], human: str) -> None:
    if args.json:
        for obj in lines:
            print(json.dumps(obj, ensure_ascii=False))
    else:
        sys.stdout.write(human)


def cmd_validate(args) -> int:
    p = io.read(args.file)
    obj = {"check": "validate", "pass": True, "n": p.n, "bottom": p.names[p.bottom], "top": p.names[p.top]}
    _emit(args, [obj], f"valid bounded poset: {p.n} elements, bottom {p.names[p.bottom]}, top {p.names[p.top]}\n")
    return EXIT_OK


def cmd_table(args) -> int:
    p = io.read(args.file)
    if args.op == "neg":
        tables = [operator_table(p, "neg"), operator_table(p, "negneg")]
        human = io.render_unary(tables)
    else:
        tables = [operator_table(p, args.op)]
        human = io.render_binary(tables[0])
    objs = [{"op": t.op, "entries": describe_value(p, t.entries)} for t in tables]
    _emit(args, objs, human)
    return EXIT_OK


def _law_line(p: Poset, rep) -> str:
    lw = LAWS[rep.law]
    tag = "PASS" if rep.passed else "FAIL"
    note = "" if lw.holds else " (must-fail probe)"
    line = f"{tag} {rep.law}{note}: {lw.title}\n"
    for w in report_json(p, rep).get("witness", []):
        line += f"    at ({', '.join(w['args'])}): {w['lhs']} vs {w['rhs']}\n"
    return line


def cmd_laws(args) -> int:
    p = io.read(args.file)
    suite = args.suite.split(",") if args.suite else None
    try:
        reports = run_law_suite(p, suite, subset_budget=args.subset_budget, max_witnesses=args.max_witnesses)
    except KeyError as exc:
        raise ParseError(exc.args[0]) from None
    human = "".join(_law_line(p, r) for r in reports)
    _emit(args, [report_json(p, r) for r in reports], human)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_ds_verify(args) -> int:
    p = io.read(args.file)
    D = parse_system(p, args.system)
    verdict = verify_deductive_system(p, D)
    witness = [
        {"condition": v.condition, "args": [p.names[i] for i in v.witness], "missing": p.fmt(v.missing)}
        for v in verdict.violations
    ]
    obj = {"law": "deductive-system", "pass": verdict.ok}
    if witness:
        obj["witness"] = witness
    human = f"deductive system: {'yes' if verdict.ok else 'no'}\n"
    for w in witness:
        human += f"    condition ({w['condition']}) fails at ({', '.join(w['args'])}): {w['missing']} not in D\n"
    _emit(args, [obj], human)
    return EXIT_OK if verdict.ok else EXIT_FAIL


def _fmt_family(p: Poset, D) -> list[str]:
    return [p.fmt(m) for m in sorted(D, key=set_key)]


def cmd_ds_search(args) -> int:
    p = io.read(args.file)
    universe = relevant_universe(p, args.depth)
    found = search_deductive_systems(p, universe, args.limit, max_universe=args.max_universe)
    objs = [{"system": _fmt_family(p, D)} for D in found]
    human = f"universe: {len(universe)} sets; deductive systems found: {len(found)}\n"
    human += "".join("  {" + ", ".join(_fmt_family(p, D)) + "}\n" for D in found)
    _emit(args, objs, human)
    return EXIT_OK


def cmd_theta(args) -> int:
    p = io.read(args.file)
    D = parse_system(p, args.system)
    verdict = verify_deductive_system(p, D)
    if not verdict.ok:
        obj = {"law": "deductive-system", "pass": False}
        _emit(args, [obj], "deductive system: no\n")
        return EXIT_FAIL
    rel = induced_relation(p, D, universe=relevant_universe(p, 1))
    classes = [p.fmt(sum(1 << x for x in blk)) for blk in theta_classes(p, rel)]
    reports = check_theta_theorem(p, D)
    objs = [{"classes": classes}] + [report_json(p, r) for r in reports]
    human = "Θ(D) ∩ P² classes: " + " | ".join(classes) + "\n"
    human += "".join(f"{'PASS' if r.passed else 'FAIL'} {r.law}\n" for r in reports)
    _emit(args, objs, human)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_sweep(args) -> int:
    if args.all is not None:
        spec = GeneratorSpec("all", args.all)
    else:
        spec = GeneratorSpec("random", args.random, seeds=args.seeds, prob=args.prob, first_seed=args.first_seed)
    laws = args.laws.split(",") if args.laws else None
    try:
        rep = sweep(spec, laws, subset_budget=args.subset_budget, workers=args.workers)
    except KeyError as exc:
        raise ParseError(exc.args[0]) from None
    objs = [{"posets": rep.posets_checked, "laws": rep.laws, "failures": len(rep.failures)}]
    human = f"posets checked: {rep.posets_checked}; laws: {len(rep.laws)}; failures: {len(rep.failures)}\n"
    for doc, r in rep.failures:
        p = io.parse(doc)
        obj = report_json(p, r)
        obj["poset"] = json.loads(doc)
        objs.append(obj)
        human += f"FAIL {r.law} on {doc}\n"
    _emit(args, objs, human)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_export_dot(args) -> int:
    p = io.read(args.file)
    sys.stdout.write(io.to_dot(p))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unsharp", description="Unsharp connectives on finite bounded posets.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help, file=True, json_flag=True):
        sp = sub.add_parser(name, help=help)
        if file:
            sp.add_argument("file")
        if json_flag:
            sp.add_argument("--json", action="store_true", help="JSON lines instead of tables")
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "validate a poset document")
    sp = add("table", cmd_table, "print an operator table")
    sp.add_argument("--op", choices=["neg", "imp", "conj"], required=True)
    sp = add("laws", cmd_laws, "check laws on a poset")
    sp.add_argument("--suite", help="comma-separated law ids or groups (default: all laws that must hold)")
    sp.add_argument("--subset-budget", type=int, default=256)
    sp.add_argument("--max-witnesses", type=int, default=10)

    ds = sub.add_parser("ds", help="deductive systems")
    ds_sub = ds.add_subparsers(dest="ds_command", required=True, parser_class=_Parser)
    sp = ds_sub.add_parser("verify", help="check whether a family is a deductive system")
    sp.add_argument("file")
    sp.add_argument("--system", required=True, help="e.g. d,e,1 or ab+c,1")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_ds_verify)
    sp = ds_sub.add_parser("search", help="enumerate deductive systems in the relevant universe")
    sp.add_argument("file")
    sp.add_argument("--depth", type=int, default=2)
    sp.add_argument("--limit", type=int)
    sp.add_argument("--max-universe", type=int, default=20)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_ds_search)

    sp = add("theta", cmd_theta, "induced relation of a deductive system")
    sp.add_argument("--system", required=True)

    sp = add("sweep", cmd_sweep, "check laws on generated posets", file=False)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--all", type=int, metavar="N", help="every labeled bounded poset on N points")
    g.add_argument("--random", type=int, metavar="N", help="random bounded posets on N points")
    sp.add_argument("--seeds", type=int, default=100)
    sp.add_argument("--first-seed", type=int, default=0)
    sp.add_argument("--prob", type=float, default=0.3)
    sp.add_argument("--laws", help="comma-separated law ids or groups")
    sp.add_argument("--subset-budget", type=int, default=256)
    sp.add_argument("--workers", type=int, default=1)

    add("export-dot", cmd_export_dot, "write the Hasse diagram as DOT", json_flag=False)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (PosetError, OSError) as exc:
        print(f"unsharp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
