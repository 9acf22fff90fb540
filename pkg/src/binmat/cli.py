"""Command-line front end: ``binmat <command> ...``.

Every command prints ``key=value`` lines (one record per line) or, with
``--json``, a single JSON document carrying the same fields.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import families
from .connectivity import DEFAULT_CAP, classify
from .errors import CapExceeded, MatroidError, ParseError
from .io import read_bindings, read_bmat, write_bmat
from .iso import DEFAULT_GAP_CAP, has_minor
from .moves import MOVES
from .patterns import ConfigMatch, builtin, builtin_names, match, validate_match
from .suites import SUITES

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _kv(record: dict[str, Any]) -> str:
    def fmt(v: Any) -> str:
        if isinstance(v, bool):
            return "yes" if v else "no"
        if isinstance(v, (list, tuple, set, frozenset)):
            return ",".join(sorted(map(str, v))) or "-"
        s = str(v)
        return s.replace(" ", "_") if s else "-"
    return " ".join(f"{k}={fmt(v)}" for k, v in record.items())


class Output:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.records: list[dict[str, Any]] = []
        self.summary: dict[str, Any] = {}

    def record(self, **fields: Any) -> None:
        if self.as_json:
            self.records.append({k: sorted(v) if isinstance(v, (set, frozenset)) else v
                                 for k, v in fields.items()})
        else:
            print(_kv(fields))

    def done(self, **fields: Any) -> None:
        if self.as_json:
            print(json.dumps({"records": self.records, **fields}, indent=1, sort_keys=True, default=str))
        else:
            print(_kv(fields))


def _parse_params(items: Sequence[str]) -> tuple[list[int], dict[str, int]]:
    args, kwargs = [], {}
    for it in items:
        key, eq, val = it.partition("=")
        try:
            if eq:
                kwargs[key] = int(val)
            else:
                args.append(int(it))
        except ValueError:
            raise MatroidError(f"parameter {it!r} is not an integer") from None
    return args, kwargs


def _bindings_from_flags(items: Sequence[str]) -> dict[str, str]:
    out = {}
    for it in items:
        var, eq, lab = it.partition("=")
        if not eq:
            raise MatroidError(f"--bind expects variable=label, got {it!r}")
        out[var] = lab
    return out


def cmd_classify(a: argparse.Namespace, out: Output) -> int:
    M = read_bmat(a.path)
    c = classify(M, a.cap)
    for kind, seps in c.violators.items():
        for s in seps[:a.limit]:
            out.record(witness=kind, side_x=s.side_x, side_y=s.side_y, order=s.order)
    out.done(elements=len(M), rank=M.rank, tier=c.label)
    return EXIT_OK


def cmd_find(a: argparse.Namespace, out: Output) -> int:
    M = read_bmat(a.path)
    _, params = _parse_params(a.params)
    t = builtin(a.template, **params)
    ms = match(M, t, limit=a.limit, bindings=_bindings_from_flags(a.bind),
               enumerate_free=a.enumerate_free)
    for m in ms:
        out.record(template=t.name, **dict(m.assignment))
    out.done(template=t.name, matches=len(ms), reconstructed=t.figure_reconstructed)
    return EXIT_OK


def cmd_move(a: argparse.Namespace, out: Output) -> int:
    M = read_bmat(a.path)
    if a.move not in MOVES:
        raise MatroidError(f"unknown move {a.move!r}; known: {', '.join(sorted(MOVES))}")
    mover, default_template = MOVES[a.move]
    b = read_bindings(a.bindings)
    t = builtin(b.template, **b.params)
    if set(b.assignment) >= set(t.variables):
        m = ConfigMatch(t, {v: b.assignment[v] for v in t.variables})
        validate_match(M, m)
    else:
        found = match(M, t, limit=1, bindings=b.assignment)
        if not found:
            raise MatroidError(f"no {t.name} match extends the given bindings")
        m = found[0]
    N = read_bmat(a.minor) if a.minor else None
    rep = mover(M, m, N, cap=a.cap, gap_cap=a.gap_cap)
    if a.out:
        write_bmat(rep.result, a.out, comment=f"{a.move} applied to {a.path}")
    out.record(**dict(m.assignment))
    fields = dict(move=rep.move_name, deleted=rep.deleted, contracted=rep.contracted,
                  elements=len(rep.result), rank=rep.result.rank, tier=rep.result_class.label,
                  revalidated=rep.revalidate(M))
    if rep.n_minor_verdict is not None:
        fields["n_minor"] = rep.n_minor_verdict
    out.done(**fields)
    return EXIT_OK


def cmd_minor(a: argparse.Namespace, out: Output) -> int:
    M, N = read_bmat(a.path_m), read_bmat(a.path_n)
    w = has_minor(M, N, a.gap_cap)
    if w is None:
        out.done(minor="none")
        return EXIT_FAIL
    for src, dst in sorted(w.iso.mapping.items()):
        out.record(element=src, maps_to=dst)
    out.done(minor="found", deleted=w.deleted, contracted=w.contracted, empty=w.empty)
    return EXIT_OK


def cmd_gen(a: argparse.Namespace, out: Output) -> int:
    args, kwargs = _parse_params(a.params)
    M = families.generate(a.family, *args, **kwargs)
    desc = " ".join([a.family] + a.params)
    write_bmat(M, a.out, comment=desc)
    out.done(family=a.family, elements=len(M), rank=M.rank, path=a.out)
    return EXIT_OK


def cmd_check(a: argparse.Namespace, out: Output) -> int:
    names = list(SUITES) if a.suite == "all" else [a.suite]
    all_ok = True
    for name in names:
        if name not in SUITES:
            raise MatroidError(f"unknown suite {name!r}; known: {', '.join(SUITES)}, all")
        kwargs = {"seed": a.seed} if name == "lemma2.2" and a.seed is not None else {}
        res = SUITES[name](**kwargs)
        for c in sorted(res.cases, key=lambda c: c.name):
            out.record(suite=name, case=c.name, result="pass" if c.passed else "FAIL", detail=c.detail)
        all_ok &= res.passed
    out.done(suites=",".join(names), result="pass" if all_ok else "FAIL")
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_templates(a: argparse.Namespace, out: Output) -> int:
    for name in builtin_names():
        t = builtin(name)
        out.record(template=name, variables=len(t.variables), reconstructed=t.figure_reconstructed,
                   params=",".join(f"{k}={v}" for k, v in t.arity_params) or "-")
    out.done(templates=len(builtin_names()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="binmat", description="Binary matroid connectivity and configuration tools.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="element cap for exhaustive searches")
    common.add_argument("--gap-cap", type=int, default=DEFAULT_GAP_CAP, help="size-gap cap for minor searches")
    common.add_argument("--limit", type=int, default=None, help="maximum number of matches or witnesses")
    common.add_argument("--json", action="store_true", help="machine output as one JSON document")
    common.add_argument("--seed", type=int, default=None, help="seed for pooled suites")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", parents=[common], help="connectivity class of a .bmat file")
    s.add_argument("path")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("find", parents=[common], help="match a built-in template")
    s.add_argument("path")
    s.add_argument("template")
    s.add_argument("params", nargs="*", help="template parameters as name=value")
    s.add_argument("--bind", action="append", default=[], help="fix a variable: name=label")
    s.add_argument("--enumerate-free", action="store_true", help="enumerate unbound free variables")
    s.set_defaults(func=cmd_find)

    s = sub.add_parser("move", parents=[common], help="apply a move to a bound configuration")
    s.add_argument("path")
    s.add_argument("move")
    s.add_argument("bindings", help="bindings file naming the template and variable images")
    s.add_argument("--out", help="write the resulting matroid here")
    s.add_argument("--minor", help="also test for this .bmat as a minor of the result")
    s.set_defaults(func=cmd_move)

    s = sub.add_parser("minor", parents=[common], help="search for N as a minor of M")
    s.add_argument("path_m")
    s.add_argument("path_n")
    s.set_defaults(func=cmd_minor)

    s = sub.add_parser("gen", parents=[common], help="write a family member to a .bmat file")
    s.add_argument("family", choices=sorted(families.GENERATORS))
    s.add_argument("params", nargs="*", help="positional integers or name=value")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("check", parents=[common], help="run a check suite")
    s.add_argument("suite", help=f"one of {', '.join(SUITES)}, or all")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("templates", parents=[common], help="list built-in templates")
    s.set_defaults(func=cmd_templates)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    a = build_parser().parse_args(argv)
    out = Output(a.json)
    try:
        return a.func(a, out)
    except CapExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (MatroidError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
