"""Command-line front end.

Exit status: 0 on success (or a true predicate), 1 when the answer is
mathematically negative or a graph fails a precondition, 2 on malformed
input, unreadable files or bad parameters.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import casestudy
from .components import (
    TangentData,
    component_rows,
    format_table,
    irreducibility_threshold,
    is_smoothable,
    smoothness_certificate,
)
from .graph import DualGraph, InvalidGraphError, SchemaError, from_json, to_dot, to_json, validate
from .reduction import reduce, trace_to_json
from .stability import (
    StabilityParams,
    core_kind,
    is_m_stable_curve,
    is_m_stable_map,
    level,
    stability_interval,
)

OK, FALSE, BAD_INPUT = 0, 1, 2


class UsageError(Exception):
    """Bad input or parameters; maps to exit status 2."""


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> DualGraph:
    try:
        return from_json(_read(path))
    except SchemaError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _match(g: DualGraph, args) -> None:
    """Optional --n/--r/--d flags must agree with the graph."""
    for flag, actual in (("n", g.n), ("r", g.r), ("d", g.total_degree)):
        given = getattr(args, flag, None)
        if given is not None and given != actual:
            raise UsageError(f"--{flag} {given} does not match the graph ({flag}={actual})")


def _emit_graph(g: DualGraph, fmt: str, out) -> None:
    if fmt == "dot":
        out.write(to_dot(g))
    else:
        out.write(to_json(g, indent=2 if fmt == "text" else None) + "\n")


# -- subcommands -------------------------------------------------------------


def cmd_validate(args, out) -> int:
    g = _load(args.graph)
    rep = validate(g, require_degree=args.map)
    if args.format == "json":
        out.write(json.dumps({"ok": rep.ok, "violations": [list(v) for v in rep.violations]}) + "\n")
    elif args.format == "dot" and rep.ok:
        out.write(to_dot(g))
    else:
        out.write("valid\n" if rep.ok else "\n".join(rep.messages()) + "\n")
    return OK if rep.ok else FALSE


def cmd_stability(args, out) -> int:
    g = _load(args.graph)
    _match(g, args)
    g.require_valid()
    result: dict = {"core": core_kind(g), "level": level(g), "multiplicity": g.multiplicity}
    if args.curve:
        if args.m is None:
            raise UsageError("--curve needs --m")
        verdict = is_m_stable_curve(g, args.m, g.n)
    else:
        iv = stability_interval(g)
        result["interval"] = None if iv is None else [iv.low, iv.high]
        verdict = is_m_stable_map(g, StabilityParams.of(g, args.m)) if args.m is not None else None
    if verdict is not None:
        result["m"] = args.m
        result["stable"] = verdict.stable
        result["reasons"] = [{"clause": f.clause, "vertex": f.vertex, "message": f.message}
                             for f in verdict.failures]
    if args.format == "json":
        out.write(json.dumps(result) + "\n")
    else:
        out.write(f"core: {result['core']}, level {result['level']}, elliptic multiplicity {result['multiplicity']}\n")
        if "interval" in result:
            iv = stability_interval(g)
            out.write(f"stable for m in {iv}\n" if iv else "stable for no m\n")
        if verdict is not None:
            mode = "curve" if args.curve else "map"
            out.write(f"m={args.m}: {'stable' if verdict else 'unstable'} {mode}\n")
            for line in verdict.reasons():
                out.write(f"  {line}\n")
    if verdict is not None:
        return OK if verdict.stable else FALSE
    return OK if result.get("interval") is not None else FALSE


def cmd_reduce(args, out) -> int:
    g = _load(args.graph)
    _match(g, args)
    tr = reduce(g, StabilityParams.of(g, args.m))
    if args.trace:
        try:
            with open(args.trace, "w", encoding="utf-8") as fh:
                fh.write(trace_to_json(tr, indent=2) + "\n")
        except OSError as exc:
            raise UsageError(f"cannot write {args.trace}: {exc.strerror}") from None
    if args.format == "text":
        out.write(f"termination: {tr.cause}; levels {list(tr.levels)}\n")
        for s in tr.steps:
            out.write(f"  {s.kind} {','.join(s.affected)}: level {s.level_before}->{s.level_after}, "
                      f"multiplicity {s.multiplicity_before}->{s.multiplicity_after}\n")
        out.write(to_json(tr.final) + "\n")
    else:
        _emit_graph(tr.final, args.format, out)
    return OK


def cmd_components(args, out) -> int:
    params = StabilityParams(args.m, args.n, args.r, args.d)
    rows = component_rows(params)
    if args.format == "json":
        out.write(json.dumps(rows) + "\n")
    else:
        out.write(format_table(rows))
        thr = irreducibility_threshold(args.n, args.r, args.d)
        out.write(f"\nirreducible for m >= {thr}; smoothness: "
                  f"{smoothness_certificate(args.m, args.n, args.r, args.d)}\n")
    return OK


def cmd_smoothable(args, out) -> int:
    g = _load(args.graph)
    _match(g, args)
    tangents = None
    if args.tangents:
        try:
            tangents = TangentData.from_json(_read(args.tangents))
        except (json.JSONDecodeError, TypeError) as exc:
            raise UsageError(f"{args.tangents}: {exc}") from None
    ok = is_smoothable(g, tangents)
    if args.format == "json":
        out.write(json.dumps({"smoothable": ok}) + "\n")
    else:
        out.write("smoothable\n" if ok else "not smoothable\n")
    return OK if ok else FALSE


def cmd_casestudy(args, out) -> int:
    report = casestudy.plane_cubics()
    if args.format == "json":
        out.write(casestudy.report_json(report))
    else:
        out.write(casestudy.summary(report))
    return OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mstable", description="m-stable genus-one maps to projective space")
    sub = p.add_subparsers(dest="command", required=True)

    def params(sp, required=False):
        sp.add_argument("--n", type=_nonneg, required=required, help="number of marks")
        sp.add_argument("--r", type=_positive, required=required, help="target dimension")
        sp.add_argument("--d", type=_positive, required=required, help="total degree")

    sp = sub.add_parser("validate", help="check a graph file against every structural invariant")
    sp.add_argument("graph")
    sp.add_argument("--map", action="store_true", help="also require positive total degree")
    sp.add_argument("--format", choices=["text", "json", "dot"], default="text")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("stability", help="stability verdict with reason codes, and the m-interval")
    sp.add_argument("graph")
    sp.add_argument("--m", type=_nonneg)
    sp.add_argument("--curve", action="store_true", help="test the underlying pointed curve instead of the map")
    params(sp)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.set_defaults(func=cmd_stability)

    sp = sub.add_parser("reduce", help="m-stable reduction of a minimal nodal limit")
    sp.add_argument("graph")
    sp.add_argument("--m", type=_nonneg, required=True)
    params(sp)
    sp.add_argument("--trace", metavar="PATH", help="write the JSON step trace here")
    sp.add_argument("--format", choices=["json", "text", "dot"], default="json")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("components", help="irreducible components and their dimensions")
    sp.add_argument("--m", type=_nonneg, required=True)
    params(sp, required=True)
    sp.add_argument("--format", choices=["table", "json"], default="table")
    sp.set_defaults(func=cmd_components)

    sp = sub.add_parser("smoothable", help="does the map lie on the principal component")
    sp.add_argument("graph")
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--generic", action="store_true", help="general tails (the default)")
    group.add_argument("--tangents", metavar="FILE", help='JSON {"vectors": [["1", "0"], ...]}')
    params(sp)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.set_defaults(func=cmd_smoothable)

    sp = sub.add_parser("casestudy", help="plane cubics for m = 0..3")
    sp.add_argument("name", nargs="?", default="plane-cubics", choices=["plane-cubics"])
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.set_defaults(func=cmd_casestudy)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else BAD_INPUT
    try:
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"mstable: {exc}\n")
        return BAD_INPUT
    except InvalidGraphError as exc:
        err.write(f"mstable: {exc}\n")
        return FALSE
    except ValueError as exc:
        err.write(f"mstable: {exc}\n")
        return FALSE


if __name__ == "__main__":
    sys.exit(main())
