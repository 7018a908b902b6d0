"""Command-line front end.

Inputs are Gauss codes (``"1 2 1' 2'"``, signs on tails for diagrams),
paths to files holding one, or the shorthands ``alpha:p,q`` and
``perm:(123)(4)(576)``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .based_matrix import BasedMatrix, from_open_string, from_string
from .filling import DEFAULT_MAX_SIZE, FillingSizeError, cobordant_matrices, is_hyperbolic, sigma
from .homotopy import Caps, bfs_equal, classify_rank, is_ribbon
from .lie import comodule_rho, cobracket, iterated_cobracket
from .polynomial import IntPoly
from .skein import knot_covering, nabla, nabla_ut
from .slicing import lagrangian_scan, slice_obstruction
from .strings import (
    ArrowDiagram,
    OpenString,
    ParseError,
    VirtualString,
    family_perm,
    family_pq,
    parse,
    parse_diagram,
    parse_open,
    perm_from_cycles,
)
from .svg import write_svg
from .upoly import higher_u, u, u_open, realize_u

SCHEMA_VERSION = 1


class InputError(Exception):
    pass


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("VIRTSTRING_THREADS", "1")))
    except ValueError:
        return 1


def _text(arg: str) -> str:
    path = Path(arg)
    if len(arg) < 4096 and path.is_file():
        return path.read_text(encoding="utf-8").strip()
    return arg.strip()


def read_input(arg: str, open_string: bool = False):
    text = _text(arg)
    if text.startswith("alpha:"):
        try:
            p, q = (int(x) for x in text[6:].split(","))
        except ValueError:
            raise InputError(f"expected alpha:p,q, got {text!r}") from None
        if p < 1 or q < 1:
            raise InputError("alpha:p,q needs p, q >= 1")
        s = family_pq(p, q)
    elif text.startswith("perm:"):
        try:
            s = family_perm(perm_from_cycles(text[5:]))
        except ValueError as exc:
            raise InputError(f"bad permutation {text[5:]!r}: {exc}") from None
    elif any(tok.endswith(("+", "-")) for tok in text.split()):
        if open_string:
            raise InputError("signed codes describe closed diagrams")
        return parse_diagram(text)
    else:
        return parse_open(text) if open_string else parse(text)
    return OpenString(s.code) if open_string else s


def _emit(args, data: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _caps(args) -> Caps:
    return Caps(rank_slack=args.rank_cap, node_budget=args.node_budget)


def _sigma_field(t: BasedMatrix, max_size: int) -> dict:
    try:
        res = sigma(t, max_size=max_size)
    except FillingSizeError as exc:
        return {"value": "Unknown", "reason": str(exc)}
    return {"value": res.sigma, "certificate": res.certificate()}


def _hyperbolic_field(t: BasedMatrix, max_size: int):
    try:
        return is_hyperbolic(t, max_size)
    except FillingSizeError:
        return "Unknown"


def _closed_report(s: VirtualString, args) -> dict:
    t = from_string(s)
    prim = t.primitive_reduce()
    higher = {}
    for depth in range(1, args.cover_depth + 1):
        for seq in _sequences(depth, args.r_max):
            higher[",".join(map(str, seq))] = str(higher_u(s, seq))
    slice_report = slice_obstruction(s, args.cover_depth, args.r_max, args.max_filling_size).to_json()
    try:
        lag = lagrangian_scan(s, args.prime, args.lagrangian_budget, args.max_filling_size).to_json()
    except FillingSizeError as exc:
        lag = {"verdict": "Unknown", "reason": str(exc)}
    cob = cobordant_matrices(prim, BasedMatrix.trivial(), args.coeff_bound)
    return {
        "u": str(u(s)),
        "higher_u": higher,
        "rho": prim.n - 1,
        "genus": t.genus(),
        "matrix": t.to_json(),
        "primitive": prim.to_json(),
        "sigma": _sigma_field(prim, args.max_filling_size),
        "hyperbolic": _hyperbolic_field(prim, args.max_filling_size),
        "cobordant_to_trivial": cob.verdict,
        "ribbon": is_ribbon(s),
        "slice": slice_report,
        "lagrangian": lag,
    }


def _open_report(mu: OpenString, args) -> dict:
    plus, minus = u_open(mu)
    g = from_open_string(mu)
    prim = g.primitive_reduce()
    return {
        "u_plus": str(plus),
        "u_minus": str(minus),
        "rho": prim.n - 1,
        "matrix": g.to_json(),
        "primitive": prim.to_json(),
        "ribbon": is_ribbon(mu),
        "closure": _closed_report(mu.closure(), args),
    }


def _sequences(depth: int, r_max: int):
    import itertools

    return itertools.product(range(2, r_max + 1), repeat=depth)


def cmd_invariants(args) -> int:
    obj = read_input(args.input, args.open)
    start = time.perf_counter()
    if isinstance(obj, ArrowDiagram):
        obj = obj.string
    report = _open_report(obj, args) if isinstance(obj, OpenString) else _closed_report(obj, args)
    data = {
        "schema": SCHEMA_VERSION,
        "input": str(obj),
        "kind": "open" if isinstance(obj, OpenString) else "closed",
        "rank": obj.rank,
        "invariants": report,
        "caps": {
            "max_filling_size": args.max_filling_size,
            "coeff_bound": args.coeff_bound,
            "cover_depth": args.cover_depth,
            "r_max": args.r_max,
            "lagrangian_budget": args.lagrangian_budget,
            "threads": _threads(),
        },
        "seconds": round(time.perf_counter() - start, 4),
    }
    lines = [f"input: {data['input']}", f"rank: {obj.rank}"]
    for key, value in report.items():
        if isinstance(value, dict) and "b" in value:
            matrix = BasedMatrix.from_json(value)
            lines.append(f"{key}:\n{matrix.display()}")
        elif isinstance(value, dict) and "verdict" in value:
            lines.append(f"{key}: {value['verdict']}")
        elif isinstance(value, dict) and "value" in value:
            lines.append(f"{key}: {value['value']}")
        elif key == "closure":
            lines.append(f"closure u: {value['u']}")
        elif isinstance(value, dict):
            lines.extend(f"u^({k}): {v}" for k, v in value.items())
        else:
            lines.append(f"{key}: {value}")
    _emit(args, data, lines)
    return 0


def cmd_classify(args) -> int:
    res = classify_rank(args.rank, _caps(args), closed=not args.open)
    data = res.to_json()
    data["schema"] = SCHEMA_VERSION
    lines = [f"rank {args.rank}: {len(res.classes)} classes"]
    for key, members in res.classes.items():
        lines.append(f"  <{key or 'trivial'}>: {len(members)} strings")
    for pair in res.unresolved:
        lines.append(f"  unresolved: {pair}")
    _emit(args, data, lines)
    return 0


def cmd_homotopy_equal(args) -> int:
    a, b = read_input(args.first, args.open), read_input(args.second, args.open)
    if isinstance(a, ArrowDiagram) or isinstance(b, ArrowDiagram):
        raise InputError("homotopy-equal takes unsigned strings")
    res = bfs_equal(a, b, _caps(args))
    data = {"schema": SCHEMA_VERSION, "verdict": res.verdict}
    if res.verdict == "Equal":
        data.update(
            meeting=res.meeting,
            path_first=[mv.to_json() for mv in res.path_first],
            path_second=[mv.to_json() for mv in res.path_second],
            path_length=len(res.path_first) + len(res.path_second),
        )
        detail = f"meet at <{res.meeting or 'trivial'}> after {data['path_length']} moves"
    elif res.verdict == "Distinct":
        data["witness"] = res.witness
        detail = res.witness
    else:
        data["reason"] = res.reason
        detail = res.reason
    _emit(args, data, [f"{res.verdict}: {detail}"])
    return 0


def cmd_cobracket(args) -> int:
    obj = read_input(args.input, args.open)
    caps = _caps(args)
    if isinstance(obj, ArrowDiagram):
        obj = obj.string
    if isinstance(obj, OpenString):
        value = comodule_rho(obj, caps)
    else:
        value = iterated_cobracket(obj, args.iterate, caps)
    data = {"schema": SCHEMA_VERSION, "input": str(obj), "value": value.to_json()}
    _emit(args, data, [str(value)])
    return 0


def cmd_knot(args) -> int:
    d = read_input(args.file)
    if isinstance(d, VirtualString):
        d = ArrowDiagram(d, (1,) * d.rank)
    if not isinstance(d, ArrowDiagram):
        raise InputError("knot commands take a closed diagram")
    if args.cover and args.cover > 1:
        d = knot_covering(d, args.cover)
    if args.ut:
        value = nabla_ut(d)
        data = {"schema": SCHEMA_VERSION, "input": str(d), "nabla_ut": value.to_json(), "text": str(value)}
    else:
        value = nabla(d, _caps(args))
        data = {"schema": SCHEMA_VERSION, "input": str(d), "nabla": value.to_json()}
    _emit(args, data, [str(value)])
    return 0


def cmd_svg(args) -> int:
    obj = read_input(args.input, args.open)
    try:
        write_svg(obj, args.output, args.size)
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps({"schema": SCHEMA_VERSION, "output": args.output, "arrows": obj.rank}))
    return 0


def cmd_realize_u(args) -> int:
    f = IntPoly.parse(args.poly)
    s = realize_u(f)
    data = {"schema": SCHEMA_VERSION, "polynomial": str(f), "string": str(s), "rank": s.rank}
    _emit(args, data, [str(s) if s.rank else "(trivial string)"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="virtstrings", description="Invariants of virtual strings and knots.")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--rank-cap", type=int, default=2, help="extra rank allowed during search")
    search.add_argument("--node-budget", type=int, default=1500)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common], help="full invariant report")
    p.add_argument("input")
    p.add_argument("--open", action="store_true", help="read the code as an open string")
    p.add_argument("--max-filling-size", type=int, default=DEFAULT_MAX_SIZE)
    p.add_argument("--coeff-bound", type=int, default=2)
    p.add_argument("--cover-depth", type=int, default=2)
    p.add_argument("--r-max", type=int, default=3)
    p.add_argument("--lagrangian-budget", type=int, default=20000)
    p.add_argument("--prime", type=int, default=2)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("classify", parents=[common, search], help="homotopy classes of a given rank")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--open", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("homotopy-equal", parents=[common, search], help="decide homotopy of two strings")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--open", action="store_true")
    p.set_defaults(func=cmd_homotopy_equal)

    p = sub.add_parser("cobracket", parents=[common, search], help="Lie cobracket (comodule map for open strings)")
    p.add_argument("input")
    p.add_argument("--open", action="store_true")
    p.add_argument("--iterate", type=int, default=1, help="apply the cobracket repeatedly")
    p.set_defaults(func=cmd_cobracket)

    p = sub.add_parser("knot", help="arrow diagram invariants")
    knot_sub = p.add_subparsers(dest="knot_command", required=True)
    q = knot_sub.add_parser("nabla", parents=[common, search], help="skein polynomial")
    q.add_argument("file")
    q.add_argument("--ut", action="store_true", help="replace classes by u-polynomials")
    q.add_argument("--cover", type=int, default=1)
    q.set_defaults(func=cmd_knot)

    p = sub.add_parser("svg", parents=[common], help="draw a chord picture")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--open", action="store_true")
    p.add_argument("--size", type=int, default=400)
    p.set_defaults(func=cmd_svg)

    p = sub.add_parser("realize-u", parents=[common], help="a string with the given u-polynomial")
    p.add_argument("poly", help="e.g. 2t^4-4t^2")
    p.set_defaults(func=cmd_realize_u)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
