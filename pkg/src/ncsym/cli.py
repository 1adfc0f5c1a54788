"""Command-line front end.

Commands: expand, convert, classify, verify, basis, info.  Every command has
a human-readable text mode and a --json mode; '-' as a file argument reads
standard input.  Exit codes: 0 success, 1 verification failures, 2 parse or
domain errors, 3 resource limits.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from .chromatic import (
    chromatic_symmetric_function,
    classify_e_positivity,
    x_sign_report,
)
from .chromatic_bases import build_basis, builtin_strategy, transition_matrix_json
from .elements import (
    BASES,
    convert,
    element_from_json_dict,
    element_to_json_dict,
)
from .errors import DomainError, GraphParseError, ResourceLimitError
from .graphs import (
    components_partition,
    format_graph,
    is_clique_union,
    is_tree,
    parse_graph,
)
from .verification import SUITES, run_suite

METHODS = ("subset", "mobius", "delcon", "definition", "auto")
_STRATEGY_FLAG = {"path": "path_per_block", "clique": "clique_per_block"}


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _emit(payload: dict, as_json: bool, render) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        render(payload)


def _element_payload(f) -> dict:
    return element_to_json_dict(f)


def _render_element(payload: dict) -> None:
    terms = payload["terms"]
    if not terms:
        print("0")
        return
    chunks = []
    for term in terms:
        coeff = Fraction(term["num"], term["den"])
        lead = "-" if coeff < 0 else ("+" if chunks else "")
        value = abs(coeff)
        body = f"{payload['basis']}{{{term['partition']}}}"
        piece = body if value == 1 else f"{value}*{body}"
        chunks.append(f"{lead}{piece}" if not chunks else f"{lead} {piece}")
    print(" ".join(chunks))


def _cmd_expand(args: argparse.Namespace) -> int:
    graph = parse_graph(_read_input(args.graph))
    value = chromatic_symmetric_function(graph, method=args.method)
    value = convert(value, args.basis)
    _emit(_element_payload(value), args.json, _render_element)
    return 0


def _cmd_convert(args: argparse.Namespace) -> int:
    data = json.loads(_read_input(args.expr))
    if not isinstance(data, dict):
        raise DomainError("expression file must hold a JSON object")
    f = element_from_json_dict(data)
    if f.basis != args.from_basis:
        raise DomainError(
            f"expression is in basis {f.basis!r}, not {args.from_basis!r}")
    _emit(_element_payload(convert(f, args.to_basis)), args.json, _render_element)
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    graph = parse_graph(_read_input(args.graph))
    epos = classify_e_positivity(graph)
    xsign = x_sign_report(graph)
    payload = {"e_positivity": epos.to_json_dict(),
               "x_sign": xsign.to_json_dict()}

    def render(data: dict) -> None:
        ep = data["e_positivity"]
        print(f"verdict: {ep['verdict']}")
        print(f"clique union: {ep['is_clique_union']}")
        top = ep["top_coefficient"]
        print(f"top e coefficient: {Fraction(top['num'], top['den'])}")
        witness = ep["negative_witness"]
        if witness is not None:
            coeff = Fraction(witness["num"], witness["den"])
            print(f"negative witness: [{witness['partition']}] = {coeff}")
        xs = data["x_sign"]
        print(f"x sign: (-1)^(n-k) = {xs['sign']} with n={xs['n']}, "
              f"k={xs['component_count']}; signed expansion x-positive: "
              f"{xs['z_is_x_positive']}")

    _emit(payload, args.json, render)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    result = run_suite(args.suite, args.n, seed=args.seed, workers=args.workers)
    payload = result.to_json_dict()

    def render(data: dict) -> None:
        print(f"suite {data['suite']} at n={data['n']}: "
              f"{data['passed']}/{data['total']} passed")
        for failure in data["failures"]:
            print(f"FAIL {failure['instance']}")
            print(f"  expected: {failure['expected']}")
            print(f"  actual:   {failure['actual']}")

    _emit(payload, args.json, render)
    return 0 if result.ok else 1


def _cmd_basis(args: argparse.Namespace) -> int:
    strategy = builtin_strategy(_STRATEGY_FLAG[args.strategy])
    basis = build_basis(args.n, strategy)
    payload = transition_matrix_json(basis)
    payload["generators"] = [
        {"partition": pi.to_text(), "graph": format_graph(basis.graphs[i])}
        for i, pi in enumerate(basis.order)]

    def render(data: dict) -> None:
        print(f"chromatic basis n={data['n']} strategy={data['strategy']}")
        for entry in data["generators"]:
            graph_line = entry["graph"].replace("\n", "; ").strip("; ")
            print(f"  {entry['partition']}: {graph_line}")
        print("transition rows (basis element -> p coordinates):")
        for label, row in zip(data["order"], data["matrix"]):
            cells = []
            for header, cell in zip(data["order"], row):
                value = Fraction(cell["num"], cell["den"])
                if value:
                    cells.append(f"{header}:{value}")
            print(f"  {label}: " + (" ".join(cells) if cells else "0"))

    _emit(payload, args.json, render)
    return 0


def _cmd_info(args: argparse.Namespace) -> int:
    graph = parse_graph(_read_input(args.graph))
    comp = components_partition(graph)
    payload = {
        "n": graph.n,
        "edge_count": len(graph.edges),
        "edges": [[u, v] for u, v in graph.edges],
        "components": comp.to_text(),
        "component_count": len(comp.blocks),
        "is_tree": is_tree(graph),
        "is_clique_union": is_clique_union(graph),
    }

    def render(data: dict) -> None:
        print(f"vertices: {data['n']}")
        edge_text = ", ".join(f"({u},{v})" for u, v in data["edges"])
        print(f"edges ({data['edge_count']}): {edge_text if edge_text else 'none'}")
        print(f"components: {data['components']}")
        print(f"tree: {data['is_tree']}")
        print(f"clique union: {data['is_clique_union']}")

    _emit(payload, args.json, render)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncsym",
        description="Chromatic symmetric functions in noncommuting variables.")
    sub = parser.add_subparsers(dest="command", required=True)

    expand = sub.add_parser("expand", help="expand a graph's chromatic function")
    expand.add_argument("--graph", required=True,
                        help="graph file, or - for standard input")
    expand.add_argument("--basis", required=True, choices=BASES)
    expand.add_argument("--method", default="auto", choices=METHODS)
    expand.add_argument("--json", action="store_true")
    expand.set_defaults(handler=_cmd_expand)

    conv = sub.add_parser("convert", help="rewrite a serialized element")
    conv.add_argument("--expr", required=True,
                      help="element JSON file, or - for standard input")
    conv.add_argument("--from", dest="from_basis", required=True, choices=BASES)
    conv.add_argument("--to", dest="to_basis", required=True, choices=BASES)
    conv.add_argument("--json", action="store_true")
    conv.set_defaults(handler=_cmd_convert)

    classify = sub.add_parser("classify", help="positivity and sign reports")
    classify.add_argument("--graph", required=True)
    classify.add_argument("--json", action="store_true")
    classify.set_defaults(handler=_cmd_classify)

    verify = sub.add_parser("verify", help="run a property suite")
    verify.add_argument("--suite", required=True, choices=SUITES)
    verify.add_argument("--n", required=True, type=int)
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--workers", type=int, default=1)
    verify.add_argument("--json", action="store_true")
    verify.set_defaults(handler=_cmd_verify)

    basis = sub.add_parser("basis", help="build a chromatic basis")
    basis.add_argument("--n", required=True, type=int)
    basis.add_argument("--strategy", required=True, choices=sorted(_STRATEGY_FLAG))
    basis.add_argument("--json", action="store_true")
    basis.set_defaults(handler=_cmd_basis)

    info = sub.add_parser("info", help="describe a graph file")
    info.add_argument("--graph", required=True)
    info.add_argument("--json", action="store_true")
    info.set_defaults(handler=_cmd_info)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse handles --help and flag errors itself; keep the int contract
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except GraphParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON input: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
