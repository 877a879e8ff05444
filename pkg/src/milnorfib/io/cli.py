"""Command-line interface: ``milnorfib compute|resolve|h1|compare|corpus``.

Exit codes: 0 success, 1 a corpus check failed, 2 schema / input error,
3 computation error (the failing stage is printed on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from ..boundary import BoundaryGraph, alpha, build_boundary_graph, vertical_index
from ..errors import InvalidGraph, MilnorError, PipelineError, SchemaError
from ..plumbing import PlumbingGraph, equivalent, h1, isomorphic, normalize
from ..resolution import ResolutionGraph, multiplicities, resolve
from ..sigma10 import compute_boundary, image_equation
from ..newton_puiseux import expand
from .inputs import CombinatorialInput, Sigma10Input, load_input

EXIT_OK, EXIT_CHECK_FAILED, EXIT_SCHEMA, EXIT_COMPUTE = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _stage(name: str, fn):
    try:
        return fn()
    except PipelineError:
        raise
    except MilnorError as exc:
        raise PipelineError(name, exc) from exc


# -- compute -------------------------------------------------------------------


def _combinatorial_boundary(inp: CombinatorialInput) -> BoundaryGraph:
    g = inp.graph
    _stage("validate", g.validate)
    _stage("multiplicities", lambda: multiplicities(g))
    for k, claimed in inp.supplied_m.items():
        if g.m_at_attach(k) != claimed:
            raise PipelineError(
                "multiplicities",
                MilnorError(f"arrowhead {inp.arrow_ids[k]!r}: supplied m_at_attach={claimed}, computed {g.m_at_attach(k)}"),
            )
    return _stage("build", lambda: build_boundary_graph(g, inp.pairing))


def _report_sigma10(inp: Sigma10Input, res, graph: PlumbingGraph) -> str:
    g = res.resolution
    lines = [
        "mode: sigma10",
        f"d = {inp.germ.d}",
        f"image: {image_equation(inp.germ)} = 0",
        f"branches: {len(res.branches)}",
        "sigma: " + " ".join(f"{i + 1}->{k + 1}" for i, k in enumerate(res.pairing.sigma)),
        "lambda: " + " ".join(f"l{i + 1}={v}" for i, v in enumerate(res.lambdas)),
        "m_i(v(i)): " + " ".join(f"m{i + 1}={g.m_at_attach(i)}" for i in range(len(g.arrowheads))),
    ]
    for p in res.pairing.pairs:
        lines.append(f"pair {p.label}: vi={vertical_index(p)} alpha={alpha(p, g)}")
    si = res.sum_identity
    ok = "holds" if si["lhs"] == si["rhs"] else "FAILS"
    lines.append(f"sum identity: {si['lhs']} = {si['rhs']} (crosscaps C={si['crosscaps']}) {ok}")
    lines.append(f"H1: {h1(graph)}")
    return "\n".join(lines) + "\n"


def _report_combinatorial(inp: CombinatorialInput, graph: PlumbingGraph) -> str:
    g = inp.graph
    lines = [
        "mode: combinatorial",
        f"arrowheads: {len(g.arrowheads)}",
        "sigma: " + " ".join(f"{i + 1}->{k + 1}" for i, k in enumerate(inp.pairing.sigma)),
        "m_i(v(i)): " + " ".join(f"m{i + 1}={g.m_at_attach(i)}" for i in range(len(g.arrowheads))),
    ]
    for p in inp.pairing.pairs:
        vi = vertical_index(p) if p.alpha is None else "-"
        lines.append(f"pair {p.label}: vi={vi} alpha={alpha(p, g)}")
    lines.append(f"H1: {h1(graph)}")
    return "\n".join(lines) + "\n"


def cmd_compute(args) -> int:
    inp = load_input(args.input)
    if isinstance(inp, Sigma10Input):
        res = compute_boundary(inp.germ)
        boundary = res.boundary
    else:
        res = None
        boundary = _combinatorial_boundary(inp)
    graph = _stage("normalize", lambda: normalize(boundary.graph)) if args.normalize else boundary.graph
    report = _report_sigma10(inp, res, graph) if res is not None else _report_combinatorial(inp, graph)
    if args.dot:
        _write(args.dot, graph.to_dot("boundary"))
    if args.report:
        _write(args.report, report)
    if args.json:
        _write(args.json, graph.to_json())
    if not (args.json or args.report):
        _write(None, graph.to_json())
        sys.stdout.write(report)
    return EXIT_OK


def cmd_resolve(args) -> int:
    inp = load_input(args.input)
    if isinstance(inp, Sigma10Input):
        bs = _stage("expand", lambda: expand(inp.germ.d))
        g: ResolutionGraph = _stage("resolve", lambda: resolve(bs))
    else:
        g = inp.graph
        _stage("validate", g.validate)
    _stage("multiplicities", lambda: multiplicities(g))
    if args.dot:
        _write(args.dot, g.to_dot())
    _write(args.json, json.dumps(g.to_json(), indent=2) + "\n")
    return EXIT_OK


# -- graph utilities --------------------------------------------------------------


def _load_graph(path: str) -> PlumbingGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    try:
        g = PlumbingGraph.from_json(text)
    except (ValueError, InvalidGraph) as exc:
        raise SchemaError(f"{path}: {exc}") from None
    return g


def cmd_h1(args) -> int:
    g = _load_graph(args.graph)
    print(_stage("h1", lambda: h1(g)))
    return EXIT_OK


def cmd_compare(args) -> int:
    a, b = _load_graph(args.a), _load_graph(args.b)
    if _stage("compare", lambda: isomorphic(a, b)):
        print("ISOMORPHIC")
    elif args.up_to_calculus and _stage("compare", lambda: equivalent(a, b)):
        print("EQUIVALENT")
    else:
        print("DIFFERENT")
    return EXIT_OK


def cmd_corpus(args) -> int:
    from .corpus import acceptance_checks, fixture_table

    rows = [("fixture " + r.name, r) for r in fixture_table()]
    rows += [("criterion " + r.name, r) for r in acceptance_checks()]
    width = max(len(name) for name, _ in rows)
    for name, r in rows:
        print(f"{'PASS' if r.ok else 'FAIL'}  {name:<{width}}  {r.detail}")
    failed = sum(not r.ok for _, r in rows)
    print(f"{len(rows) - failed}/{len(rows)} passed")
    return EXIT_OK if not failed else EXIT_CHECK_FAILED


# -- entry point --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="milnorfib",
        description="Plumbing graphs of the boundary of the Milnor fibre for finitely determined germs (C^2,0) -> (C^3,0).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute the boundary plumbing graph from an input file")
    p.add_argument("--input", required=True, help="TOML (or .json) input document")
    p.add_argument("--normalize", action="store_true", help="simplify the graph with the plumbing calculus")
    p.add_argument("--dot", help="write Graphviz DOT to this file")
    p.add_argument("--json", help="write the graph JSON to this file")
    p.add_argument("--report", help="write the text report to this file")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("resolve", help="embedded resolution graph of the double-point curve")
    p.add_argument("--input", required=True)
    p.add_argument("--json", help="write JSON here instead of stdout")
    p.add_argument("--dot", help="write Graphviz DOT to this file")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("h1", help="first homology of a plumbed manifold given as graph JSON")
    p.add_argument("graph")
    p.set_defaults(func=cmd_h1)

    p = sub.add_parser("compare", help="compare two plumbing graphs")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--up-to-calculus", action="store_true", help="also try calculus-normalized forms")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("corpus", help="built-in verification corpus")
    p.add_argument("action", choices=["verify"])
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except PipelineError as exc:
        print(f"error: computation failed at stage '{exc.stage}': {exc.cause}", file=sys.stderr)
        return EXIT_COMPUTE
    except MilnorError as exc:
        print(f"error: computation failed at stage 'input': {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
