"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 construction precondition failed,
4 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Any

from . import constructions as cons
from . import core, search
from .core import GraphParams, KneserError
from .geodesy import (
    TABLE_LIMIT, DistanceOracle, VertexSet, bfs_distances, hull_closure, is_geodetic_set,
    is_hull_set, iterated_interval,
)

SCHEMA_VERSION = "1"
EXIT_INPUT, EXIT_PRECONDITION, EXIT_BUDGET = 2, 3, 4


class CommandFailed(Exception):
    def __init__(self, code: int, message: str, result: Any = None) -> None:
        super().__init__(message)
        self.code = code
        self.result = result


def _params(args: argparse.Namespace) -> GraphParams:
    if args.n is None or args.k is None:
        raise KneserError("--n and --k are required")
    return GraphParams(args.n, args.k)


def _checking_oracle(params: GraphParams) -> DistanceOracle:
    if params.vertex_count <= TABLE_LIMIT:
        return DistanceOracle.bfs(params)
    return DistanceOracle.formula(params)


def _texts(oracle: DistanceOracle, w: VertexSet) -> list[str]:
    return [v.text() for v in oracle.vertices_of(w)]


def cmd_info(args: argparse.Namespace) -> dict:
    p = _params(args)
    lo, hi = core.diametral_bounds(p)
    out = {
        "label": p.label(),
        "vertex_count": p.vertex_count,
        "degree": p.degree,
        "diameter": core.diameter(p),
        "diametral_bounds": [lo, hi],
        "h_function": core.h_function(p),
        "gn_upper_bound": cons.gn_upper_bound(p),
    }
    if p.diameter_two:
        out["gn_diam2"] = cons.gn_diam2(p)
        out["ghn_diam2"] = cons.ghn_diam2(p)
    return out


def cmd_dist(args: argparse.Namespace) -> dict:
    p = _params(args)
    u, v = core.parse_vertex(p, args.u), core.parse_vertex(p, args.v)
    s = core.intersection_size(u, v)
    if args.oracle == "bfs":
        d = int(bfs_distances(p, core.rank(p, u))[core.rank(p, v)])
    else:
        d = core.distance(p, u, v)
    return {
        "u": u.text(),
        "v": v.text(),
        "oracle": args.oracle,
        "s": s,
        "distance": d,
        "diametral": u != v and core.is_diametral_pair(p, u, v),
        "parity_class": core.classify_intersection(p, s).value,
    }


def cmd_diametral(args: argparse.Namespace) -> dict:
    p = _params(args)
    u = core.parse_vertex(p, args.u)
    lo, hi = core.diametral_bounds(p)
    out: dict = {"u": u.text(), "diameter": core.diameter(p), "diametral_bounds": [lo, hi]}
    if args.v is not None:
        v = core.parse_vertex(p, args.v)
        out["v"] = v.text()
        out["diametral"] = u != v and core.is_diametral_pair(p, u, v)
        return out
    oracle = DistanceOracle.formula(p)
    opposed = cons.diametrically_opposed_set(oracle, core.rank(p, u))
    out["count"] = len(opposed)
    out["vertices"] = _texts(oracle, opposed)
    return out


def cmd_interval(args: argparse.Namespace) -> dict:
    p = _params(args)
    if not args.set:
        raise KneserError("at least one --set vertex is required")
    oracle = DistanceOracle(p, args.oracle)
    w = oracle.set_of(core.parse_vertex(p, t) for t in args.set)
    out: dict = {"input": _texts(oracle, w)}
    if args.iterate == "hull":
        closure, steps = hull_closure(oracle, w)
        out.update(iterate="hull", steps=steps, size=len(closure), vertices=_texts(oracle, closure))
        return out
    try:
        t = int(args.iterate)
    except ValueError:
        raise KneserError(f"--iterate must be an integer or 'hull', got {args.iterate!r}") from None
    if t < 0:
        raise KneserError("--iterate must be non-negative")
    result = iterated_interval(oracle, w, t)
    out.update(iterate=t, size=len(result), vertices=_texts(oracle, result))
    return out


def cmd_construct(args: argparse.Namespace) -> dict:
    p = _params(args)
    checker = _checking_oracle(p)
    try:
        if args.kind == "theorem3":
            root = core.parse_vertex(p, args.root) if args.root else core.unrank(p, 0)
            w = cons.geodetic_set_theorem3(checker, core.rank(p, root))
            verified = is_geodetic_set(checker, w)
            extra = {"root": root.text(), "gn_upper_bound": cons.gn_upper_bound(p)}
        elif args.kind == "theorem5":
            w = cons.geodetic_set_diam2(p, args.pivot)
            verified = is_geodetic_set(checker, w)
            extra = {"pivot": args.pivot, "gn_diam2": cons.gn_diam2(p)}
        elif args.kind == "lemma6":
            w = checker.set_of(cons.hull_triple_lemma6(p))
            verified = is_hull_set(checker, w)
            extra = {"ghn_diam2": cons.ghn_diam2(p)}
        else:
            w = checker.set_of(cons.hull_pair(p))
            verified = is_hull_set(checker, w)
            extra = {"ghn_diam2": cons.ghn_diam2(p)}
    except cons.PivotOutOfRange as exc:
        raise KneserError(str(exc)) from None
    except cons.ConstructionError as exc:
        raise CommandFailed(EXIT_PRECONDITION, str(exc)) from None
    return {"kind": args.kind, **extra, "size": len(w), "vertices": _texts(checker, w),
            "verified": verified, "oracle": checker.mode}


def cmd_search(args: argparse.Namespace) -> dict:
    p = _params(args)
    budget = search.SearchBudget(args.max_subset_size, args.max_candidates, args.time_limit)
    run = search.min_geodetic_set if args.quantity == "gn" else search.min_hull_set
    try:
        report = run(p, budget)
    except search.BudgetExceeded as exc:
        raise CommandFailed(EXIT_BUDGET, str(exc), exc.report.to_dict(args.timings)) from None
    return report.to_dict(args.timings)


def cmd_verify(args: argparse.Namespace) -> dict:
    targets = search.TARGETS if args.target == "all" else (args.target,)
    reports = []
    for target in targets:
        reports += search.sweep_verify(target, args.max_vertices, args.threads,
                                       args.include_degenerate)
    checked = [r for r in reports if r.status != "outside_hypotheses"]
    return {
        "target": args.target,
        "max_vertices": args.max_vertices,
        "all_agree": all(r.agrees_with_paper for r in checked),
        "count": len(reports),
        "reports": [r.to_dict(args.timings) for r in reports],
    }


def export_graph(params: GraphParams, fmt: str) -> Any:
    vertices = core.all_vertices(params)
    edges = [(i, j) for i, u in enumerate(vertices) for j in range(i + 1, len(vertices))
             if core.is_adjacent(u, vertices[j])]
    if fmt == "json":
        return {"params": params.to_dict(), "vertices": [v.text() for v in vertices],
                "edges": [list(e) for e in edges]}
    if fmt == "edgelist":
        return "".join(f"{vertices[i].text()} {vertices[j].text()}\n" for i, j in edges)
    lines = [f'graph "{params.label()}" {{']
    lines += [f'  v{i} [label="{v.text()}"];' for i, v in enumerate(vertices)]
    lines += [f"  v{i} -- v{j};" for i, j in edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export(args: argparse.Namespace) -> dict:
    p = _params(args)
    return {"format": args.format, "content": export_graph(p, args.format)}


COMMANDS = {
    "info": cmd_info,
    "dist": cmd_dist,
    "diametral": cmd_diametral,
    "interval": cmd_interval,
    "construct": cmd_construct,
    "search": cmd_search,
    "verify": cmd_verify,
    "export": cmd_export,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="subset size")
    common.add_argument("--k", type=int, help="ground-set slack; the graph is K(2n+k, n)")
    common.add_argument("--json", action="store_true", help="emit a JSON envelope")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--seed", type=int, default=None, help="reserved; all algorithms are deterministic")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings in output")

    parser = _Parser(prog="kneser-geo", description="Geodetic convexity on Kneser graphs K(2n+k, n).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("info", parents=[common], help="basic parameters of K(2n+k, n)")

    p = sub.add_parser("dist", parents=[common], help="distance between two vertices")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--oracle", choices=DistanceOracle.MODES, default="formula")

    p = sub.add_parser("diametral", parents=[common], help="diametral test or diametral set of a vertex")
    p.add_argument("--u", required=True)
    p.add_argument("--v")

    p = sub.add_parser("interval", parents=[common], help="iterated geodetic interval or hull")
    p.add_argument("--set", action="append", default=[], help="one vertex, repeatable")
    p.add_argument("--iterate", default="1", help="number of rounds, or 'hull'")
    p.add_argument("--oracle", choices=DistanceOracle.MODES, default="formula")

    p = sub.add_parser("construct", parents=[common], help="explicit geodetic or hull set")
    p.add_argument("--kind", choices=("theorem3", "theorem5", "lemma6", "pair"), required=True)
    p.add_argument("--root", help="root vertex for theorem3 (default 1,...,n)")
    p.add_argument("--pivot", type=int, default=1, help="pivot element for theorem5")

    p = sub.add_parser("search", parents=[common], help="exact gn or ghn by exhaustive search")
    p.add_argument("--quantity", choices=("gn", "ghn"), required=True)
    defaults = search.SearchBudget()
    p.add_argument("--max-subset-size", type=int, default=defaults.max_subset_size)
    p.add_argument("--max-candidates", type=int, default=defaults.max_candidates)
    p.add_argument("--time-limit", type=float, default=defaults.time_limit)

    p = sub.add_parser("verify", parents=[common], help="sweep a theorem over all small graphs")
    p.add_argument("--target", choices=search.TARGETS + ("all",), required=True)
    p.add_argument("--max-vertices", type=int, default=500)
    p.add_argument("--include-degenerate", action="store_true",
                   help="also list the complete graphs K(k+2, 1)")

    p = sub.add_parser("export", parents=[common], help="write the whole graph")
    p.add_argument("--format", choices=("dot", "edgelist", "json"), required=True)
    return parser


def _envelope(args: argparse.Namespace, result: Any, elapsed: float) -> dict:
    params = None
    if args.n is not None and args.k is not None and args.command != "verify":
        params = GraphParams(args.n, args.k).to_dict()
    return {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "params": params,
        "result": result,
        "elapsed_ms": int(elapsed * 1000) if args.timings else None,
    }


def _human(result: dict) -> str:
    lines = []
    for key, value in result.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            for item in value:
                lines.append("  " + _report_line(item))
        elif isinstance(value, dict):
            lines.append(f"{key}: {json.dumps(value)}")
        elif isinstance(value, list):
            lines.append(f"{key}: " + " ".join(f"{{{x}}}" if isinstance(x, str) else str(x) for x in value))
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def _report_line(r: dict) -> str:
    p = r.get("params")
    label = f"K({p['ground']},{p['n']})" if p else "-"
    mark = "ok " if r.get("agrees_with_paper") else ("-- " if r.get("status") == "outside_hypotheses" else "BAD")
    text = f"{mark} {label:<8} {r.get('quantity')} value={r.get('value')}"
    if r.get("discrepancy_note"):
        text += f"  note: {r['discrepancy_note']}"
    return text


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.monotonic()
    code, result = 0, None
    try:
        result = COMMANDS[args.command](args)
    except CommandFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        code, result = exc.code, exc.result
    except (KneserError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if result is None:
        return code
    if args.json:
        envelope = _envelope(args, result, time.monotonic() - t0)
        sys.stdout.write(json.dumps(envelope, indent=2) + "\n")
    elif args.command == "export":
        content = result["content"]
        sys.stdout.write(content if isinstance(content, str) else json.dumps(content, indent=2) + "\n")
    else:
        sys.stdout.write(_human(result))
    return code


if __name__ == "__main__":
    sys.exit(main())
