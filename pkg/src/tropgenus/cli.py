"""Command line front end: ``tropgenus {validate,genus,curve,plot,trace-genus}``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .document import ParseError, curve_document, dumps_document, parse_graph, parse_inline_edges
from .exact import fmt_q
from .graph import Graph, GraphError, OneDofError, PreconditionError, _norm, validate_one_dof
from .plotting import ProjectionError, parse_projection, render_svg
from .seed import SeedConfig
from .trace import SimplificationError, TraceProblem, trace_genus
from .traversal import GenusComputationFailed, compute_genus

SUBCOMMANDS = ("validate", "genus", "trace-genus", "curve", "plot")

EXIT_OK = 0
EXIT_INPUT = 2  # unreadable input, parse error, bad option
EXIT_GRAPH = 3  # graph is not 1-dof or violates a precondition
EXIT_ABORT = 4  # every weight draw aborted


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    input: str | None = None
    edges: str | None = None
    seed: int = 0
    weight_bits: int = 24
    max_restarts: int = 8
    vertex_budget: int = 1_000_000
    threads: int = 1
    format: str = "text"
    project: str | None = None
    out: str | None = None
    trace: tuple | None = None  # (i, j, k), 1-based

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        for name in ("weight_bits", "max_restarts", "vertex_budget", "threads"):
            if getattr(self, name) < 1:
                raise ValueError(f"--{name.replace('_', '-')} must be positive")
        if self.seed < 0:
            raise ValueError("--seed must be non-negative")
        if self.project is not None and self.subcommand not in ("curve", "plot"):
            raise ValueError("--project only applies to curve and plot")
        if self.format not in ("text", "json"):
            raise ValueError("--format must be text or json")

    def seed_config(self) -> SeedConfig:
        return SeedConfig(
            rng_seed=self.seed,
            weight_bits=self.weight_bits,
            max_restarts=self.max_restarts,
            vertex_budget=self.vertex_budget,
            threads=self.threads,
        )


class CliError(Exception):
    def __init__(self, kind, message, code, history=None):
        super().__init__(message)
        self.kind, self.code, self.history = kind, code, history or []


def _read_graph(cfg: RunConfig) -> Graph:
    if cfg.edges:
        return parse_inline_edges(cfg.edges)
    if cfg.input is None or cfg.input == "-":
        return parse_graph(sys.stdin.read())
    with open(cfg.input) as fh:
        return parse_graph(fh.read())


def relabel_for_trace(g: Graph, i: int, j: int) -> tuple:
    """Relabel so that 1-based ``i, j`` become ``1, 2``; returns (graph, old->new map)."""
    n = g.vertex_count
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise PreconditionError("fixed edge endpoints out of range")
    order = [i - 1, j - 1] + [v for v in range(n) if v not in (i - 1, j - 1)]
    vmap = {old: new for new, old in enumerate(order)}
    edges = [(vmap[u], vmap[v]) for u, v in g.edges]
    if _norm(0, 1) not in {_norm(*e) for e in edges}:
        raise PreconditionError(f"{{{i}, {j}}} is not an edge")
    base = next(t for t, e in enumerate(edges) if _norm(*e) == (0, 1))
    return Graph(n, tuple(edges), base), vmap


def _report_json(report) -> dict:
    return {
        "genus": report.genus,
        "vertices": report.vertex_count,
        "bounded_edges": report.bounded_edge_count,
        "rays": report.ray_count,
        "restarts": report.restarts,
        "search_nodes": report.search_nodes,
        "transversality_checks": report.transversal_checks,
        "weights": [fmt_q(x) for x in report.weights],
        "attempts": report.attempts,
    }


def _report_text(report) -> str:
    return "\n".join([
        f"genus: {report.genus}",
        f"vertices: {report.vertex_count}",
        f"bounded edges: {report.bounded_edge_count}",
        f"rays: {report.ray_count}",
        f"restarts: {report.restarts}",
        f"search nodes: {report.search_nodes}",
        f"transversality checks: {report.transversal_checks}",
    ])


def _emit(text: str, out: str | None, stdout):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _genus(g, cfg):
    try:
        return compute_genus(g, cfg.seed_config())
    except GenusComputationFailed as exc:
        raise CliError("GenusComputationFailed", str(exc), EXIT_ABORT, exc.history) from exc


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    g = _read_graph(cfg)

    if cfg.subcommand == "validate":
        wit = validate_one_dof(g)
        u, v = wit.one_based()
        if cfg.format == "json":
            stdout.write(json.dumps({"one_dof": True, "witness_edge": [u, v]}) + "\n")
        else:
            stdout.write(f"1-dof: yes (adding {{{u}, {v}}} gives a minimally rigid graph)\n")
        return EXIT_OK

    if cfg.subcommand == "genus":
        report = _genus(g, cfg)
        text = (json.dumps(_report_json(report), indent=2, sort_keys=True) + "\n"
                if cfg.format == "json" else _report_text(report) + "\n")
        _emit(text, cfg.out, stdout)
        return EXIT_OK

    if cfg.subcommand == "curve":
        report = _genus(g, cfg)
        _emit(dumps_document(curve_document(g, report)), cfg.out, stdout)
        return EXIT_OK

    if cfg.subcommand == "plot":
        spec = parse_projection(cfg.project)
        report = _genus(g, cfg)
        out = cfg.out or "curve.svg"
        render_svg(report.curve, out, spec, cfg.seed, title=f"genus {report.genus}")
        stdout.write(_report_text(report) + f"\nplot: {out}\n")
        return EXIT_OK

    # trace-genus
    i, j, k = cfg.trace
    h, vmap = relabel_for_trace(g, i, j)
    if not 1 <= k <= g.vertex_count:
        raise PreconditionError("tracing vertex out of range")
    tp = TraceProblem(h, 0, 1, vmap[k - 1])
    try:
        tr = trace_genus(tp, cfg.seed_config())
    except GenusComputationFailed as exc:
        raise CliError("GenusComputationFailed", str(exc), EXIT_ABORT, exc.history) from exc
    if cfg.format == "json":
        doc = {
            "kind": tr.kind.value,
            "genus": tr.genus,
            "steps": [{"kind": s.kind, "description": s.description,
                       "edges": [list(e) for e in s.graph.one_based_edges()]} for s in tr.steps],
        }
        stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return EXIT_OK
    for t, s in enumerate(tr.steps, 1):
        stdout.write(f"step {t} ({s.kind} kind): {s.description}\n")
    if tr.genus is None:
        stdout.write("finite (the traced vertex does not move)\n")
    else:
        stdout.write(f"{tr.kind.value} (genus {tr.genus})\n")
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", help="graph file ('-' or omitted: stdin)")
    common.add_argument("--edges", help='inline edge list such as "1-2,2-3,3-4,1-4"')
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--weight-bits", type=int, default=24)
    common.add_argument("--max-restarts", type=int, default=8)
    common.add_argument("--vertex-budget", type=int, default=1_000_000)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--project", help="i,j | pca | random")
    common.add_argument("--out", help="output path")

    p = argparse.ArgumentParser(prog="tropgenus", description="Genus of 1-dof linkage configuration curves.")
    sub = p.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("validate", parents=[common], help="check that the graph is 1-dof")
    sub.add_parser("genus", parents=[common], help="genus of the configuration curve")
    sub.add_parser("curve", parents=[common], help="write the tropical curve as JSON")
    sub.add_parser("plot", parents=[common], help="write an SVG projection of the tropical curve")
    tg = sub.add_parser("trace-genus", parents=[common], help="genus of the trace of vertex k with {i,j} fixed")
    tg.add_argument("--fixed", nargs=2, type=int, metavar=("I", "J"), default=(1, 2))
    tg.add_argument("--vertex", type=int, metavar="K", default=None)
    return p


def _split_trace_args(argv):
    # "trace-genus [input] i j k": three trailing integers name the problem
    if argv and argv[0] == "trace-genus":
        plain = [t for t in argv[1:]]
        ints = []
        for t in reversed(plain):
            if t.isdigit() and len(ints) < 3:
                ints.append(int(t))
            else:
                break
        if len(ints) == 3:
            ints.reverse()
            return ["trace-genus"] + plain[: len(plain) - 3], tuple(ints)
    return argv, None


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    argv, trace = _split_trace_args(argv)
    args = _parser().parse_args(argv)
    try:
        if args.subcommand == "trace-genus" and trace is None:
            if args.vertex is None:
                raise ValueError("trace-genus needs i j k (or --fixed I J --vertex K)")
            trace = (args.fixed[0], args.fixed[1], args.vertex)
        cfg = RunConfig(
            subcommand=args.subcommand, input=args.input, edges=args.edges, seed=args.seed,
            weight_bits=args.weight_bits, max_restarts=args.max_restarts,
            vertex_budget=args.vertex_budget, threads=args.threads, format=args.format,
            project=args.project, out=args.out, trace=trace,
        )
        return run(cfg)
    except CliError as exc:
        return _fail(exc.kind, str(exc), exc.code, exc.history)
    except ParseError as exc:
        return _fail(exc.kind, str(exc), EXIT_INPUT)
    except (OneDofError, PreconditionError, SimplificationError, GraphError) as exc:
        return _fail(getattr(exc, "kind", type(exc).__name__), str(exc), EXIT_GRAPH)
    except (ParseError, ValueError, ProjectionError, OSError) as exc:
        return _fail(getattr(exc, "kind", type(exc).__name__), str(exc), EXIT_INPUT)


def _fail(kind, message, code, history=()) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message, "history": list(history)}) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
