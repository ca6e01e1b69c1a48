"""Genus of the trace of a vertex while the base edge is pinned.

The extended graph adds the edges {i,k} and {j,k}. While it is not globally
rigid, the graph is reduced by a simplification of the first kind (collapse a
rigid piece hanging off a separation pair to a single edge) or of the second
kind (keep only the support of the rigidity circuit). Once the extended graph
is globally rigid, the trace genus equals the configuration curve genus.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .graph import (
    Graph,
    PreconditionError,
    _norm,
    is_connected,
    is_globally_rigid,
    is_rigid,
    pebble_rank,
    is_3_connected,
    unique_rigidity_circuit,
    validate_one_dof,
    OneDofError,
)
from .seed import SeedConfig
from .traversal import GenusReport, compute_genus


class TraceKind(enum.Enum):
    FINITE = "finite"
    CIRCLE = "circle"
    CURVE = "curve"


class SimplificationError(RuntimeError):
    kind = "InternalConsistency"


@dataclass(frozen=True)
class TraceProblem:
    graph: Graph
    i: int  # 0-based; {i, j} is the base edge
    j: int
    k: int

    def __post_init__(self):
        if _norm(self.i, self.j) != self.graph.base:
            raise PreconditionError("the fixed edge must be the base edge")
        if self.k in (self.i, self.j):
            raise PreconditionError("tracing vertex must differ from the fixed edge's endpoints")
        if not 0 <= self.k < self.graph.vertex_count:
            raise PreconditionError("tracing vertex out of range")

    @classmethod
    def from_one_based(cls, graph: Graph, k: int) -> "TraceProblem":
        i, j = graph.base
        return cls(graph, i, j, k - 1)


@dataclass(frozen=True)
class Simplification:
    kind: str  # "first" | "second"
    description: str
    graph: Graph
    problem: TraceProblem
    vertex_map: dict = field(compare=False)  # old 0-based vertex -> new


@dataclass
class TraceReport:
    kind: TraceKind
    genus: int | None
    steps: list
    problem: TraceProblem
    genus_report: GenusReport | None = None


def _triangle_edges(tp: TraceProblem) -> list:
    return [_norm(tp.i, tp.k), _norm(tp.j, tp.k)]


def extended_graph(tp: TraceProblem) -> Graph:
    """G plus {i,k} and {j,k}, skipping an edge that is already present."""
    present = set(tp.graph.edges)
    return tp.graph.with_edges([e for e in _triangle_edges(tp) if e not in present])


def existing_triangle_edges(tp: TraceProblem) -> list:
    present = set(tp.graph.edges)
    return [e for e in _triangle_edges(tp) if e in present]


def _minus(g: Graph, e) -> Graph:
    return Graph(g.vertex_count, tuple(f for f in g.edges if f != e))


def classify_trace(tp: TraceProblem) -> TraceKind:
    ext = extended_graph(tp)
    if not is_rigid(ext):
        return TraceKind.FINITE
    if existing_triangle_edges(tp):
        return TraceKind.CIRCLE
    for e in _triangle_edges(tp):
        if not is_rigid(_minus(ext, e)):
            return TraceKind.CIRCLE
    return TraceKind.CURVE


def _restrict(tp: TraceProblem, keep, edges, kind: str, description: str) -> Simplification:
    keep = sorted(keep)
    vmap = {old: new for new, old in enumerate(keep)}
    new_edges = [(vmap[u], vmap[v]) for u, v in edges]
    base = (vmap[tp.graph.base[0]], vmap[tp.graph.base[1]])
    idx = next(t for t, e in enumerate(new_edges) if _norm(*e) == base)
    g = Graph(len(keep), tuple(new_edges), idx)
    problem = TraceProblem(g, vmap[tp.i], vmap[tp.j], vmap[tp.k])
    try:
        validate_one_dof(g)
    except OneDofError as exc:
        raise SimplificationError(f"{kind}-kind simplification is not 1-dof: {exc}") from exc
    return Simplification(kind, description, g, problem, vmap)


def _components(vertex_count, edges, removed):
    adj = {v: [] for v in range(vertex_count) if v not in removed}
    for u, v in edges:
        if u in adj and v in adj:
            adj[u].append(v)
            adj[v].append(u)
    comps, seen = [], set()
    for s in sorted(adj):
        if s in seen:
            continue
        comp, stack = {s}, [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(comp)
    return comps


def _first_kind(tp: TraceProblem, ext: Graph):
    g = tp.graph
    best = None
    for u in range(g.vertex_count):
        for v in range(u + 1, g.vertex_count):
            if is_connected(ext.vertex_count, ext.edges, (u, v)):
                continue
            outer = {tp.i, tp.j, tp.k} - {u, v}
            comps = _components(ext.vertex_count, ext.edges, {u, v})
            side1 = next(c for c in comps if c & outer)
            inner = set(range(g.vertex_count)) - side1
            h_edges = [e for e in g.edges if e[0] in inner and e[1] in inner]
            if not _rigid_on(inner, h_edges):
                continue
            if best is None or len(inner) > len(best[1]):
                best = ((u, v), inner)
    if best is None:
        return None
    (u, v), inner = best
    keep = (set(range(g.vertex_count)) - inner) | {u, v}
    edges = [e for e in g.edges if e[0] in keep and e[1] in keep and e != (u, v)] + [(u, v)]
    removed = len(inner) - 2
    desc = (f"replace rigid subgraph on {removed + 2} vertices attached at "
            f"{{{u + 1}, {v + 1}}} by the edge {{{u + 1}, {v + 1}}}")
    return _restrict(tp, keep, edges, "first", desc)


def _rigid_on(vertices, edges) -> bool:
    vmap = {x: t for t, x in enumerate(sorted(vertices))}
    return pebble_rank([(vmap[a], vmap[b]) for a, b in edges], len(vmap)) == 2 * len(vmap) - 3


def simplify_once(tp: TraceProblem) -> Simplification:
    """One simplification step, following the constructive case split."""
    ext = extended_graph(tp)
    if not is_rigid(ext):
        raise PreconditionError("trace is finite; nothing to simplify")
    if is_globally_rigid(ext):
        raise PreconditionError("extended graph is already globally rigid")
    if not is_3_connected(ext):
        s = _first_kind(tp, ext)
        if s is not None:
            return s
    present = existing_triangle_edges(tp)
    if present:
        keep = {tp.i, tp.j, tp.k}
        edges = [e for e in tp.graph.edges if e[0] in keep and e[1] in keep]
        return _restrict(tp, keep, edges, "second", "trace is a circle: keep the triangle vertices")
    if classify_trace(tp) is TraceKind.CIRCLE:
        raise PreconditionError("trace is a circle; no reduction is constructed for this case")
    circuit = unique_rigidity_circuit(ext)
    triangle = set(_triangle_edges(tp))
    if not triangle <= circuit:
        raise SimplificationError("rigidity circuit misses a triangle edge")
    edges = [e for e in tp.graph.edges if e in circuit]
    keep = {x for e in edges for x in e}
    desc = f"keep the rigidity circuit support on {len(keep)} vertices minus the triangle edges"
    return _restrict(tp, keep, edges, "second", desc)


def trace_genus(tp: TraceProblem, cfg: SeedConfig | None = None) -> TraceReport:
    steps = []
    while True:
        kind = classify_trace(tp)
        if kind is TraceKind.FINITE:
            return TraceReport(kind, None, steps, tp)
        if kind is TraceKind.CIRCLE:
            return TraceReport(kind, 0, steps, tp)
        if is_globally_rigid(extended_graph(tp)):
            report = compute_genus(tp.graph, cfg)
            return TraceReport(kind, report.genus, steps, tp, report)
        step = simplify_once(tp)
        steps.append(step)
        tp = step.problem
