"""Graph input parsing and the JSON curve document."""

from __future__ import annotations

import json

from .exact import fmt_q, parse_q
from .graph import Graph, GraphError, enumerate_circuits
from .traversal import BoundedEdge, GenusReport, Ray, TropicalCurve, genus
from .tropical import on_curve


class ParseError(GraphError):
    kind = "ParseError"


def _pair(tokens, where):
    if len(tokens) != 2:
        raise ParseError(f"{where}: expected two vertex labels, got {len(tokens)}")
    try:
        u, v = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise ParseError(f"{where}: vertex labels must be integers") from None
    if u < 1 or v < 1:
        raise ParseError(f"{where}: vertex labels are 1-based")
    if u == v:
        raise ParseError(f"{where}: loop at vertex {u}")
    return u, v


def _parse_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or "edges" not in obj:
        raise ParseError("JSON input needs an 'edges' field")
    edges = [_pair(list(e), f"edges[{t}]") for t, e in enumerate(obj["edges"])]
    n = obj.get("vertices", max(max(e) for e in edges) if edges else 0)
    if not isinstance(n, int):
        raise ParseError("'vertices' must be an integer")
    base = obj.get("base")
    if base is not None:
        base = _pair(list(base), "base")
    return Graph.from_one_based(n, edges, base)


def parse_graph(text: str) -> Graph:
    """Parse ``u v`` lines (optional leading ``base u v``) or a JSON object."""
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    edges, base = [], None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.replace(",", " ").split()
        if tokens[0].lower() == "base":
            if edges or base is not None:
                raise ParseError(f"line {lineno}: 'base' must be the first line")
            base = _pair(tokens[1:], f"line {lineno}")
            continue
        edges.append(_pair(tokens, f"line {lineno}"))
    if not edges:
        raise ParseError("no edges given")
    n = max(max(e) for e in edges)
    return Graph.from_one_based(n, edges, base)


def parse_inline_edges(spec: str) -> Graph:
    """``"1-2,2-3,3-4,1-4"`` or ``"1 2; 2 3"`` style inline edge lists."""
    parts = [p for p in spec.replace(";", ",").split(",") if p.strip()]
    return parse_graph("\n".join(p.replace("-", " ") for p in parts))


def graph_to_json(g: Graph) -> dict:
    return {
        "vertices": g.vertex_count,
        "edges": [list(e) for e in g.one_based_edges()],
        "base": list(g.one_based_edges()[0]),
    }


def curve_document(g: Graph, report: GenusReport) -> dict:
    curve = report.curve
    return {
        "graph": graph_to_json(g),
        "weights": [fmt_q(x) for x in report.weights],
        "vertices": [{"id": t, "coords": [fmt_q(x) for x in p]} for t, p in enumerate(curve.vertices)],
        "bounded_edges": [
            {"a": e.a, "b": e.b, "direction": list(e.direction), "length": fmt_q(e.length)}
            for e in curve.bounded_edges
        ],
        "rays": [{"vertex": r.vertex, "direction": list(r.direction)} for r in curve.rays],
        "genus": report.genus,
        "counters": {
            "restarts": report.restarts,
            "search_nodes": report.search_nodes,
            "transversality_checks": report.transversal_checks,
            "vertex_count": report.vertex_count,
            "bounded_edge_count": report.bounded_edge_count,
            "ray_count": report.ray_count,
        },
    }


def dumps_document(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_curve_document(doc) -> tuple:
    """Rebuild ``(graph, weights, curve)`` from a document or its JSON text."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    gj = doc["graph"]
    g = Graph.from_one_based(gj["vertices"], [tuple(e) for e in gj["edges"]], tuple(gj["base"]))
    w = tuple(parse_q(x) for x in doc["weights"])
    verts = [None] * len(doc["vertices"])
    for v in doc["vertices"]:
        verts[v["id"]] = tuple(parse_q(x) for x in v["coords"])
    edges = [BoundedEdge(e["a"], e["b"], tuple(e["direction"]), parse_q(e["length"])) for e in doc["bounded_edges"]]
    rays = [Ray(r["vertex"], tuple(r["direction"])) for r in doc["rays"]]
    return g, w, TropicalCurve(verts, edges, rays, doc["counters"]["transversality_checks"])


def check_document(doc, circuits=None) -> list:
    """Re-verify a curve document; returns a list of problems (empty if sound)."""
    g, w, curve = load_curve_document(doc)
    if isinstance(doc, str):
        doc = json.loads(doc)
    circuits = circuits if circuits is not None else enumerate_circuits(g)
    problems = []
    for t, p in enumerate(curve.vertices):
        if not on_curve(p, circuits, w):
            problems.append(f"vertex {t} is not on the curve")
    for e in curve.bounded_edges:
        a, b = curve.vertices[e.a], curve.vertices[e.b]
        if tuple(x + e.length * d for x, d in zip(a, e.direction)) != b:
            problems.append(f"edge {e.a}-{e.b} endpoints disagree with its direction and length")
        mid = tuple(x + e.length * d / 2 for x, d in zip(a, e.direction))
        if not on_curve(mid, circuits, w):
            problems.append(f"midpoint of edge {e.a}-{e.b} is not on the curve")
    if genus(curve) != doc["genus"]:
        problems.append(f"genus {doc['genus']} disagrees with edges - vertices + 1 = {genus(curve)}")
    return problems
