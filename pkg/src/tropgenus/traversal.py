"""Walking the tropical curve X ∩ Y and counting its genus.

Directions at a point are found from the coordinate blocks that must move
together; each candidate is certified by comparing slots lexicographically by
(value, slope). Travel along a feasible direction stops where some circuit
minimum would next be attained only once; crossings that keep the minimum
attained twice are passed through.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .graph import Graph, OneDofError, enumerate_circuits, validate_one_dof
from .seed import Exhausted, SeedConfig, StartPoint, find_start, random_weights
from .tropical import CONST, NotOnCurve, on_curve, transversal_at

log = logging.getLogger(__name__)


class TraversalAbort(RuntimeError):
    """A non-generic situation was detected; the caller should redraw weights."""

    kind = "Abort"


class NonTransversalVertex(TraversalAbort):
    kind = "NonTransversalVertex"


class NonTrivalentVertex(TraversalAbort):
    kind = "NonTrivalentVertex"


class VertexBudgetExceeded(TraversalAbort):
    kind = "VertexBudgetExceeded"


class DirectionBlockCap(TraversalAbort):
    kind = "DirectionBlockCap"


class InfeasibleDirection(ValueError):
    kind = "PreconditionViolation"


class GenusComputationFailed(RuntimeError):
    kind = "RestartsExhausted"

    def __init__(self, message, history):
        super().__init__(message)
        self.history = history


@dataclass(frozen=True)
class BlockPartition:
    blocks: tuple  # free blocks, each a sorted tuple of 0-based coordinates
    frozen: frozenset


@dataclass(frozen=True)
class Bounded:
    next_vertex: tuple
    step: Fraction


@dataclass(frozen=True)
class UnboundedRay:
    pass


@dataclass(frozen=True)
class BoundedEdge:
    a: int
    b: int
    direction: tuple
    length: Fraction


@dataclass(frozen=True)
class Ray:
    vertex: int
    direction: tuple


@dataclass
class TropicalCurve:
    vertices: list
    bounded_edges: list
    rays: list
    transversal_checks: int = 0
    # set when the curve has no vertex at all (a single line through `anchor`)
    anchor: tuple | None = None


@dataclass
class GenusReport:
    genus: int
    vertex_count: int
    bounded_edge_count: int
    ray_count: int
    weights: tuple
    restarts: int
    transversal_checks: int
    search_nodes: int = 0
    attempts: list = field(default_factory=list)
    curve: TropicalCurve | None = field(default=None, repr=False)
    start: StartPoint | None = field(default=None, repr=False)


def _tables(circuits):
    return [(c.coords, c.contains_base) for c in circuits]


def _q(vec) -> tuple:
    return tuple(Fraction(x) for x in vec)


def _argmins(v, w, tables):
    """Yield (side, argmin coordinate list, const_in_argmin) per circuit and side."""
    for coords, has_const in tables:
        m = 0 if has_const else None
        for c in coords:
            x = v[c]
            if m is None or x < m:
                m = x
        xs = [c for c in coords if v[c] == m]
        yield "X", xs, has_const and m == 0
        m = 0 if has_const else None
        for c in coords:
            y = w[c] - v[c]
            if m is None or y < m:
                m = y
        ys = [c for c in coords if w[c] - v[c] == m]
        yield "Y", ys, has_const and m == 0


class _UF:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _blocks(v, w, tables):
    n = len(v)
    uf = _UF(n)
    pinned = set()
    for _, tied, has_const in _argmins(v, w, tables):
        if len(tied) + has_const != 2:
            continue
        if has_const:
            pinned.add(tied[0])
        else:
            uf.union(tied[0], tied[1])
    frozen_roots = {uf.find(c) for c in pinned}
    groups: dict = {}
    frozen = set()
    for c in range(n):
        r = uf.find(c)
        if r in frozen_roots:
            frozen.add(c)
        else:
            groups.setdefault(r, []).append(c)
    blocks = tuple(tuple(groups[r]) for r in sorted(groups))
    return BlockPartition(blocks, frozenset(frozen))


def blocks_at(v, circuits, w) -> BlockPartition:
    v, w = _q(v), _q(w)
    if not on_curve(v, circuits, w):
        raise NotOnCurve("point is not on the tropical curve")
    return _blocks(v, w, _tables(circuits))


def _lex_ok(v, d, w, tables) -> bool:
    for coords, has_const in tables:
        for side in (0, 1):
            best = (0, 0) if has_const else None
            count = 1 if has_const else 0
            for c in coords:
                pair = (v[c], d[c]) if side == 0 else (w[c] - v[c], -d[c])
                if best is None or pair < best:
                    best, count = pair, 1
                elif pair == best:
                    count += 1
            if count < 2:
                return False
    return True


def direction_feasible(v, d, circuits, w) -> bool:
    """Infinitesimal check: moving from ``v`` along ``d`` keeps every minimum
    attained twice, comparing slots by (value at v, slope along d)."""
    return _lex_ok(_q(v), tuple(d), _q(w), _tables(circuits))


def _directions(v, w, tables, cap):
    part = _blocks(v, w, tables)
    k = len(part.blocks)
    if k > cap:
        raise DirectionBlockCap(f"{k} free blocks exceed the cap of {cap}")
    block_of = {}
    for b, blk in enumerate(part.blocks):
        for c in blk:
            block_of[c] = b
    # constraint: (is_x_side, size of argmin, {block: multiplicity}), checked
    # once its highest block has been decided
    by_last = [[] for _ in range(k)]
    for side, tied, has_const in _argmins(v, w, tables):
        size = len(tied) + has_const
        mult: dict = {}
        for c in tied:
            b = block_of.get(c)
            if b is not None:
                mult[b] = mult.get(b, 0) + 1
        if not mult:
            continue
        by_last[max(mult)].append((side == "X", size, mult))

    found = []
    for sign in (1, -1):
        chosen = [False] * k

        def ok(cons):
            is_x, size, mult = cons
            moving = sum(m for b, m in mult.items() if chosen[b])
            # the side whose moving slots gain slope must keep >= 2 still ones;
            # the side whose moving slots drop must move >= 2 or none
            if (is_x and sign == 1) or (not is_x and sign == -1):
                return size - moving != 1
            return moving != 1

        def rec(i):
            if i == k:
                if any(chosen):
                    d = [0] * len(v)
                    for b in range(k):
                        if chosen[b]:
                            for c in part.blocks[b]:
                                d[c] = sign
                    found.append(tuple(d))
                return
            for pick in (False, True):
                chosen[i] = pick
                if all(ok(cons) for cons in by_last[i]):
                    rec(i + 1)
            chosen[i] = False

        rec(0)
    found.sort(reverse=True)
    return found


def candidate_directions(v, circuits, w, cap: int = 25) -> list:
    """All primitive directions ±indicator(S), S a union of free blocks, along
    which the curve leaves ``v``."""
    v, w = _q(v), _q(w)
    if not on_curve(v, circuits, w):
        raise NotOnCurve("point is not on the tropical curve")
    return _directions(v, w, _tables(circuits), cap)


def _break_point(slots):
    """First lambda > 0 at which the minimum of the lines a + b*lambda stops
    being attained twice just beyond lambda, or None if it never does."""
    a, b = min(slots)
    lam = 0
    while True:
        nxt = None
        for ag, bg in slots:
            if bg < b:
                t = (ag - a) / (b - bg)
                if t > lam and (nxt is None or t < nxt):
                    nxt = t
        if nxt is None:
            return None
        # lex-minimal slots right after the crossing
        vals = [(ag + bg * nxt, bg) for ag, bg in slots]
        low = min(vals)
        if vals.count(low) < 2:
            return nxt
        lam, b = nxt, low[1]
        a = low[0] - b * nxt


def _travel(v, d, w, tables):
    best = None
    for coords, has_const in tables:
        for side in (0, 1):
            slots = [(0, 0)] if has_const else []
            if side == 0:
                slots.extend((v[c], d[c]) for c in coords)
            else:
                slots.extend((w[c] - v[c], -d[c]) for c in coords)
            lam = _break_point(slots)
            if lam is not None and (best is None or lam < best):
                best = lam
    if best is None:
        return UnboundedRay()
    return Bounded(tuple(x + best * dx for x, dx in zip(v, d)), Fraction(best))


def travel(v, d, circuits, w):
    """Move from ``v`` along ``d`` to the next vertex, or report a ray."""
    tables = _tables(circuits)
    v, w, d = _q(v), _q(w), tuple(d)
    if not _lex_ok(v, d, w, tables):
        raise InfeasibleDirection(f"direction {d} is not feasible at {v}")
    return _travel(v, d, w, tables)


def _expand(v, w, tables, cap):
    dirs = _directions(v, w, tables, cap)
    return dirs, [_travel(v, d, w, tables) for d in dirs]


_worker_state: dict = {}


def _worker_init(w, tables, cap):
    _worker_state.update(w=w, tables=tables, cap=cap)


def _worker_expand(v):
    s = _worker_state
    return _expand(v, s["w"], s["tables"], s["cap"])


def traverse(start: StartPoint, circuits, w, cfg: SeedConfig | None = None) -> TropicalCurve:
    """Breadth-first walk over the connected component through ``start``."""
    cfg = cfg or SeedConfig()
    w = _q(w)
    tables = _tables(circuits)
    cap = cfg.direction_block_cap
    p0 = _q(start.point)
    checks = 0

    dirs0 = _directions(p0, w, tables, cap)
    if len(dirs0) == 2 and all(a == -b for a, b in zip(*dirs0)):
        # edge-interior start: walk to an endpoint and start from there
        root = None
        for d in dirs0:
            out = _travel(p0, d, w, tables)
            if isinstance(out, Bounded):
                root = out.next_vertex
                break
        if root is None:
            return TropicalCurve([], [], [Ray(-1, dirs0[0]), Ray(-1, dirs0[1])], 0, anchor=p0)
    elif len(dirs0) == 3:
        root = p0
    else:
        raise NonTrivalentVertex(f"start point has {len(dirs0)} directions")

    if not transversal_at(root, circuits, w):
        raise NonTransversalVertex(f"intersection not transversal at {root}")
    checks += 1

    index = {root: 0}
    points = [root]
    edges: dict = {}
    rays = []
    frontier = [0]
    pool = None
    if cfg.threads > 1:
        pool = ProcessPoolExecutor(cfg.threads, initializer=_worker_init, initargs=(w, tables, cap))
    try:
        while frontier:
            if pool is not None:
                results = list(pool.map(_worker_expand, [points[i] for i in frontier], chunksize=16))
            else:
                results = [_expand(points[i], w, tables, cap) for i in frontier]
            nxt = []
            for i, (dirs, outs) in zip(frontier, results):
                if len(dirs) != 3:
                    raise NonTrivalentVertex(f"vertex {points[i]} has {len(dirs)} directions")
                for d, out in zip(dirs, outs):
                    if isinstance(out, UnboundedRay):
                        rays.append(Ray(i, d))
                        continue
                    q = out.next_vertex
                    j = index.get(q)
                    if j is None:
                        if not transversal_at(q, circuits, w):
                            raise NonTransversalVertex(f"intersection not transversal at {q}")
                        checks += 1
                        j = len(points)
                        if j >= cfg.vertex_budget:
                            raise VertexBudgetExceeded(f"more than {cfg.vertex_budget} vertices")
                        index[q] = j
                        points.append(q)
                        nxt.append(j)
                    key = (min(i, j), max(i, j))
                    if key not in edges:
                        edges[key] = BoundedEdge(i, j, d, out.step)
            frontier = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    return TropicalCurve(points, list(edges.values()), rays, checks)


def genus(curve: TropicalCurve) -> int:
    """First Betti number of a connected curve; a vertex-free line has genus 0."""
    if not curve.vertices:
        return 0
    return len(curve.bounded_edges) - len(curve.vertices) + 1


def compute_genus(g: Graph, cfg: SeedConfig | None = None, circuits=None) -> GenusReport:
    """Validate, find a start, traverse and count, redrawing weights on aborts."""
    cfg = cfg or SeedConfig()
    validate_one_dof(g)
    if circuits is None:
        circuits = enumerate_circuits(g)
    history = []
    for attempt in range(cfg.max_restarts):
        w = random_weights(cfg, g.n, attempt)
        try:
            start = find_start(g, circuits, w, cfg)
            curve = traverse(start, circuits, w, cfg)
        except (Exhausted, TraversalAbort) as exc:
            log.info("attempt %d aborted: %s: %s", attempt, exc.kind, exc)
            history.append({"attempt": attempt, "kind": exc.kind, "message": str(exc)})
            continue
        history.append({"attempt": attempt, "kind": "ok", "message": ""})
        return GenusReport(
            genus=genus(curve),
            vertex_count=len(curve.vertices),
            bounded_edge_count=len(curve.bounded_edges),
            ray_count=len(curve.rays),
            weights=w,
            restarts=attempt,
            transversal_checks=curve.transversal_checks,
            search_nodes=start.search_nodes,
            attempts=history,
            curve=curve,
            start=start,
        )
    raise GenusComputationFailed(f"all {cfg.max_restarts} weight draws aborted", history)
