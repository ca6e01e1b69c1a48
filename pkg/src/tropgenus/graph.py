"""Linkage graphs, the (2,3) pebble game, 1-dof validation and circuits.

Vertices are 0-based here; :meth:`Graph.from_one_based` and
:meth:`Graph.one_based_edges` translate to the 1-based labels users see.
The base edge is always stored at index 0, so tropical coordinate ``e - 1``
belongs to edge ``e`` for ``e = 1..n``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

Edge = tuple  # (u, v) with u < v, 0-based


class GraphError(ValueError):
    """Malformed graph input."""


class OneDofError(ValueError):
    kind = "NotOneDof"


class WrongCount(OneDofError):
    kind = "WrongCount"


class DependentEdges(OneDofError):
    kind = "DependentEdges"


class NoRigidExtension(OneDofError):
    kind = "NoRigidExtension"


class CircuitLimitExceeded(RuntimeError):
    kind = "CircuitLimitExceeded"


class PreconditionError(ValueError):
    kind = "PreconditionViolation"


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: tuple
    base_edge_index: int = 0

    def __post_init__(self):
        if self.vertex_count < 1:
            raise GraphError("vertex_count must be positive")
        seen = set()
        norm = []
        for e in self.edges:
            if len(e) != 2:
                raise GraphError(f"edge {e!r} is not a vertex pair")
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphError(f"loop at vertex {u + 1}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphError(f"edge ({u + 1}, {v + 1}) has a vertex out of range 1..{self.vertex_count}")
            p = _norm(u, v)
            if p in seen:
                raise GraphError(f"duplicate edge ({p[0] + 1}, {p[1] + 1})")
            seen.add(p)
            norm.append(p)
        if not norm:
            raise GraphError("graph has no edges")
        if not 0 <= self.base_edge_index < len(norm):
            raise GraphError("base_edge_index out of range")
        base = norm.pop(self.base_edge_index)
        object.__setattr__(self, "edges", tuple([base] + norm))
        object.__setattr__(self, "base_edge_index", 0)

    @classmethod
    def from_one_based(cls, vertex_count: int, edges: Iterable, base=None) -> "Graph":
        """Build from 1-based pairs; the base edge defaults to {1, 2}."""
        edges = [(int(u) - 1, int(v) - 1) for u, v in edges]
        base = (1, 2) if base is None else tuple(base)
        target = _norm(int(base[0]) - 1, int(base[1]) - 1)
        for idx, (u, v) in enumerate(edges):
            if _norm(u, v) == target:
                return cls(vertex_count, tuple(edges), idx)
        raise GraphError(f"base edge {{{base[0]}, {base[1]}}} is not an edge of the graph")

    @property
    def n(self) -> int:
        """Ambient tropical dimension |E| - 1."""
        return len(self.edges) - 1

    @property
    def base(self) -> Edge:
        return self.edges[0]

    def one_based_edges(self) -> list:
        return [(u + 1, v + 1) for u, v in self.edges]

    def edge_index(self, u: int, v: int):
        try:
            return self.edges.index(_norm(u, v))
        except ValueError:
            return None

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in set(self.edges)

    def adjacency(self) -> list:
        adj = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def with_edges(self, extra: Iterable) -> "Graph":
        return Graph(self.vertex_count, self.edges + tuple(_norm(*e) for e in extra))


@dataclass(frozen=True)
class Circuit:
    edge_indices: frozenset
    contains_base: bool
    # tropical coordinate indices (0-based) of the non-base edges
    coords: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "edge_indices", frozenset(self.edge_indices))
        object.__setattr__(self, "coords", tuple(sorted(e - 1 for e in self.edge_indices if e != 0)))

    def __len__(self):
        return len(self.edge_indices)


@dataclass(frozen=True)
class OneDofWitness:
    witness_edge: Edge  # 0-based

    def one_based(self) -> tuple:
        return (self.witness_edge[0] + 1, self.witness_edge[1] + 1)


class PebbleState:
    """(2,3) pebble game; accepted edges form an independent set of the
    generic 2D rigidity matrix."""

    def __init__(self, vertex_count: int):
        self.vertex_count = vertex_count
        self.pebbles = [2] * vertex_count
        self.out = [set() for _ in range(vertex_count)]
        self.accepted: list = []

    def copy(self) -> "PebbleState":
        other = PebbleState.__new__(PebbleState)
        other.vertex_count = self.vertex_count
        other.pebbles = list(self.pebbles)
        other.out = [set(s) for s in self.out]
        other.accepted = list(self.accepted)
        return other

    def _gather(self, root: int, keep: int) -> bool:
        seen = {root, keep}
        parent = {}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in self.out[x]:
                if y in seen:
                    continue
                seen.add(y)
                parent[y] = x
                if self.pebbles[y] > 0:
                    self.pebbles[y] -= 1
                    while y != root:
                        x = parent[y]
                        self.out[x].discard(y)
                        self.out[y].add(x)
                        y = x
                    self.pebbles[root] += 1
                    return True
                stack.append(y)
        return False

    def try_add(self, u: int, v: int) -> bool:
        if u == v or not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
            raise GraphError(f"malformed edge ({u + 1}, {v + 1})")
        while self.pebbles[u] + self.pebbles[v] < 4:
            if self.pebbles[u] < 2 and self._gather(u, v):
                continue
            if self.pebbles[v] < 2 and self._gather(v, u):
                continue
            return False
        if self.pebbles[u] > 0:
            self.pebbles[u] -= 1
            self.out[u].add(v)
        else:
            self.pebbles[v] -= 1
            self.out[v].add(u)
        self.accepted.append(_norm(u, v))
        return True


def pebble_state(edges: Iterable, vertex_count: int) -> PebbleState:
    st = PebbleState(vertex_count)
    for u, v in edges:
        st.try_add(u, v)
    return st


def pebble_rank(edges: Iterable, vertex_count: int) -> int:
    """Rank of an edge set in the generic planar rigidity matroid."""
    return len(pebble_state(edges, vertex_count).accepted)


def is_independent(edges: Sequence, vertex_count: int) -> bool:
    edges = list(edges)
    return pebble_rank(edges, vertex_count) == len(edges)


def validate_one_dof(g: Graph) -> OneDofWitness:
    """Check that ``g`` is a minimally rigid graph minus one edge."""
    nv, ne = g.vertex_count, len(g.edges)
    if ne != 2 * nv - 4:
        raise WrongCount(f"2|V| - |E| = {2 * nv - ne}, expected 4")
    st = pebble_state(g.edges, nv)
    if len(st.accepted) < ne:
        raise DependentEdges(f"edge set has rigidity rank {len(st.accepted)} < {ne}")
    present = set(g.edges)
    for u, v in combinations(range(nv), 2):
        if (u, v) in present:
            continue
        if st.copy().try_add(u, v):
            return OneDofWitness((u, v))
    raise NoRigidExtension("no non-edge extends the graph to a minimally rigid one")


def enumerate_circuits(g: Graph, limit: int = 100_000) -> list:
    """All simple cycles, sorted by length then by edge-index tuple."""
    adj = g.adjacency()
    eidx = {e: i for i, e in enumerate(g.edges)}
    found = []

    def emit(path):
        idx = frozenset(eidx[_norm(path[t], path[(t + 1) % len(path)])] for t in range(len(path)))
        found.append(Circuit(idx, 0 in idx))
        if len(found) > limit:
            raise CircuitLimitExceeded(f"more than {limit} circuits")

    # cycles rooted at their smallest vertex; orientation fixed by path[1] < path[-1]
    for s in range(g.vertex_count):
        path = [s]
        on_path = {s}
        stack = [iter(sorted(w for w in adj[s] if w > s))]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            path.append(nxt)
            on_path.add(nxt)
            if len(path) >= 3 and s in adj[nxt] and path[1] < nxt:
                emit(path)
            stack.append(iter(sorted(w for w in adj[nxt] if w > s and w not in on_path)))
    found.sort(key=lambda c: (len(c.edge_indices), tuple(sorted(c.edge_indices))))
    return found


def fundamental_circuit_keys(g: Graph) -> set:
    """Edge-index sets of the fundamental cycles of a BFS spanning forest."""
    adj = g.adjacency()
    eidx = {e: i for i, e in enumerate(g.edges)}
    parent = [None] * g.vertex_count
    depth = [0] * g.vertex_count
    seen = [False] * g.vertex_count
    tree = set()
    for root in range(g.vertex_count):
        if seen[root]:
            continue
        seen[root] = True
        q = deque([root])
        while q:
            x = q.popleft()
            for y in sorted(adj[x]):
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    tree.add(eidx[_norm(x, y)])
                    q.append(y)
    keys = set()
    for i, (u, v) in enumerate(g.edges):
        if i in tree:
            continue
        cyc = {i}
        a, b = u, v
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            cyc.add(eidx[_norm(a, parent[a])])
            a = parent[a]
        keys.add(frozenset(cyc))
    return keys


def is_connected(vertex_count: int, edges: Iterable, removed=()) -> bool:
    removed = set(removed)
    alive = [v for v in range(vertex_count) if v not in removed]
    if not alive:
        return True
    adj = {v: [] for v in alive}
    for u, v in edges:
        if u in removed or v in removed:
            continue
        adj[u].append(v)
        adj[v].append(u)
    seen = {alive[0]}
    stack = [alive[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(alive)


def is_rigid(g: Graph) -> bool:
    if g.vertex_count == 1:
        return True
    return pebble_rank(g.edges, g.vertex_count) == 2 * g.vertex_count - 3


def _rigid_edges(edges, vertex_count) -> bool:
    return pebble_rank(edges, vertex_count) == 2 * vertex_count - 3


def is_redundantly_rigid(g: Graph) -> bool:
    for i in range(len(g.edges)):
        rest = g.edges[:i] + g.edges[i + 1:]
        if not _rigid_edges(rest, g.vertex_count):
            return False
    return True


def separation_pairs(g: Graph) -> list:
    return [
        (u, v)
        for u, v in combinations(range(g.vertex_count), 2)
        if not is_connected(g.vertex_count, g.edges, (u, v))
    ]


def is_3_connected(g: Graph) -> bool:
    if g.vertex_count < 4 or not is_connected(g.vertex_count, g.edges):
        return False
    return not separation_pairs(g)


def is_globally_rigid(g: Graph) -> bool:
    if g.vertex_count <= 3:
        return len(g.edges) == g.vertex_count * (g.vertex_count - 1) // 2
    return is_3_connected(g) and is_redundantly_rigid(g)


def unique_rigidity_circuit(g: Graph) -> set:
    """The single rigidity-matroid circuit of a rigid graph with corank 1."""
    edges = list(g.edges)
    r = pebble_rank(edges, g.vertex_count)
    if r != 2 * g.vertex_count - 3 or len(edges) - r != 1:
        raise PreconditionError("graph must be rigid with |E| = 2|V| - 2")
    circuit = list(edges)
    for e in edges:
        trial = [f for f in circuit if f != e]
        if not is_independent(trial, g.vertex_count):
            circuit = trial
    return set(circuit)
