"""Random integer weights and a starting point on the tropical curve.

The start is found by depth-first search: every (circuit, side) item picks a
pair of slots declared tied and minimal. Each choice is a set of difference
constraints, so a branch is pruned as soon as the accumulated system has a
negative cycle. A complete assignment describes a cell of X ∩ Y; its relative
interior point is verified before being returned.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exact import DifferenceSystem
from .graph import Graph, fundamental_circuit_keys
from .tropical import CONST, Side, check_weights, face_dimension, on_curve, transversal_at

CIRCUIT_ORDERS = ("basis-first", "shortest-first", "mrv")


class Exhausted(RuntimeError):
    kind = "Exhausted"


@dataclass(frozen=True)
class SeedConfig:
    rng_seed: int = 0
    weight_bits: int = 24
    max_restarts: int = 8
    circuit_order: str = "basis-first"
    node_budget: int = 1_000_000
    vertex_budget: int = 1_000_000
    direction_block_cap: int = 25
    threads: int = 1

    def __post_init__(self):
        if self.weight_bits < 8:
            raise ValueError("weight_bits must be at least 8")
        if self.max_restarts < 1:
            raise ValueError("max_restarts must be at least 1")
        if self.circuit_order not in CIRCUIT_ORDERS:
            raise ValueError(f"circuit_order must be one of {CIRCUIT_ORDERS}")
        for name in ("node_budget", "vertex_budget", "direction_block_cap", "threads"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class StartPoint:
    point: tuple
    face_dimension: int
    support_choice: tuple = field(default=(), compare=False)
    search_nodes: int = field(default=0, compare=False)


def random_weights(cfg: SeedConfig, n: int, attempt: int = 0) -> tuple:
    """``n`` distinct integers drawn uniformly from [1, 2**weight_bits]."""
    rng = random.Random(f"{cfg.rng_seed}/{attempt}")
    return tuple(rng.sample(range(1, 2 ** cfg.weight_bits + 1), n))


def _ordered_circuits(g: Graph, circuits, order: str) -> list:
    if order == "basis-first":
        basis = fundamental_circuit_keys(g)
        return sorted(circuits, key=lambda c: (c.edge_indices not in basis, len(c), sorted(c.edge_indices)))
    return sorted(circuits, key=lambda c: (len(c), sorted(c.edge_indices)))


def _items(circuits) -> list:
    items = []
    for idx, c in enumerate(circuits):
        slots = ([CONST] if c.contains_base else []) + [e + 1 for e in c.coords]
        items.append((idx, Side.X, slots))
        items.append((idx, Side.Y, slots))
    return items


def _branch(sys: DifferenceSystem, side: Side, slots, a: int, b: int, wext) -> DifferenceSystem | None:
    """Copy of ``sys`` with slots ``a``, ``b`` tied at the minimum, or None."""
    # cheap necessary check on the current closure first
    if side is Side.X:
        tie = 0
    else:
        tie = wext[a] - wext[b]
    up, down = sys.bound(a, b), sys.bound(b, a)
    if (up is not None and up[0] < tie) or (down is not None and down[0] < -tie):
        return None
    trial = sys.copy()
    if not trial.add_eq(a, b, tie):
        return None
    for g in slots:
        if g == a or g == b:
            continue
        if side is Side.X:
            ok = trial.add_le(a, g, 0)  # u_a <= u_g
        else:
            ok = trial.add_le(g, a, wext[g] - wext[a])  # w_a - u_a <= w_g - u_g
        if not ok:
            return None
    return trial


def find_start(g: Graph, circuits, w, cfg: SeedConfig) -> StartPoint:
    """Search for a transversal point of X ∩ Y in a cell of dimension <= 1."""
    w = check_weights(w)
    n = g.n
    if len(w) != n:
        raise ValueError(f"weight vector has length {len(w)}, expected {n}")
    wext = (0,) + tuple(int(x) if x.denominator == 1 else x for x in w)
    ordered = _ordered_circuits(g, circuits, cfg.circuit_order)
    items = _items(ordered)
    nodes = 0

    def leaf(sys, choice):
        p = sys.interior_point()
        if not on_curve(p, circuits, w):
            return None
        dim = face_dimension(p, circuits, w)
        if dim > 1 or not transversal_at(p, circuits, w):
            return None
        return StartPoint(p, dim, tuple(choice), nodes)

    def options(sys, item):
        _, side, slots = item
        out = []
        for a, b in combinations(slots, 2):
            br = _branch(sys, side, slots, a, b, wext)
            if br is not None:
                out.append(((a, b), br))
        return out

    def search(sys, remaining, choice):
        nonlocal nodes
        if not remaining:
            return leaf(sys, choice)
        if cfg.circuit_order == "mrv":
            best = None
            for pos, item in enumerate(remaining):
                opts = options(sys, item)
                nodes += 1
                if best is None or len(opts) < len(best[1]):
                    best = (pos, opts)
                if not opts:
                    return None
            pos, opts = best
            item = remaining[pos]
            rest = remaining[:pos] + remaining[pos + 1:]
        else:
            item = remaining[0]
            rest = remaining[1:]
            opts = options(sys, item)
        for pair, br in opts:
            nodes += 1
            if nodes > cfg.node_budget:
                raise Exhausted(f"node budget {cfg.node_budget} spent")
            found = search(br, rest, choice + [(ordered[item[0]], item[1], pair)])
            if found is not None:
                return found
        return None

    result = search(DifferenceSystem(n), items, [])
    if result is None:
        raise Exhausted("search space exhausted without a transversal start point")
    return result
