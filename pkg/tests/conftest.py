"""Graph builders shared by the test modules (1-based labels, base {1,2})."""

import pytest

from tropgenus.graph import Graph


def c4():
    return Graph.from_one_based(4, [(1, 2), (2, 3), (3, 4), (1, 4)])


def k2m(m):
    # left side {1, 3}; right side 2, 4, 5, ..., m + 2
    right = [2] + list(range(4, m + 3))
    edges = [(1, r) for r in right] + [(3, r) for r in right]
    return Graph.from_one_based(m + 2, edges)


def wagner():
    edges = [(i, i % 8 + 1) for i in range(1, 9)] + [(i, i + 4) for i in range(1, 5)]
    return Graph.from_one_based(8, edges)


def glued_c4():
    # C4 with a triangle 3-4-5 glued along the edge {3, 4}
    return Graph.from_one_based(5, [(1, 2), (2, 3), (3, 4), (1, 4), (3, 5), (4, 5)])


@pytest.fixture
def c4_graph():
    return c4()


def check_curve_invariants(curve, circuits, w, sample=100, seed=0):
    """Structural invariants of a traversed curve; returns the number of
    edges checked for reverse travel."""
    import random

    from tropgenus.traversal import Bounded, travel
    from tropgenus.tropical import on_curve

    n = len(w)
    out = [[] for _ in curve.vertices]
    for e in curve.bounded_edges:
        out[e.a].append(e.direction)
        out[e.b].append(tuple(-x for x in e.direction))
        nz = {x for x in e.direction if x}
        assert nz in ({1}, {-1}), e.direction
        a, b = curve.vertices[e.a], curve.vertices[e.b]
        assert tuple(x + e.length * d for x, d in zip(a, e.direction)) == b
        mid = tuple(x + e.length * d / 2 for x, d in zip(a, e.direction))
        assert on_curve(mid, circuits, w)
    for r in curve.rays:
        out[r.vertex].append(r.direction)
    for t, dirs in enumerate(out):
        assert len(dirs) == 3, (t, dirs)
        assert all(sum(d[i] for d in dirs) == 0 for i in range(n)), dirs
        assert on_curve(curve.vertices[t], circuits, w)
    edges = list(curve.bounded_edges)
    random.Random(seed).shuffle(edges)
    picked = edges[:sample]
    for e in picked:
        back = travel(curve.vertices[e.b], tuple(-x for x in e.direction), circuits, w)
        assert isinstance(back, Bounded)
        assert back.next_vertex == curve.vertices[e.a] and back.step == e.length
    return len(picked)


# Acceptance lines are collected here and echoed in the terminal summary so
# they appear in the log regardless of output capturing.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
