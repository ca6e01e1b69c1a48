"""Tropical cycle conditions for a 1-dof graph.

A point ``p`` has one coordinate ``u_e`` per non-base edge ``e = 1..n``
(stored at ``p[e - 1]``); the base edge contributes the constant slot 0.
On side X a circuit contributes the values ``u_e``, on side Y the values
``w_e - u_e``; the point lies on the curve when every circuit attains its
minimum at least twice on both sides.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import DiffConstraint, sum_of_spans_is_full

CONST = 0  # slot id of the base edge


class Side(enum.Enum):
    X = "X"
    Y = "Y"


class DegenerateWeights(ValueError):
    kind = "DegenerateWeights"


class NotOnCurve(ValueError):
    kind = "PreconditionViolation"


def check_weights(w: Sequence) -> tuple:
    """Validate a weight vector: positive, pairwise distinct."""
    w = tuple(Fraction(x) for x in w)
    if any(x <= 0 for x in w):
        raise DegenerateWeights("weights must be positive")
    if len(set(w)) != len(w):
        raise DegenerateWeights("weights must be pairwise distinct")
    return w


@dataclass(frozen=True)
class SlotValue:
    circuit: object
    slot: int  # edge index, CONST for the base edge
    side: Side
    value: Fraction
    slope: Fraction | None = None


def _slot_pairs(p, circuit, side, w):
    out = [(CONST, Fraction(0))] if circuit.contains_base else []
    if side is Side.X:
        out.extend((c + 1, p[c]) for c in circuit.coords)
    else:
        out.extend((c + 1, w[c] - p[c]) for c in circuit.coords)
    return out


def slot_values(p, c, s: Side, w) -> list:
    return [SlotValue(c, slot, s, Fraction(val)) for slot, val in _slot_pairs(p, c, s, w)]


def argmin_slots(p, c, s: Side, w) -> list:
    pairs = _slot_pairs(p, c, s, w)
    m = min(v for _, v in pairs)
    return [slot for slot, v in pairs if v == m]


def circuit_satisfied(p, c, s: Side, w) -> bool:
    return len(argmin_slots(p, c, s, w)) >= 2


def on_curve(p, circuits, w) -> bool:
    return all(circuit_satisfied(p, c, s, w) for c in circuits for s in (Side.X, Side.Y))


@dataclass(frozen=True)
class FaceSpan:
    point: tuple
    side: Side
    equalities: tuple  # DiffConstraint with kind "=" over edge-index variables
    basis: tuple  # direction vectors (tuples of ints) spanning the face

    @property
    def dimension(self) -> int:
        return len(self.basis)


class _UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra  # smaller root wins, so the constant stays a root
        return True


def _class_basis(uf: _UnionFind, n: int) -> tuple:
    groups: dict = {}
    for e in range(1, n + 1):
        groups.setdefault(uf.find(e), []).append(e)
    basis = []
    for root in sorted(groups):
        if uf.find(root) == uf.find(CONST):
            continue
        vec = [0] * n
        for e in groups[root]:
            vec[e - 1] = 1
        basis.append(tuple(vec))
    return tuple(basis)


def face_span(p, s: Side, circuits, w) -> FaceSpan:
    """Affine span of the smallest face of X (or Y) containing ``p``."""
    n = len(p)
    uf = _UnionFind(n + 1)
    eqs = []
    wext = (Fraction(0),) + tuple(w)
    for c in circuits:
        tied = argmin_slots(p, c, s, w)
        if len(tied) < 2:
            raise NotOnCurve(f"circuit {sorted(c.edge_indices)} attains its {s.value}-minimum once")
        first = tied[0]
        for other in tied[1:]:
            if uf.union(first, other):
                # x_other - x_first = c
                c_val = Fraction(0) if s is Side.X else wext[other] - wext[first]
                eqs.append(DiffConstraint(other, first, c_val, "="))
    return FaceSpan(tuple(p), s, tuple(eqs), _class_basis(uf, n))


def transversal_at(p, circuits, w) -> bool:
    """True iff the X- and Y-faces through ``p`` have spans summing to R^n."""
    if not on_curve(p, circuits, w):
        raise NotOnCurve("point is not on the tropical curve")
    n = len(p)
    fx = face_span(p, Side.X, circuits, w)
    fy = face_span(p, Side.Y, circuits, w)
    return sum_of_spans_is_full(fx.basis, fy.basis, n)


def face_dimension(p, circuits, w) -> int:
    """Dimension of the cell of X ∩ Y containing ``p`` in its relative interior.

    Ties on either side identify two variables up to a constant offset, so the
    homogeneous system is the union of both sides' tie classes.
    """
    n = len(p)
    uf = _UnionFind(n + 1)
    for s in (Side.X, Side.Y):
        for c in circuits:
            tied = argmin_slots(p, c, s, w)
            for other in tied[1:]:
                uf.union(tied[0], other)
    return len(_class_basis(uf, n))
