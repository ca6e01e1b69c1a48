"""Exact rational helpers: difference-constraint systems and integer rank.

Scalars are :class:`fractions.Fraction`. Vectors are plain tuples of
fractions. A :class:`DifferenceSystem` has variables ``1..n`` plus node ``0``,
which is pinned to the constant 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

QVector = tuple  # tuple[Fraction, ...]


class InfeasibleSystem(ValueError):
    """Raised when a point is requested from an infeasible system."""


class DimensionMismatch(ValueError):
    pass


def fmt_q(x) -> str:
    """Canonical ``p/q`` string of a rational."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_q(s: str) -> Fraction:
    return Fraction(s)


def qvector(values: Iterable) -> QVector:
    return tuple(Fraction(v) for v in values)


# Path weights are (value, strict) pairs; a strict bound is tighter than a
# non-strict one of equal value.
def _tighter(a, b) -> bool:
    if b is None:
        return True
    return a[0] < b[0] or (a[0] == b[0] and a[1] > b[1])


def _plus(a, b):
    return (a[0] + b[0], a[1] or b[1])


@dataclass(frozen=True)
class DiffConstraint:
    """``x_a - x_b  (<=, <, =)  c``; index 0 is the constant node."""

    a: int
    b: int
    c: Fraction
    kind: str = "<="

    def __str__(self) -> str:
        lhs = _name(self.a) if self.b == 0 else (
            f"-{_name(self.b)}" if self.a == 0 else f"{_name(self.a)} - {_name(self.b)}")
        op = "=" if self.kind == "=" else self.kind
        return f"{lhs} {op} {self.c}"


def _exact(c):
    # ints stay ints: the seed search only ever adds integer bounds
    return c if isinstance(c, int) else Fraction(c)


def _name(i: int) -> str:
    return "0" if i == 0 else f"x{i}"


class DifferenceSystem:
    """Difference constraints with an incrementally maintained closure.

    ``bound(a, b)`` is the tightest implied upper bound on ``x_a - x_b`` as a
    ``(value, strict)`` pair, or ``None`` when unbounded. Adding a constraint
    that closes a negative cycle marks the system infeasible permanently.
    """

    def __init__(self, n: int):
        self.n = n
        size = n + 1
        self._d = [[None] * size for _ in range(size)]
        for i in range(size):
            self._d[i][i] = (0, False)
        self.constraints: list[DiffConstraint] = []
        self.infeasible = False

    def copy(self) -> "DifferenceSystem":
        other = DifferenceSystem.__new__(DifferenceSystem)
        other.n = self.n
        other._d = [row[:] for row in self._d]
        other.constraints = list(self.constraints)
        other.infeasible = self.infeasible
        return other

    def bound(self, a: int, b: int):
        return self._d[a][b]

    def _check(self, a, b):
        if not (0 <= a <= self.n and 0 <= b <= self.n):
            raise DimensionMismatch(f"variable index out of range: {a}, {b}")

    def _relax(self, a: int, b: int, w) -> bool:
        # edge b -> a carrying x_a - x_b <= w
        d = self._d
        back = d[b][a]
        if back is not None:
            cyc = _plus(back, w)
            if cyc[0] < 0 or (cyc[0] == 0 and cyc[1]):
                self.infeasible = True
                return False
        if not _tighter(w, d[a][b]):
            return True
        size = self.n + 1
        col_a = [d[i][a] for i in range(size)]
        row_b = d[b]
        for i in range(size):
            ia = col_a[i]
            if ia is None:
                continue
            via = _plus(ia, w)
            di = d[i]
            for j in range(size):
                bj = row_b[j]
                if bj is None:
                    continue
                cand = _plus(via, bj)
                cur = di[j]
                if cur is None or cand[0] < cur[0] or (cand[0] == cur[0] and cand[1] and not cur[1]):
                    di[j] = cand
        return True

    def add_le(self, a: int, b: int, c, strict: bool = False) -> bool:
        """Add ``x_a - x_b <= c`` (``<`` if strict); returns feasibility."""
        self._check(a, b)
        c = _exact(c)
        self.constraints.append(DiffConstraint(a, b, c, "<" if strict else "<="))
        if self.infeasible:
            return False
        return self._relax(a, b, (c, strict))

    def add_lt(self, a: int, b: int, c) -> bool:
        return self.add_le(a, b, c, strict=True)

    def add_eq(self, a: int, b: int, c) -> bool:
        """Add ``x_a - x_b = c`` as two opposite inequalities."""
        self._check(a, b)
        c = _exact(c)
        self.constraints.append(DiffConstraint(a, b, c, "="))
        if self.infeasible:
            return False
        return self._relax(a, b, (c, False)) and self._relax(b, a, (-c, False))

    def feasible(self) -> bool:
        return not self.infeasible

    def interior_point(self) -> QVector:
        """A deterministic rational point in the relative interior.

        Coordinates are fixed one at a time at the midpoint of the interval
        implied by the closure and the coordinates already fixed.
        """
        if self.infeasible:
            raise InfeasibleSystem("system has no solution")
        sys = self.copy()
        d = sys._d
        x = [Fraction(0)] * (self.n + 1)
        for i in range(1, self.n + 1):
            # every fixed coordinate is pinned to node 0, so its bounds are
            # already folded into d[i][0] and d[0][i]
            hi, lo = d[i][0], d[0][i]
            if lo is not None and hi is not None:
                v = Fraction(hi[0]) if hi[0] == -lo[0] else Fraction(hi[0] - lo[0]) / 2
            elif lo is not None:
                v = Fraction(-lo[0] + 1)
            elif hi is not None:
                v = Fraction(hi[0] - 1)
            else:
                v = Fraction(0)
            x[i] = v
            if not sys._relax(i, 0, (v, False)) or not sys._relax(0, i, (-v, False)):
                raise InfeasibleSystem("closure inconsistent while fixing coordinates")
        return tuple(x[1:])

    def satisfied_by(self, point: Sequence) -> bool:
        vals = (Fraction(0),) + tuple(point)
        for con in self.constraints:
            diff = vals[con.a] - vals[con.b]
            if con.kind == "=" and diff != con.c:
                return False
            if con.kind == "<=" and diff > con.c:
                return False
            if con.kind == "<" and diff >= con.c:
                return False
        return True


def feasible(sys: DifferenceSystem) -> bool:
    return sys.feasible()


def interior_point(sys: DifferenceSystem) -> QVector:
    return sys.interior_point()


def _integer_rows(matrix) -> list[list[int]]:
    rows = []
    for row in matrix:
        fr = [Fraction(v) for v in row]
        den = 1
        for v in fr:
            den = den * v.denominator // gcd(den, v.denominator)
        rows.append([int(v * den) for v in fr])
    return rows


def rank(matrix) -> int:
    """Exact rank by fraction-free (Bareiss) elimination."""
    rows = _integer_rows(matrix)
    if not rows:
        return 0
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise DimensionMismatch("ragged matrix")
    r = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        for i in range(r + 1, len(rows)):
            f = rows[i][col]
            rows[i] = [(p * rows[i][k] - f * rows[r][k]) // prev for k in range(ncols)]
        prev = p
        r += 1
        if r == len(rows):
            break
    return r


def sum_of_spans_is_full(basis_a, basis_b, n: int) -> bool:
    """True iff span(basis_a) + span(basis_b) is all of Q^n."""
    vecs = list(basis_a) + list(basis_b)
    for v in vecs:
        if len(v) != n:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {n}")
    if len(vecs) < n:
        return False
    return rank(vecs) == n
