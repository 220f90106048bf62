"""Exact integer convex-hull chains and lattice-point enumeration.

Everything here works on integer coordinates with integer arithmetic only.
A hull is represented by its lower and upper chains: lists of vertices with
strictly increasing x, the lower chain with strictly increasing slopes and
the upper chain with strictly decreasing slopes.  A set whose points share a
single x collapses both chains to one point each (min-y and max-y).
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterable, List, NamedTuple, Sequence, Tuple


class Point(NamedTuple):
    x: int
    y: int


def cross(o: Point, a: Point, b: Point) -> int:
    """Signed area (doubled) of the triangle o-a-b; > 0 means a left turn."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def floor_div(num: int, den: int) -> int:
    """Exact floor of num/den for den > 0."""
    return num // den


def ceil_div(num: int, den: int) -> int:
    """Exact ceiling of num/den for den > 0."""
    return -((-num) // den)


def hull_chains(points: Iterable[Point]) -> Tuple[List[Point], List[Point]]:
    """Monotone-chain lower and upper hulls of a point collection.

    Returns ([], []) for an empty input.  Collinear interior points are
    dropped, so every chain vertex is a strict hull vertex.
    """
    pts = sorted(set(points))
    if not pts:
        return [], []
    if len(pts) == 1:
        return [pts[0]], [pts[0]]
    lower: List[Point] = []
    upper: List[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) >= 0:
            upper.pop()
        upper.append(p)
    if lower[0].x == lower[-1].x:
        # All points share one column: keep extreme ys only.
        return [pts[0]], [pts[-1]]
    # Vertical hull edges leave a same-x pair at the chain ends; keep the
    # extreme-y representative so each chain is a function of x.
    if upper[0].x == upper[1].x:
        upper.pop(0)
    if lower[-1].x == lower[-2].x:
        lower.pop()
    return lower, upper


def assemble_ccw(lower: Sequence[Point], upper: Sequence[Point]) -> List[Point]:
    """Counter-clockwise vertex cycle from canonical chains."""
    if not lower:
        return []
    if len(lower) == 1 and len(upper) == 1:
        if lower[0] == upper[0]:
            return [lower[0]]
        return [lower[0], upper[0]]
    ccw = list(lower)
    rev = list(upper[::-1])
    if rev and rev[0] == ccw[-1]:
        rev = rev[1:]
    if rev and rev[-1] == ccw[0]:
        rev = rev[:-1]
    ccw.extend(rev)
    return ccw


def hull_vertices(points: Iterable[Point]) -> List[Point]:
    """Hull vertices in counter-clockwise order starting at the lowest-leftmost."""
    lower, upper = hull_chains(points)
    return assemble_ccw(lower, upper)


def _chain_y_bounds(chain: Sequence[Point], x: int) -> Tuple[int, int]:
    """Numerator and denominator (den > 0) of the chain ordinate at column x."""
    if len(chain) == 1:
        return chain[0].y, 1
    xs = [p.x for p in chain]
    i = bisect_left(xs, x)
    if i < len(chain) and chain[i].x == x:
        return chain[i].y, 1
    a, b = chain[i - 1], chain[i]
    den = b.x - a.x
    num = a.y * den + (b.y - a.y) * (x - a.x)
    return num, den


def chain_floor_at(chain: Sequence[Point], x: int) -> int:
    num, den = _chain_y_bounds(chain, x)
    return floor_div(num, den)


def chain_ceil_at(chain: Sequence[Point], x: int) -> int:
    num, den = _chain_y_bounds(chain, x)
    return ceil_div(num, den)


def lattice_points_between(lower: Sequence[Point], upper: Sequence[Point]) -> List[Point]:
    """All lattice points on or between the two chains, column by column."""
    if not lower:
        return []
    out: List[Point] = []
    x0, x1 = lower[0].x, lower[-1].x
    for x in range(x0, x1 + 1):
        ylo = chain_ceil_at(lower, x)
        yhi = chain_floor_at(upper, x)
        for y in range(ylo, yhi + 1):
            out.append(Point(x, y))
    return out


def lattice_points_of(points: Iterable[Point]) -> List[Point]:
    """All lattice points inside or on the convex hull of the given points."""
    lower, upper = hull_chains(points)
    return lattice_points_between(lower, upper)


def point_in_hull(lower: Sequence[Point], upper: Sequence[Point], p: Point) -> bool:
    """Closed-hull membership test against precomputed chains."""
    if not lower:
        return False
    if p.x < lower[0].x or p.x > lower[-1].x:
        return False
    ylo_n, ylo_d = _chain_y_bounds(lower, p.x)
    if p.y * ylo_d < ylo_n:
        return False
    yhi_n, yhi_d = _chain_y_bounds(upper, p.x)
    return p.y * yhi_d <= yhi_n


class IncrementalHull:
    """Convex hull of a growing point set with per-insertion chain repair.

    Insertion does a binary search for the affected chain position and then
    pops vertices that stop being extreme, so total repair work is bounded by
    the number of vertices ever created.  `hull_chains` is the independent
    from-scratch reference used by the tests.
    """

    __slots__ = ("_lower", "_upper")

    def __init__(self, points: Iterable[Point] = ()):
        self._lower: List[Point] = []
        self._upper: List[Point] = []
        for p in points:
            self.add(p)

    def __len__(self) -> int:
        return len(self._lower)

    @property
    def lower(self) -> List[Point]:
        return list(self._lower)

    @property
    def upper(self) -> List[Point]:
        return list(self._upper)

    def vertices(self) -> List[Point]:
        return assemble_ccw(self._lower, self._upper)

    def contains(self, p: Point) -> bool:
        return point_in_hull(self._lower, self._upper, p)

    def add(self, p: Point) -> None:
        if not self._lower:
            self._lower = [p]
            self._upper = [p]
            return
        if len(self._lower) == 1 and len(self._upper) == 1 and self._lower[0].x == self._upper[0].x:
            if p.x == self._lower[0].x:
                if p.y < self._lower[0].y:
                    self._lower = [p]
                if p.y > self._upper[0].y:
                    self._upper = [p]
                return
            lo = self._lower[0]
            hi = self._upper[0]
            if p.x < lo.x:
                self._lower = [p, lo]
                self._upper = [p, hi]
            else:
                self._lower = [lo, p]
                self._upper = [hi, p]
            return
        self._insert(self._lower, p, lower=True)
        self._insert(self._upper, p, lower=False)

    def _insert(self, chain: List[Point], p: Point, lower: bool) -> None:
        xs = [q.x for q in chain]
        i = bisect_left(xs, p.x)
        if i < len(chain) and chain[i].x == p.x:
            better = p.y < chain[i].y if lower else p.y > chain[i].y
            if not better:
                return
            chain[i] = p
            self._repair(chain, i, lower)
            return
        if 0 < i < len(chain):
            a, b = chain[i - 1], chain[i]
            c = cross(a, b, p)
            outside = c < 0 if lower else c > 0
            if not outside:
                return
        chain.insert(i, p)
        self._repair(chain, i, lower)

    @staticmethod
    def _repair(chain: List[Point], i: int, lower: bool) -> None:
        bad = (lambda c: c <= 0) if lower else (lambda c: c >= 0)
        while i >= 2 and bad(cross(chain[i - 2], chain[i - 1], chain[i])):
            del chain[i - 1]
            i -= 1
        while i + 2 <= len(chain) - 1 and bad(cross(chain[i], chain[i + 1], chain[i + 2])):
            del chain[i + 1]
