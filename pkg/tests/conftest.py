"""Shared test helpers: independent reference implementations."""

from __future__ import annotations

import itertools
from typing import Iterator, List, Sequence, Tuple

from convextomo.hull import Point, cross
from convextomo.lattice import LatticeSet


def naive_integer_hull(points: Sequence[Point]) -> List[Point]:
    """Every bounding-box point tested against all hull half-planes.

    Independent of the chain-walk implementation: a point is inside iff it
    is weakly on the inner side of every directed edge of the hull cycle
    (computed by trying all point pairs as candidate edges).
    """
    pts = sorted(set(points))
    if not pts:
        return []
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    result = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            q = Point(x, y)
            if _in_hull_halfplanes(pts, q):
                result.append(q)
    return result


def _in_hull_halfplanes(pts: Sequence[Point], q: Point) -> bool:
    # q is in conv(pts) iff no line through two points (or one point for the
    # degenerate cases) has all of pts strictly on one side and q strictly
    # on the other.
    if len(pts) == 1:
        return q == pts[0]
    for a, b in itertools.combinations(pts, 2):
        left = right = False
        for p in pts:
            c = cross(a, b, p)
            if c > 0:
                left = True
            elif c < 0:
                right = True
        cq = cross(a, b, q)
        if not left and cq > 0:
            return False
        if not right and cq < 0:
            return False
    if all(cross(pts[0], pts[1], p) == 0 for p in pts):
        # collinear set: q must lie on the segment hull
        if cross(pts[0], pts[1], q) != 0:
            return False
        lo, hi = min(pts), max(pts)
        return lo <= q <= hi
    return True


def enumerate_hv_polyominoes(m: int, n: int, max_cells: int = 99) -> Iterator[LatticeSet]:
    """All HV-convex polyominoes inside an m-by-n box (anchored anywhere).

    Row-interval stacks with overlapping consecutive rows; column convexity
    is checked at the end.
    """
    def column_convex(rows: List[Tuple[int, int, int]]) -> bool:
        by_col = {}
        for y, l, r in rows:
            for x in range(l, r + 1):
                by_col.setdefault(x, []).append(y)
        return all(max(ys) - min(ys) + 1 == len(ys) for ys in by_col.values())

    def emit(rows):
        if column_convex(rows):
            pts = frozenset(Point(x, y) for (y, l, r) in rows for x in range(l, r + 1))
            if len(pts) <= max_cells:
                yield LatticeSet(pts)

    def extend(y, rows):
        yield from emit(rows)
        if y >= n:
            return
        prev = rows[-1]
        for l in range(m):
            for r in range(l, m):
                if l > prev[2] or r < prev[1]:
                    continue  # consecutive rows must overlap
                yield from extend(y + 1, rows + [(y, l, r)])

    for y0 in range(n):
        for l in range(m):
            for r in range(l, m):
                yield from extend(y0 + 1, [(y0, l, r)])


def xray_counts(s: LatticeSet) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """(h, v) counts over the tight bounding box of a non-empty set."""
    min_x, min_y, max_x, max_y = s.bbox
    t = s.translate(-min_x, -min_y)
    m, n = max_x - min_x + 1, max_y - min_y + 1
    h = [0] * n
    v = [0] * m
    for p in t.points:
        h[p.y] += 1
        v[p.x] += 1
    return tuple(h), tuple(v)
