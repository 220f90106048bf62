"""Reconstruction of a digital convex set from one vertical X-ray.

The search space is normalized: solutions are translated so the lowest
point of column 0 is the origin, and sheared so the bottom point of the
last column has y in [0, m-1).  Every normalized solution then lives in a
bounded region around the triangle (0,0), (m-1,0), (m-1,m-1).

Nodes of the search DAG are quads: a lower and an upper segment whose
common columns each hold exactly the prescribed number of lattice points.
Edges replace one segment by a consecutive one turning strictly convexly,
so any left-to-right path sweeps out a digital convex set.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import UnsupportedError
from .hull import Point, ceil_div, cross, floor_div
from .lattice import Axis, LatticeSet, XRay, is_digital_convex

__all__ = ["Region", "Quad", "build_region", "quad_valid", "left_quads",
           "is_right_quad", "quad_successors", "reconstruct1"]


@dataclass(frozen=True)
class Region:
    """Per-column y bounds of the normalized search region."""

    m: int
    v: Tuple[int, ...]
    lo: Tuple[int, ...]
    hi: Tuple[int, ...]
    k: int

    def contains(self, p: Point) -> bool:
        return 0 <= p.x < self.m and self.lo[p.x] <= p.y <= self.hi[p.x]

    def points(self) -> List[Point]:
        return [Point(x, y) for x in range(self.m) for y in range(self.lo[x], self.hi[x] + 1)]


def build_region(v: XRay) -> Region:
    """Columns reach at most v_i - 1 below/above the normalization triangle."""
    if any(c == 0 for c in v.counts):
        raise UnsupportedError("zero X-ray entries are not supported")
    lo = tuple(-(c - 1) for c in v.counts)
    hi = tuple(i + (c - 1) for i, c in enumerate(v.counts))
    k = sum(h - l + 1 for l, h in zip(lo, hi))
    return Region(m=len(v), v=v.counts, lo=lo, hi=hi, k=k)


@dataclass(frozen=True)
class Quad:
    """Lower segment (lo1, lo2) and upper segment (up1, up2), x-ascending."""

    lo1: Point
    lo2: Point
    up1: Point
    up2: Point

    @property
    def span(self) -> Tuple[int, int]:
        """Common column interval of the two segments."""
        return max(self.lo1.x, self.up1.x), min(self.lo2.x, self.up2.x)

    def key(self) -> Tuple[Point, Point, Point, Point]:
        return (self.lo1, self.lo2, self.up1, self.up2)


def _segment_y(p1: Point, p2: Point, x: int) -> Tuple[int, int]:
    """Exact rational ordinate (num, den>0) of the segment at column x."""
    if p1.x == p2.x:
        return p1.y, 1
    den = p2.x - p1.x
    return p1.y * den + (p2.y - p1.y) * (x - p1.x), den


def _strictly_convex_cycle(pts: Sequence[Point]) -> bool:
    k = len(pts)
    for i in range(k):
        if cross(pts[i], pts[(i + 1) % k], pts[(i + 2) % k]) <= 0:
            return False
    return True


def _shape_ok(q: Quad, m: int) -> bool:
    """Segment ordering, shared-vertex rules and convex position.

    Shared vertices are allowed only at the origin, at x = m-1, or for a
    fully degenerate one-row quad."""
    if q.lo1.x > q.lo2.x or q.up1.x > q.up2.x:
        return False
    if q.lo1 == q.lo2 or q.up1 == q.up2:
        return False  # point segments never arise for m >= 2
    if q.lo1 == q.up1 and q.lo2 == q.up2:
        return True  # one-row quad, both segments equal
    if q.lo1 == q.up1 and q.lo1 != Point(0, 0):
        return False
    if q.lo2 == q.up2 and q.lo2.x != m - 1:
        return False
    verts = [q.lo1, q.lo2]
    if q.up2 != q.lo2:
        verts.append(q.up2)
    if q.up1 != q.lo1:
        verts.append(q.up1)
    return _strictly_convex_cycle(verts)


def quad_valid(q: Quad, v: XRay, r: Region) -> bool:
    """All quad invariants: vertices in the region and in convex position
    (shared vertices only at the origin, at x = m-1, or for a fully
    degenerate one-row quad), and every common column holding exactly the
    prescribed number of lattice points."""
    for p in (q.lo1, q.lo2, q.up1, q.up2):
        if not r.contains(p):
            return False
    if not _shape_ok(q, r.m):
        return False
    a, b = q.span
    if a > b:
        return False
    for x in range(a, b + 1):
        lo_num, lo_den = _segment_y(q.lo1, q.lo2, x)
        hi_num, hi_den = _segment_y(q.up1, q.up2, x)
        count = floor_div(hi_num, hi_den) - ceil_div(lo_num, lo_den) + 1
        if count != v[x]:
            return False
    return True


def left_quads(v: XRay, r: Region) -> List[Quad]:
    """Quads anchored at column 0: lower start (0,0), upper start (0, v_0-1)."""
    lo_start = Point(0, 0)
    up_start = Point(0, v[0] - 1)
    candidates = []
    for lo2 in r.points():
        if lo2.x == 0:
            continue
        for up2 in _continuations(up_start, up_start, lo2.x, v, r,
                                  upper=True, other=(lo_start, lo2)):
            q = Quad(lo_start, lo2, up_start, up2)
            if quad_valid(q, v, r):
                candidates.append(q)
    return sorted(candidates, key=Quad.key)


def is_right_quad(q: Quad, v: XRay) -> bool:
    """Right end is the vertical run of the last column, bottom y in [0, m-1)."""
    m = len(v)
    if q.lo2.x != m - 1 or q.up2.x != m - 1:
        return False
    if not (0 <= q.lo2.y <= m - 2) and m > 1:
        return False
    return q.up2.y - q.lo2.y == v[m - 1] - 1


def quad_successors(q: Quad, v: XRay, r: Region) -> List[Quad]:
    """Valid quads sharing one segment, the other replaced by a consecutive
    segment with a strictly convex junction.

    Candidates are generated by propagating the per-column count constraints
    as exact integer bounds on the new endpoint, column distance by column
    distance, instead of scanning the whole region.
    """
    out: List[Quad] = []
    m = r.m
    # advance the upper segment: junction at up2, upper chain turns right;
    # the junction may not overrun the other segment's end or the common
    # column interval of the new quad would be empty
    j = q.up2
    if j.x < m - 1 and j.x <= q.lo2.x:
        span_end = q.lo2.x  # count constraints live on common columns only
        for nxt in _continuations(j, q.up1, span_end, v, r, upper=True,
                                  other=(q.lo1, q.lo2)):
            cand = Quad(q.lo1, q.lo2, j, nxt)
            if _shape_ok(cand, m):
                out.append(cand)
    # advance the lower segment: junction at lo2, lower chain turns left
    j = q.lo2
    if j.x < m - 1 and j.x <= q.up2.x:
        span_end = q.up2.x
        for nxt in _continuations(j, q.lo1, span_end, v, r, upper=False,
                                  other=(q.up1, q.up2)):
            cand = Quad(j, nxt, q.up1, q.up2)
            if _shape_ok(cand, m):
                out.append(cand)
    return sorted(out, key=Quad.key)


def _continuations(j: Point, prev: Point, span_end: int, v: XRay, r: Region,
                   upper: bool, other: Tuple[Point, Point]) -> List[Point]:
    """Endpoints R (R.x > j.x) such that the segment (j, R) turns strictly
    convexly at ``j`` and gives exactly the prescribed count on every common
    column up to ``span_end``, paired against the fixed ``other`` segment.

    The per-column count condition confines the slope of (j, R) to an exact
    rational interval that only shrinks while columns accumulate, so the
    interval is maintained as integer fractions and each column distance d
    yields a contiguous y-range of candidates.
    """
    o1, o2 = other
    res: List[Point] = []
    # slope interval: lo_n/lo_d  (<| <=)  slope  (<| <=)  hi_n/hi_d
    lo_n, lo_d, lo_open = -1, 0, True  # -infinity
    hi_n, hi_d, hi_open = 1, 0, True  # +infinity
    pdx = j.x - prev.x
    pdy = j.y - prev.y
    if pdx > 0:
        if upper:
            hi_n, hi_d, hi_open = pdy, pdx, True  # slope < previous slope
        else:
            lo_n, lo_d, lo_open = pdy, pdx, True  # slope > previous slope

    def empty() -> bool:
        if lo_d == 0 or hi_d == 0:
            return False
        lhs = lo_n * hi_d
        rhs = hi_n * lo_d
        if lhs > rhs:
            return True
        return lhs == rhs and (lo_open or hi_open)

    max_t = span_end - j.x
    for d in range(1, r.m - j.x):
        x = j.x + d
        if d <= max_t:
            onum, oden = _segment_y(o1, o2, x)
            if upper:
                base = ceil_div(onum, oden) + v[x] - 1
                cand_lo = (base - j.y, d, False)  # slope >= (base - j.y)/d
                cand_hi = (base + 1 - j.y, d, True)  # slope < (base+1-j.y)/d
            else:
                base = floor_div(onum, oden) - v[x] + 1
                cand_lo = (base - 1 - j.y, d, True)  # slope > (base-1-j.y)/d
                cand_hi = (base - j.y, d, False)  # slope <= (base - j.y)/d
            cn, cd, copen = cand_lo
            if lo_d == 0 or cn * lo_d > lo_n * cd or (cn * lo_d == lo_n * cd and copen):
                lo_n, lo_d, lo_open = cn, cd, copen
            cn, cd, copen = cand_hi
            if hi_d == 0 or cn * hi_d < hi_n * cd or (cn * hi_d == hi_n * cd and copen):
                hi_n, hi_d, hi_open = cn, cd, copen
            if empty():
                return res
        # integer dy range at distance d from the current slope interval
        if lo_d == 0:
            dy_min = r.lo[x] - j.y
        else:
            q0 = ceil_div(lo_n * d, lo_d)
            if lo_open and q0 * lo_d == lo_n * d:
                q0 += 1
            dy_min = q0
        if hi_d == 0:
            dy_max = r.hi[x] - j.y
        else:
            q1 = floor_div(hi_n * d, hi_d)
            if hi_open and q1 * hi_d == hi_n * d:
                q1 -= 1
            dy_max = q1
        ylo = max(r.lo[x], j.y + dy_min)
        yhi = min(r.hi[x], j.y + dy_max)
        for yy in range(ylo, yhi + 1):
            res.append(Point(x, yy))
    return res


@dataclass
class SearchStats:
    expanded: int = 0
    generated: int = 0


def _quad_points(q: Quad) -> Iterable[Point]:
    a, b = q.span
    for x in range(a, b + 1):
        lo_num, lo_den = _segment_y(q.lo1, q.lo2, x)
        hi_num, hi_den = _segment_y(q.up1, q.up2, x)
        for y in range(ceil_div(lo_num, lo_den), floor_div(hi_num, hi_den) + 1):
            yield Point(x, y)


def _assemble(path: List[Quad]) -> LatticeSet:
    pts = set()
    for q in path:
        pts.update(_quad_points(q))
    return LatticeSet(frozenset(pts))


def _validate1(s: LatticeSet, v: XRay, r: Region) -> bool:
    if not all(r.contains(p) for p in s.points):
        return False
    col0 = [p.y for p in s.points if p.x == 0]
    if not col0 or min(col0) != 0:
        return False
    counts = [0] * r.m
    for p in s.points:
        counts[p.x] += 1
    return tuple(counts) == v.counts and is_digital_convex(s)


def reconstruct1(v_counts: Sequence[int]) -> Optional[LatticeSet]:
    """Breadth-first path search from the left quads to a right quad.

    Returns a digital convex set with the prescribed vertical X-ray in
    normalized coordinates (lowest point of column 0 at the origin), or
    None when no path exists.
    """
    sol, _ = _run_search(v_counts)
    return sol


def _run_search(v_counts: Sequence[int]) -> Tuple[Optional[LatticeSet], SearchStats]:
    v = XRay(tuple(v_counts), Axis.VERTICAL)
    if any(c == 0 for c in v.counts):
        raise UnsupportedError("zero X-ray entries are not supported")
    stats = SearchStats()
    if len(v) == 1:
        col = LatticeSet.of((0, y) for y in range(v[0]))
        return col, stats

    r = build_region(v)
    parents: Dict[Tuple[Point, Point, Point, Point], Optional[Quad]] = {}
    queue = deque()
    for q in left_quads(v, r):
        key = q.key()
        if key not in parents:
            parents[key] = None
            queue.append(q)
            stats.generated += 1
    while queue:
        q = queue.popleft()
        stats.expanded += 1
        if is_right_quad(q, v):
            path = [q]
            cur = parents[q.key()]
            while cur is not None:
                path.append(cur)
                cur = parents[cur.key()]
            sol = _assemble(path[::-1])
            if _validate1(sol, v, r):
                return sol, stats
            continue
        for nxt in quad_successors(q, v, r):
            key = nxt.key()
            if key not in parents:
                parents[key] = q
                queue.append(nxt)
                stats.generated += 1
    return None, stats
