"""Reconstruction of fat digital convex sets from two X-rays.

After the convex filling step the undetermined points of a fat placement sit
in four corner regions separated by a cross of fully determined strips.  The
aggregation searches a DAG whose nodes are octagons: one candidate hull edge
per corner, drawn from that corner's potential vertices (undetermined border
points plus kernel-hull vertices).  An octagon is a node when each edge's
support line keeps the whole kernel on one side, its hull swallows no
excluded point, and every row and column it spans holds exactly the
prescribed count.  Edges of the DAG move a single segment one step along its
corner; a path from the strip-crossing Start octagons to the End octagons
sweeps every remaining line, so its union with the kernel is a solution.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .errors import MalformedResidualError
from .filling import (
    Borders,
    Complete,
    Contradiction,
    FeetPlacement,
    FillMode,
    KERNEL,
    OUT,
    Partition,
    init_partition,
    run_filling,
)
from .hull import Point, ceil_div, cross, floor_div, hull_chains, lattice_points_between
from .hvpoly import iter_placements, trim_boundary_zeros
from .lattice import (
    Axis,
    LatticeSet,
    XRay,
    classify_fatness,
    compute_xrays,
    feet,
    is_digital_convex,
)

__all__ = [
    "Strips",
    "PotentialVertices",
    "Octagon",
    "enumerate_feet_placements",
    "compute_strips",
    "potential_vertices",
    "octagon_valid",
    "start_end_class",
    "octagon_successors",
    "aggregate_search",
    "reconstruct2",
]

Segment = Tuple[Point, Point]
CORNERS = ("nw", "ne", "sw", "se")

# Sweep-order sort keys, turn/support-line orientation signs and the
# direction each endpoint moves along the chain, per corner.
_SORT_KEY = {
    "nw": lambda p: (p.x, p.y),
    "ne": lambda p: (-p.x, p.y),
    "sw": lambda p: (p.x, -p.y),
    "se": lambda p: (-p.x, -p.y),
}
_SIGN = {"nw": -1, "ne": 1, "sw": 1, "se": -1}
_DELTA = {"nw": (1, 1), "ne": (-1, 1), "sw": (1, -1), "se": (-1, -1)}


@dataclass(frozen=True)
class Strips:
    """Fully determined central strips: inclusive row and column intervals."""

    hstrip: Tuple[int, int]
    vstrip: Tuple[int, int]

    def row_in(self, j: int) -> bool:
        return self.hstrip[0] <= j <= self.hstrip[1]

    def col_in(self, i: int) -> bool:
        return self.vstrip[0] <= i <= self.vstrip[1]


@dataclass(frozen=True)
class PotentialVertices:
    """Per corner: undetermined border points plus kernel-hull chain
    vertices, ordered along the sweep direction of that corner."""

    nw: Tuple[Point, ...]
    ne: Tuple[Point, ...]
    sw: Tuple[Point, ...]
    se: Tuple[Point, ...]

    def corner(self, name: str) -> Tuple[Point, ...]:
        return getattr(self, name)


@dataclass(frozen=True)
class Octagon:
    """One candidate hull edge per corner, endpoints in sweep order."""

    s_nw: Segment
    s_ne: Segment
    s_sw: Segment
    s_se: Segment

    def segment(self, name: str) -> Segment:
        return getattr(self, "s_" + name)

    def replace(self, name: str, seg: Segment) -> "Octagon":
        parts = {c: self.segment(c) for c in CORNERS}
        parts[name] = seg
        return Octagon(s_nw=parts["nw"], s_ne=parts["ne"], s_sw=parts["sw"], s_se=parts["se"])

    def vertices(self) -> List[Point]:
        out = []
        for c in CORNERS:
            seg = self.segment(c)
            out.extend(seg)
        return out

    def key(self):
        return (self.s_nw, self.s_ne, self.s_sw, self.s_se)


def enumerate_feet_placements(h: XRay, v: XRay) -> List[FeetPlacement]:
    """All boundary-run placements whose feet are in a fat configuration."""
    return [fp for fp in iter_placements(h, v) if classify_fatness(fp.to_feet()).is_fat]


def compute_strips(p: Partition) -> Strips:
    """Maximal fully determined row interval around the west/east feet rows,
    and column interval around the south/north feet columns."""
    m, n = p.m, p.n
    wlo, whi = p.col_span(0)
    elo, ehi = p.col_span(m - 1)
    r_lo, r_hi = min(wlo, elo), max(whi, ehi)
    for j in range(r_lo, r_hi + 1):
        if p.row_undet_count(j) != 0:
            raise MalformedResidualError(f"undetermined cell in a west/east foot row {j}")
    while r_lo > 0 and p.row_undet_count(r_lo - 1) == 0:
        r_lo -= 1
    while r_hi < n - 1 and p.row_undet_count(r_hi + 1) == 0:
        r_hi += 1

    slo, shi = p.row_span(0)
    nlo, nhi = p.row_span(n - 1)
    c_lo, c_hi = min(slo, nlo), max(shi, nhi)
    for i in range(c_lo, c_hi + 1):
        if p.col_undet_count(i) != 0:
            raise MalformedResidualError(f"undetermined cell in a south/north foot column {i}")
    while c_lo > 0 and p.col_undet_count(c_lo - 1) == 0:
        c_lo -= 1
    while c_hi < m - 1 and p.col_undet_count(c_hi + 1) == 0:
        c_hi += 1
    return Strips(hstrip=(r_lo, r_hi), vstrip=(c_lo, c_hi))


def potential_vertices(p: Partition, b: Borders) -> PotentialVertices:
    """Union of each corner's undetermined points with the kernel-hull chain
    vertices between the matching feet, in sweep order."""
    upper = p.hull.upper
    lower = p.hull.lower
    maxy = max(pt.y for pt in upper)
    miny = min(pt.y for pt in lower)
    i_nl = next(i for i, pt in enumerate(upper) if pt.y == maxy)
    i_nr = max(i for i, pt in enumerate(upper) if pt.y == maxy)
    i_sl = next(i for i, pt in enumerate(lower) if pt.y == miny)
    i_sr = max(i for i, pt in enumerate(lower) if pt.y == miny)
    chains = {
        "nw": upper[: i_nl + 1],
        "ne": upper[i_nr:][::-1],
        "sw": lower[: i_sl + 1],
        "se": lower[i_sr:][::-1],
    }
    borders = {"nw": b.nw, "ne": b.ne, "sw": b.sw, "se": b.se}
    lists = {}
    for c in CORNERS:
        pts = set(chains[c]) | set(borders[c].points)
        lists[c] = tuple(sorted(pts, key=_SORT_KEY[c]))
    return PotentialVertices(nw=lists["nw"], ne=lists["ne"], sw=lists["sw"], se=lists["se"])


class OctagonContext:
    """Shared immutable state for octagon validity and the path search."""

    def __init__(self, p: Partition, h: XRay, v: XRay, st: Strips, pv: PotentialVertices):
        self.p = p
        self.h = h
        self.v = v
        self.st = st
        self.pv = pv
        self.hull_vertices = p.hull.vertices()
        self.positions = {
            c: {pt: i for i, pt in enumerate(pv.corner(c))} for c in CORNERS
        }
        self._segment_ok: Dict[Tuple[str, Segment], bool] = {}
        self._octagon_ok: Dict[tuple, bool] = {}

    def segment_ok(self, corner: str, seg: Segment) -> bool:
        """Corner-direction deltas plus the support-line condition."""
        key = (corner, seg)
        cached = self._segment_ok.get(key)
        if cached is not None:
            return cached
        p1, q1 = seg
        dx, dy = _DELTA[corner]
        ok = (q1.x - p1.x) * dx > 0 and (q1.y - p1.y) * dy > 0
        if ok:
            sign = _SIGN[corner]
            for vtx in self.hull_vertices:
                c = cross(p1, q1, vtx)
                if c * sign < 0:
                    ok = False
                    break
        self._segment_ok[key] = ok
        return ok


def _seg_x_at(seg: Segment, j: int) -> Tuple[int, int]:
    """Exact rational abscissa (num, den>0) of the segment at row j."""
    p1, q1 = seg
    lo, hi = (p1, q1) if p1.y < q1.y else (q1, p1)
    den = hi.y - lo.y
    num = lo.x * den + (hi.x - lo.x) * (j - lo.y)
    return num, den


def _seg_y_at(seg: Segment, i: int) -> Tuple[int, int]:
    """Exact rational ordinate (num, den>0) of the segment at column i."""
    p1, q1 = seg
    lo, hi = (p1, q1) if p1.x < q1.x else (q1, p1)
    den = hi.x - lo.x
    num = lo.y * den + (hi.y - lo.y) * (i - lo.x)
    return num, den


def _rows_of(seg: Segment) -> Tuple[int, int]:
    p1, q1 = seg
    return (p1.y, q1.y) if p1.y <= q1.y else (q1.y, p1.y)


def _cols_of(seg: Segment) -> Tuple[int, int]:
    p1, q1 = seg
    return (p1.x, q1.x) if p1.x <= q1.x else (q1.x, p1.x)


def _intersect(a: Tuple[int, int], b: Tuple[int, int]) -> Optional[Tuple[int, int]]:
    lo, hi = max(a[0], b[0]), min(a[1], b[1])
    return (lo, hi) if lo <= hi else None


def _spans(q: Octagon, st: Strips, n: int, m: int) -> Optional[dict]:
    """rows()/columns() per segment with the strip extensions applied."""
    rows = {}
    cols = {}
    for c in CORNERS:
        p1, q1 = q.segment(c)
        r = _rows_of((p1, q1))
        k = _cols_of((p1, q1))
        if st.col_in(q1.x):  # chain reached the vertical strip
            r = (0, r[1]) if c in ("sw", "se") else (r[0], n - 1)
        if st.row_in(p1.y):  # chain anchored in the horizontal strip
            k = (0, k[1]) if c in ("nw", "sw") else (k[0], m - 1)
        rows[c] = r
        cols[c] = k
    north = _intersect(rows["nw"], rows["ne"])
    south = _intersect(rows["sw"], rows["se"])
    west = _intersect(cols["nw"], cols["sw"])
    east = _intersect(cols["ne"], cols["se"])
    if north is None or south is None or west is None or east is None:
        return None
    return {"rows": rows, "cols": cols, "north": north, "south": south,
            "west": west, "east": east}


def _row_bound(ctx: OctagonContext, seg: Segment, j: int, left_side: bool) -> Optional[int]:
    """Integer bound of row j: from the segment when crossed, else from the
    kernel-hull chain (the kernel run of the row)."""
    rlo, rhi = _rows_of(seg)
    if rlo <= j <= rhi:
        num, den = _seg_x_at(seg, j)
        return ceil_div(num, den) if left_side else floor_div(num, den)
    bx, cx = ctx.p.row_span(j)
    if bx > cx:
        return None
    return bx if left_side else cx


def _col_bound(ctx: OctagonContext, seg: Segment, i: int, bottom_side: bool) -> Optional[int]:
    clo, chi = _cols_of(seg)
    if clo <= i <= chi:
        num, den = _seg_y_at(seg, i)
        return ceil_div(num, den) if bottom_side else floor_div(num, den)
    by, cy = ctx.p.col_span(i)
    if by > cy:
        return None
    return by if bottom_side else cy


def octagon_valid(q: Octagon, h: XRay, v: XRay, p: Partition, st: Strips,
                  ctx: Optional[OctagonContext] = None) -> bool:
    """Support lines, no excluded point inside, non-empty coverage, and the
    exact prescribed count on every covered row and column outside the
    strips."""
    if ctx is None:
        ctx = OctagonContext(p, h, v, st, potential_vertices(p, _borders_of(p)))
    cached = ctx._octagon_ok.get(q.key())
    if cached is not None:
        return cached
    ok = _octagon_valid_uncached(q, ctx)
    ctx._octagon_ok[q.key()] = ok
    return ok


def _borders_of(p: Partition):
    from .filling import partition_borders

    return partition_borders(p)


def _octagon_valid_uncached(q: Octagon, ctx: OctagonContext) -> bool:
    h, v, st, p = ctx.h, ctx.v, ctx.st, ctx.p
    n, m = len(h), len(v)
    for c in CORNERS:
        if not ctx.segment_ok(c, q.segment(c)):
            return False
    spans = _spans(q, st, n, m)
    if spans is None:
        return False
    # exact counts on covered lines outside the strips
    for j in range(spans["north"][0], spans["north"][1] + 1):
        if st.row_in(j):
            continue
        xl = _row_bound(ctx, q.s_nw, j, left_side=True)
        xr = _row_bound(ctx, q.s_ne, j, left_side=False)
        if xl is None or xr is None or xr - xl + 1 != h[j]:
            return False
    for j in range(spans["south"][0], spans["south"][1] + 1):
        if st.row_in(j):
            continue
        xl = _row_bound(ctx, q.s_sw, j, left_side=True)
        xr = _row_bound(ctx, q.s_se, j, left_side=False)
        if xl is None or xr is None or xr - xl + 1 != h[j]:
            return False
    for i in range(spans["west"][0], spans["west"][1] + 1):
        if st.col_in(i):
            continue
        yb = _col_bound(ctx, q.s_sw, i, bottom_side=True)
        yt = _col_bound(ctx, q.s_nw, i, bottom_side=False)
        if yb is None or yt is None or yt - yb + 1 != v[i]:
            return False
    for i in range(spans["east"][0], spans["east"][1] + 1):
        if st.col_in(i):
            continue
        yb = _col_bound(ctx, q.s_se, i, bottom_side=True)
        yt = _col_bound(ctx, q.s_ne, i, bottom_side=False)
        if yb is None or yt is None or yt - yb + 1 != v[i]:
            return False
    # no excluded point inside the octagon hull
    lower, upper = hull_chains(q.vertices())
    for pt in lattice_points_between(lower, upper):
        if 0 <= pt.x < m and 0 <= pt.y < n and p.status(pt.x, pt.y) == OUT:
            return False
    return True


def start_end_class(q: Octagon, st: Strips) -> Tuple[bool, bool]:
    """(is_start, is_end): every segment crosses the horizontal strip
    boundary for Start, the vertical strip boundary for End."""
    is_start = all(
        (st.row_in(seg[0].y)) != (st.row_in(seg[1].y)) for seg in (q.s_nw, q.s_ne, q.s_sw, q.s_se)
    )
    is_end = all(
        (st.col_in(seg[0].x)) != (st.col_in(seg[1].x)) for seg in (q.s_nw, q.s_ne, q.s_sw, q.s_se)
    )
    return is_start, is_end


def octagon_successors(q: Octagon, ctx: OctagonContext) -> List[Octagon]:
    """Octagons that replace one segment (P, Q) by a consecutive (Q, R) with
    a convex junction; collinear junctions keep the hull union convex and
    are accepted."""
    out: List[Octagon] = []
    for c in CORNERS:
        p1, q1 = q.segment(c)
        lst = ctx.pv.corner(c)
        pos = ctx.positions[c].get(q1)
        if pos is None:
            continue
        sign = _SIGN[c]
        for r1 in lst[pos + 1:]:
            if cross(p1, q1, r1) * sign < 0:
                continue
            if not ctx.segment_ok(c, (q1, r1)):
                continue
            cand = q.replace(c, (q1, r1))
            if octagon_valid(cand, ctx.h, ctx.v, ctx.p, ctx.st, ctx):
                out.append(cand)
    return out


def _start_octagons(ctx: OctagonContext) -> List[Octagon]:
    st = ctx.st
    per_corner: Dict[str, List[Segment]] = {}
    for c in CORNERS:
        lst = ctx.pv.corner(c)
        segs = []
        for i, p1 in enumerate(lst):
            if not st.row_in(p1.y):
                continue
            for q1 in lst[i + 1:]:
                if st.row_in(q1.y):
                    continue
                if ctx.segment_ok(c, (p1, q1)):
                    segs.append((p1, q1))
        per_corner[c] = segs
    starts = []
    for s_nw in per_corner["nw"]:
        for s_ne in per_corner["ne"]:
            for s_sw in per_corner["sw"]:
                for s_se in per_corner["se"]:
                    cand = Octagon(s_nw=s_nw, s_ne=s_ne, s_sw=s_sw, s_se=s_se)
                    if octagon_valid(cand, ctx.h, ctx.v, ctx.p, ctx.st, ctx):
                        starts.append(cand)
    return sorted(starts, key=Octagon.key)


def _octagon_points(q: Octagon) -> List[Point]:
    lower, upper = hull_chains(q.vertices())
    return lattice_points_between(lower, upper)


def _assemble_path(ctx: OctagonContext, path: List[Octagon]) -> Optional[LatticeSet]:
    n, m = len(ctx.h), len(ctx.v)
    st = ctx.st
    covered_rows: Set[int] = set(range(st.hstrip[0], st.hstrip[1] + 1))
    covered_cols: Set[int] = set(range(st.vstrip[0], st.vstrip[1] + 1))
    pts = set(ctx.p.cells_with(KERNEL))
    for q in path:
        spans = _spans(q, st, n, m)
        if spans is None:
            return None
        covered_rows.update(range(spans["north"][0], spans["north"][1] + 1))
        covered_rows.update(range(spans["south"][0], spans["south"][1] + 1))
        covered_cols.update(range(spans["west"][0], spans["west"][1] + 1))
        covered_cols.update(range(spans["east"][0], spans["east"][1] + 1))
        pts.update(_octagon_points(q))
    if covered_rows != set(range(n)) or covered_cols != set(range(m)):
        return None  # the path failed to sweep every line
    return LatticeSet(frozenset(pts))


def aggregate_search(p: Partition, h: XRay, v: XRay, st: Strips,
                     pv: PotentialVertices) -> Optional[LatticeSet]:
    """Depth-first search from the Start octagons; on reaching an End
    octagon, the union of the path octagons with the kernel is returned
    after validation."""
    ctx = OctagonContext(p, h, v, st, pv)
    parents: Dict[tuple, Optional[Octagon]] = {}
    stack: List[Octagon] = []
    for s in _start_octagons(ctx):
        key = s.key()
        if key not in parents:
            parents[key] = None
            stack.append(s)
    stack.reverse()  # explore in canonical order
    while stack:
        q = stack.pop()
        _, is_end = start_end_class(q, st)
        if is_end:
            path = [q]
            cur = parents[q.key()]
            while cur is not None:
                path.append(cur)
                cur = parents[cur.key()]
            sol = _assemble_path(ctx, path[::-1])
            if sol is not None and _validate2(sol, h, v):
                return sol
            continue
        succ = octagon_successors(q, ctx)
        for nxt in reversed(succ):
            key = nxt.key()
            if key not in parents:
                parents[key] = q
                stack.append(nxt)
    return None


def _validate2(sol: LatticeSet, h: XRay, v: XRay, fp: Optional[FeetPlacement] = None) -> bool:
    if len(sol) != h.total:
        return False
    try:
        sh, sv = compute_xrays(sol, len(v), len(h))
    except Exception:
        return False
    if sh.counts != h.counts or sv.counts != v.counts:
        return False
    if not is_digital_convex(sol):
        return False
    ft = feet(sol)
    if not classify_fatness(ft).is_fat:
        return False
    return fp is None or ft == fp.to_feet()


def _attempt_placement(fp: FeetPlacement, h: XRay, v: XRay) -> Optional[LatticeSet]:
    part = init_partition(len(v), len(h), fp)
    if isinstance(part, Contradiction):
        return None
    try:
        outcome = run_filling(part, h, v, FillMode.DIGITAL_CONVEX)
    except MalformedResidualError:
        return None
    if isinstance(outcome, Contradiction):
        return None
    if isinstance(outcome, Complete):
        return outcome.solution if _validate2(outcome.solution, h, v, fp) else None
    try:
        st = compute_strips(outcome.partition)
    except MalformedResidualError:
        return None
    pv = potential_vertices(outcome.partition, outcome.borders)
    sol = aggregate_search(outcome.partition, h, v, st, pv)
    if sol is not None and _validate2(sol, h, v, fp):
        return sol
    return None


def reconstruct2(h_counts: Sequence[int], v_counts: Sequence[int], jobs: int = 1) -> Optional[LatticeSet]:
    """Try every fat feet placement in lexicographic order: fill, then
    aggregate through the octagon DAG.  Returns a validated fat digital
    convex set with the exact X-rays, or None."""
    h0 = XRay(tuple(h_counts), Axis.HORIZONTAL)
    v0 = XRay(tuple(v_counts), Axis.VERTICAL)
    if h0.total != v0.total or h0.total == 0:
        return None
    h, v, dx, dy = trim_boundary_zeros(h0, v0)
    m, n = len(v), len(h)
    if any(c > m for c in h.counts) or any(c > n for c in v.counts):
        return None
    placements = enumerate_feet_placements(h, v)
    if jobs <= 1:
        for fp in placements:
            sol = _attempt_placement(fp, h, v)
            if sol is not None:
                return sol.translate(dx, dy)
        return None
    # Fan placements out in chunks; the lowest placement index that succeeds
    # wins, so the result does not depend on the worker count.
    chunk = max(1, 4 * jobs)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for base in range(0, len(placements), chunk):
            batch = placements[base:base + chunk]
            for sol in pool.map(lambda fp: _attempt_placement(fp, h, v), batch):
                if sol is not None:
                    return sol.translate(dx, dy)
    return None
