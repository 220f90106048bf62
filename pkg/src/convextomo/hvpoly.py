"""Reconstruction of HV-convex polyominoes from two X-rays.

For a fixed placement of the four feet, the filling step leaves a residual
whose undetermined points pair up along rows and columns: exactly one point
of each pair belongs to any solution, so the pairs form a 2-regular graph
whose cycles are the switching components.  Choosing which points to
aggregate is encoded as a 2-SAT instance: pair variables negate each other,
and row/column convexity forces every undetermined point between a chosen
point and the kernel to be chosen too.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ContradictionSignal, MalformedResidualError, UnsupportedError
from .filling import (
    Complete,
    Contradiction,
    FeetPlacement,
    FillMode,
    KERNEL,
    Partition,
    UNDET,
    init_partition_raw,
    placement_corners_consistent,
    run_filling,
)
from .hull import Point
from .lattice import Axis, LatticeSet, XRay, classify_set, compute_xrays, feet


class Side(enum.Enum):
    SOUTH = "south"
    NORTH = "north"
    WEST = "west"
    EAST = "east"


class Parity(enum.Enum):
    SQUARE = "square"
    DIAMOND = "diamond"


def correspondent(p: Point, side: Side, h: XRay, v: XRay) -> Point:
    """Partner of an undetermined point on its column (south/north) or row
    (west/east); the solution contains exactly one point of each pair."""
    m, n = len(v), len(h)
    if side is Side.SOUTH:
        q = Point(p.x, p.y + v[p.x])
    elif side is Side.NORTH:
        q = Point(p.x, p.y - v[p.x])
    elif side is Side.WEST:
        q = Point(p.x + h[p.y], p.y)
    else:
        q = Point(p.x - h[p.y], p.y)
    if not (0 <= q.x < m and 0 <= q.y < n):
        raise ContradictionSignal(f"correspondent of {tuple(p)} falls outside the grid")
    return q


@dataclass(frozen=True)
class SwitchingComponent:
    """A cycle of corresponding undetermined points with alternating parity."""

    cycle: Tuple[Point, ...]
    parity: Tuple[Parity, ...]

    def parity_of(self, p: Point) -> Parity:
        return self.parity[self.cycle.index(p)]


def _point_sides(p: Partition, q: Point) -> Tuple[Side, Side]:
    """(vertical side, horizontal side) of an undetermined point relative to
    the kernel runs of its column and row."""
    by, cy = p.col_span(q.x)
    bx, cx = p.row_span(q.y)
    if by > cy or bx > cx:
        raise MalformedResidualError(f"undetermined point {tuple(q)} on a kernel-free line")
    vert = Side.SOUTH if q.y < by else Side.NORTH if q.y > cy else None
    horiz = Side.WEST if q.x < bx else Side.EAST if q.x > cx else None
    if vert is None or horiz is None:
        raise MalformedResidualError(f"undetermined point {tuple(q)} inside a kernel span")
    return vert, horiz


def build_switching_components(p: Partition, h: XRay, v: XRay) -> List[SwitchingComponent]:
    """Decompose the correspondence graph of the residual into cycles.

    Every undetermined point must have exactly one vertical and one
    horizontal correspondent, both undetermined; anything else means the
    residual is not in the shape the aggregation step understands.
    """
    undet = sorted(p.cells_with(UNDET))
    undet_set = set(undet)
    vpart: Dict[Point, Point] = {}
    hpart: Dict[Point, Point] = {}
    for q in undet:
        vert, horiz = _point_sides(p, q)
        try:
            qv = correspondent(q, vert, h, v)
            qh = correspondent(q, horiz, h, v)
        except ContradictionSignal as exc:
            raise MalformedResidualError(str(exc))
        if qv not in undet_set or qh not in undet_set:
            raise MalformedResidualError(f"correspondent of {tuple(q)} is already determined")
        vpart[q] = qv
        hpart[q] = qh
    for q in undet:
        if vpart.get(vpart[q]) != q or hpart.get(hpart[q]) != q:
            raise MalformedResidualError(f"correspondence at {tuple(q)} is not symmetric")

    comps: List[SwitchingComponent] = []
    seen = set()
    for start in undet:
        if start in seen:
            continue
        cycle = [start]
        parity = [Parity.SQUARE]
        seen.add(start)
        cur, via_vertical = vpart[start], True
        while cur != start:
            seen.add(cur)
            cycle.append(cur)
            parity.append(Parity.DIAMOND if parity[-1] is Parity.SQUARE else Parity.SQUARE)
            nxt = hpart[cur] if via_vertical else vpart[cur]
            cur, via_vertical = nxt, not via_vertical
        if len(cycle) % 2 != 0:
            raise MalformedResidualError("odd switching cycle")
        comps.append(SwitchingComponent(tuple(cycle), tuple(parity)))
    return comps


@dataclass(frozen=True)
class Cnf2:
    """A conjunction of 2-literal clauses; literal k is +/-(var+1)."""

    num_vars: int
    clauses: Tuple[Tuple[int, int], ...]


def build_aggregation_cnf(p: Partition, comps: Sequence[SwitchingComponent],
                          h: XRay, v: XRay) -> Tuple[Cnf2, List[Point]]:
    """One variable per undetermined point; returns the CNF and the variable
    order (sorted points).  Clauses: correspondent pairs take opposite
    values, and convexity pushes membership toward the kernel along lines."""
    undet = sorted(p.cells_with(UNDET))
    index = {q: i for i, q in enumerate(undet)}
    clauses: List[Tuple[int, int]] = []

    pairs = set()
    for comp in comps:
        cyc = comp.cycle
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            pairs.add((a, b) if a <= b else (b, a))
    for a, b in sorted(pairs):
        xa, xb = index[a] + 1, index[b] + 1
        clauses.append((xa, xb))
        clauses.append((-xa, -xb))

    def between_clauses(points_on_line, kmin, kmax, coord):
        below = sorted([q for q in points_on_line if coord(q) < kmin], key=coord)
        above = sorted([q for q in points_on_line if coord(q) > kmax], key=coord)
        for run, toward_kernel in ((below, True), (above, False)):
            ordered = run if toward_kernel else run[::-1]
            # ordered goes from far to near the kernel: choosing an outer
            # point forces every inner one.
            for i, outer in enumerate(ordered):
                for inner in ordered[i + 1:]:
                    clauses.append((-(index[outer] + 1), index[inner] + 1))

    by_row: Dict[int, List[Point]] = {}
    by_col: Dict[int, List[Point]] = {}
    for q in undet:
        by_row.setdefault(q.y, []).append(q)
        by_col.setdefault(q.x, []).append(q)
    for j, pts in sorted(by_row.items()):
        bx, cx = p.row_span(j)
        between_clauses(pts, bx, cx, lambda q: q.x)
    for i, pts in sorted(by_col.items()):
        by, cy = p.col_span(i)
        between_clauses(pts, by, cy, lambda q: q.y)

    return Cnf2(len(undet), tuple(clauses)), undet


def solve_2sat(f: Cnf2) -> Optional[Tuple[bool, ...]]:
    """Satisfying assignment via the implication graph, or None when some
    variable shares a strongly connected component with its negation.

    Literal encoding: variable i has nodes 2i (true) and 2i+1 (false); a
    clause (a or b) adds the implications not-a -> b and not-b -> a.  Tarjan
    components are produced in reverse topological order, so a literal whose
    component index is smaller than its negation's lies deeper and is safe
    to set true.
    """
    nv = f.num_vars
    size = 2 * nv
    adj: List[List[int]] = [[] for _ in range(size)]

    def node(lit: int) -> int:
        var = abs(lit) - 1
        return 2 * var if lit > 0 else 2 * var + 1

    def neg(nd: int) -> int:
        return nd ^ 1

    for a, b in f.clauses:
        adj[neg(node(a))].append(node(b))
        adj[neg(node(b))].append(node(a))

    comp = [-1] * size
    low = [0] * size
    num = [-1] * size
    counter = 0
    comp_count = 0
    stack: List[int] = []
    on_stack = [False] * size
    for root in range(size):
        if num[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            nd, ei = work[-1]
            if ei == 0:
                num[nd] = low[nd] = counter
                counter += 1
                stack.append(nd)
                on_stack[nd] = True
            advanced = False
            while ei < len(adj[nd]):
                nxt = adj[nd][ei]
                ei += 1
                if num[nxt] == -1:
                    work[-1] = (nd, ei)
                    work.append((nxt, 0))
                    advanced = True
                    break
                if on_stack[nxt]:
                    low[nd] = min(low[nd], num[nxt])
            if advanced:
                continue
            work.pop()
            if low[nd] == num[nd]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = comp_count
                    if w == nd:
                        break
                comp_count += 1
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[nd])

    assignment = []
    for i in range(nv):
        if comp[2 * i] == comp[2 * i + 1]:
            return None
        assignment.append(comp[2 * i] < comp[2 * i + 1])
    return tuple(assignment)


# Counter-example instance where the filling step succeeds but the
# aggregation 2-SAT is unsatisfiable, with the feet placement that exhibits
# it.  Feet coordinates are 0-based; this placement is the unique one for
# these X-rays whose filling stalls at a pairable residual (every other
# placement is contradictory or completes), with South = {(9,0),(10,0)},
# North = {(4,15)}, West = {(0,11)}, East = {(14,4)}.
@dataclass(frozen=True)
class BadGuy:
    h0: Tuple[int, ...]
    v0: Tuple[int, ...]
    placement: FeetPlacement

    @property
    def h(self) -> XRay:
        return XRay(self.h0, Axis.HORIZONTAL)

    @property
    def v(self) -> XRay:
        return XRay(self.v0, Axis.VERTICAL)


BAD_GUY = BadGuy(
    h0=(2, 4, 6, 7, 9, 8, 9, 9, 9, 7, 7, 8, 6, 5, 3, 1),
    v0=(1, 2, 7, 7, 10, 9, 11, 11, 9, 9, 9, 6, 6, 2, 1),
    placement=FeetPlacement(
        m=15, n=16,
        south_start=9, north_start=4, west_start=11, east_start=4,
        south_len=2, north_len=1, west_len=1, east_len=1,
    ),
)


def _trim_zeros(counts: Sequence[int]) -> Tuple[Tuple[int, ...], int]:
    lo = 0
    hi = len(counts)
    while lo < hi and counts[lo] == 0:
        lo += 1
    while hi > lo and counts[hi - 1] == 0:
        hi -= 1
    return tuple(counts[lo:hi]), lo


def trim_boundary_zeros(h: XRay, v: XRay) -> Tuple[XRay, XRay, int, int]:
    """Strip zero boundary lines; returns trimmed X-rays plus (dx, dy)
    offsets that restore original coordinates.  Interior zeros are not
    supported by the reconstruction machinery."""
    hc, dy = _trim_zeros(h.counts)
    vc, dx = _trim_zeros(v.counts)
    if not hc or not vc:
        raise UnsupportedError("empty X-rays after trimming")
    if any(c == 0 for c in hc) or any(c == 0 for c in vc):
        raise UnsupportedError("interior zero X-ray entries are not supported")
    return XRay(hc, Axis.HORIZONTAL), XRay(vc, Axis.VERTICAL), dx, dy


def iter_placements(h: XRay, v: XRay, corner_filter: bool = True):
    """Feet placements in lexicographic (south, north, west, east) order.

    With ``corner_filter`` (the default) placements whose feet disagree at a
    grid corner cell are dropped; they contradict at initialization anyway.
    """
    m, n = len(v), len(h)
    for ss in range(m - h[0] + 1):
        for ns in range(m - h[n - 1] + 1):
            for ws in range(n - v[0] + 1):
                for es in range(n - v[m - 1] + 1):
                    fp = FeetPlacement.from_xrays(h, v, ss, ns, ws, es)
                    if corner_filter and not placement_corners_consistent(fp):
                        continue
                    yield fp


def _validate_hv_solution(sol: LatticeSet, h: XRay, v: XRay, fp: FeetPlacement) -> bool:
    if len(sol) != h.total:
        return False
    try:
        sh, sv = compute_xrays(sol, len(v), len(h))
    except Exception:
        return False
    if sh.counts != h.counts or sv.counts != v.counts:
        return False
    flags = classify_set(sol)
    if not (flags.polyomino and flags.hv_convex):
        return False
    return feet(sol) == fp.to_feet()


def reconstruct_hv_polyomino(h_counts: Sequence[int], v_counts: Sequence[int]) -> Optional[LatticeSet]:
    """Search the feet placements; fill, then aggregate via 2-SAT.

    Returns the first assembled set (placements scanned lexicographically)
    validated to be a 4-connected HV-convex set with the exact X-rays, or
    None when every placement fails.
    """
    h0 = XRay(tuple(h_counts), Axis.HORIZONTAL)
    v0 = XRay(tuple(v_counts), Axis.VERTICAL)
    if h0.total != v0.total:
        return None
    if h0.total == 0:
        return None
    h, v, dx, dy = trim_boundary_zeros(h0, v0)
    m, n = len(v), len(h)
    if any(c > m for c in h.counts) or any(c > n for c in v.counts):
        return None

    sl, nl, wl, el = h[0], h[n - 1], v[0], v[m - 1]
    for ss in range(m - sl + 1):
        s_low = ss == 0
        s_high = ss + sl == m
        for ns in range(m - nl + 1):
            n_low = ns == 0
            n_high = ns + nl == m
            for ws in range(n - wl + 1):
                if n >= 2 and (s_low != (ws == 0) or n_low != (ws + wl == n)):
                    continue
                for es in range(n - el + 1):
                    if n >= 2 and (s_high != (es == 0) or n_high != (es + el == n)):
                        continue
                    part = init_partition_raw(m, n, ss, ns, ws, es, sl, nl, wl, el)
                    if isinstance(part, Contradiction):
                        continue
                    try:
                        outcome = run_filling(part, h, v, FillMode.HV_POLYOMINO)
                    except MalformedResidualError:
                        continue
                    if isinstance(outcome, Contradiction):
                        continue
                    fp = FeetPlacement(m=m, n=n, south_start=ss, north_start=ns,
                                       west_start=ws, east_start=es, south_len=sl,
                                       north_len=nl, west_len=wl, east_len=el)
                    if isinstance(outcome, Complete):
                        if _validate_hv_solution(outcome.solution, h, v, fp):
                            return outcome.solution.translate(dx, dy)
                        continue
                    try:
                        comps = build_switching_components(outcome.partition, h, v)
                        cnf, order = build_aggregation_cnf(outcome.partition, comps, h, v)
                    except MalformedResidualError:
                        continue
                    assignment = solve_2sat(cnf)
                    if assignment is None:
                        continue
                    chosen = [q for q, val in zip(order, assignment) if val]
                    sol = LatticeSet(frozenset(outcome.partition.cells_with(KERNEL)) | frozenset(chosen))
                    if _validate_hv_solution(sol, h, v, fp):
                        return sol.translate(dx, dy)
    return None
