"""Brute-force ground truth for the reconstruction pipelines at desk scale.

Digital convex sets are enumerated as stacks of per-row intervals with an
incremental hull prune: once the integer hull of the rows placed so far
grows a point that the stack does not contain in an already completed row,
no extension can repair it, so the branch dies.  The naive all-subsets
filter cross-checks the generator on tiny grids.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import UnsupportedError
from .hull import Point, hull_chains, lattice_points_between
from .lattice import (
    LatticeSet,
    classify_fatness,
    classify_set,
    feet,
    is_digital_convex,
)

__all__ = [
    "GridSpec",
    "enumerate_digital_convex",
    "naive_enumerate_digital_convex",
    "oracle_dt1",
    "oracle_dt2",
    "oracle_hv_polyomino",
]


@dataclass(frozen=True)
class GridSpec:
    """Grid dimensions plus an optional cap on the cell count of emitted sets."""

    m: int
    n: int
    cap: Optional[int] = None


def naive_enumerate_digital_convex(g: GridSpec) -> List[LatticeSet]:
    """Filter all non-empty subsets of the grid; exponential, tiny grids only."""
    if g.m * g.n > 25:
        raise UnsupportedError("naive enumeration needs m*n <= 25")
    cells = [Point(x, y) for y in range(g.n) for x in range(g.m)]
    result = []
    for r in range(1, len(cells) + 1):
        if g.cap is not None and r > g.cap:
            break
        for combo in itertools.combinations(cells, r):
            s = LatticeSet(frozenset(combo))
            if is_digital_convex(s):
                result.append(s)
    result.sort(key=lambda s: s.sorted_points)
    return result


def _hull_prune_ok(rows: List[Tuple[int, int, int]], complete_below: int) -> bool:
    """rows: (y, left, right) intervals placed so far, possibly with skipped
    rows in between.  Checks that the integer hull adds no point in rows
    strictly below ``complete_below`` (those can only grow, never shrink)."""
    pts = [Point(x, y) for (y, l, r) in rows for x in (l, r)]
    lower, upper = hull_chains(pts)
    intervals = {y: (l, r) for (y, l, r) in rows}
    for q in lattice_points_between(lower, upper):
        if q.y < complete_below:
            iv = intervals.get(q.y)
            if iv is None or not (iv[0] <= q.x <= iv[1]):
                return False
    return True


def enumerate_digital_convex(g: GridSpec) -> List[LatticeSet]:
    """Every non-empty digital convex subset of the grid, canonically ordered.

    Digital convex sets are row convex, so each is a stack of per-row
    intervals; rows may be skipped entirely when the hull pinches between
    lattice points (e.g. the lattice points of a steep segment).  The walk
    places an interval or a gap per row and prunes with the incremental
    hull test; the final digital-convexity check is authoritative.
    """
    if g.m * g.n > 25:
        raise UnsupportedError("exhaustive enumeration needs m*n <= 25")
    out: List[LatticeSet] = []

    def emit(rows: List[Tuple[int, int, int]]):
        pts = [Point(x, yy) for (yy, l, r) in rows for x in range(l, r + 1)]
        s = LatticeSet(frozenset(pts))
        if g.cap is None or len(s) <= g.cap:
            if is_digital_convex(s):
                out.append(s)

    def extend(y: int, rows: List[Tuple[int, int, int]]):
        emit(rows)  # stacks may stop at any occupied top row
        for gap in range(0, g.n - y):
            target = y + gap
            if target >= g.n:
                break
            for left in range(g.m):
                for right in range(left, g.m):
                    nxt = rows + [(target, left, right)]
                    if _hull_prune_ok(nxt, target):
                        extend(target + 1, nxt)

    for y0 in range(g.n):
        for left in range(g.m):
            for right in range(left, g.m):
                rows = [(y0, left, right)]
                if _hull_prune_ok(rows, y0):
                    extend(y0 + 1, rows)

    uniq = {s.sorted_points: s for s in out}
    return [uniq[k] for k in sorted(uniq)]


def _region_bounds(v: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Per-column y bounds of the normalized search region for one X-ray."""
    lo = [-(vi - 1) for vi in v]
    hi = [i + (vi - 1) for i, vi in enumerate(v)]
    return lo, hi


def oracle_dt1(v_counts: Sequence[int]) -> bool:
    """Existence of a digital convex set with the given vertical X-ray.

    Enumerates column-interval stacks inside the normalized region (lowest
    point of column 0 at the origin, right bottom sheared into [0, m-1)) and
    tests digital convexity; independent of the path-search reconstruction.
    """
    v = list(v_counts)
    if any(c <= 0 for c in v):
        raise UnsupportedError("zero X-ray entries are not supported")
    m = len(v)
    if m == 1:
        return True
    lo, hi = _region_bounds(v)

    def column_choices(i: int) -> List[int]:
        if i == 0:
            return [0]
        if i == m - 1:
            return [y for y in range(0, m - 1) if lo[i] <= y and y + v[i] - 1 <= hi[i]]
        return [y for y in range(lo[i], hi[i] - v[i] + 2)]

    def extend(i: int, cols: List[Tuple[int, int, int]]) -> bool:
        if i == m:
            pts = [Point(x, y) for (x, ylo, yhi) in cols for y in range(ylo, yhi + 1)]
            return is_digital_convex(LatticeSet(frozenset(pts)))
        for y in column_choices(i):
            nxt = cols + [(i, y, y + v[i] - 1)]
            if _col_hull_prune_ok(nxt, i):
                if extend(i + 1, nxt):
                    return True
        return False

    return extend(0, [])


def _col_hull_prune_ok(cols: List[Tuple[int, int, int]], complete_left: int) -> bool:
    pts = [Point(x, y) for (x, ylo, yhi) in cols for y in (ylo, yhi)]
    lower, upper = hull_chains(pts)
    intervals = {x: (ylo, yhi) for (x, ylo, yhi) in cols}
    for q in lattice_points_between(lower, upper):
        if q.x < complete_left:
            ylo, yhi = intervals[q.x]
            if not (ylo <= q.y <= yhi):
                return False
    return True


def oracle_dt2(h_counts: Sequence[int], v_counts: Sequence[int],
               fat_only: bool = False) -> Optional[LatticeSet]:
    """First digital convex subset (fat if requested) of the m-by-n grid
    with the prescribed X-rays, in deterministic row-position order."""
    h = list(h_counts)
    v = list(v_counts)
    m, n = len(v), len(h)
    if m * n > 25:
        raise UnsupportedError("oracle_dt2 needs m*n <= 25")
    if sum(h) != sum(v):
        return None
    if any(c < 0 for c in h) or any(c < 0 for c in v):
        return None
    if any(c > m for c in h) or any(c > n for c in v):
        return None

    def extend(j: int, rows: List[Tuple[int, int, int]], col_sums: List[int]) -> Optional[LatticeSet]:
        if j == n:
            if col_sums != v:
                return None
            pts = [Point(x, y) for (y, l, r) in rows for x in range(l, r + 1)]
            s = LatticeSet(frozenset(pts))
            if not is_digital_convex(s):
                return None
            if fat_only and not classify_fatness(feet(s)).is_fat:
                return None
            return s
        if h[j] == 0:
            return extend(j + 1, rows, col_sums)
        for l in range(m - h[j] + 1):
            r = l + h[j] - 1
            if any(col_sums[x] + 1 > v[x] for x in range(l, r + 1)):
                continue
            nxt = rows + [(j, l, r)]
            if not _hull_prune_ok(nxt, j):
                continue
            for x in range(l, r + 1):
                col_sums[x] += 1
            found = extend(j + 1, nxt, col_sums)
            for x in range(l, r + 1):
                col_sums[x] -= 1
            if found is not None:
                return found
        return None

    return extend(0, [], [0] * m)


def oracle_hv_polyomino(h_counts: Sequence[int], v_counts: Sequence[int]) -> Optional[LatticeSet]:
    """Row-interval depth-first search for an HV-convex polyomino.

    A candidate is one interval per occupied row; pruning enforces partial
    column sums, column convexity (a column once abandoned stays empty) and
    overlap of consecutive rows (4-connectivity for interval stacks).
    """
    h = list(h_counts)
    v = list(v_counts)
    m, n = len(v), len(h)
    if m > 20 or n > 20:
        raise UnsupportedError("oracle_hv_polyomino needs m, n <= 20")
    if sum(h) != sum(v) or sum(h) == 0:
        return None
    occupied = [j for j in range(n) if h[j] != 0]
    if not occupied:
        return None
    if occupied[-1] - occupied[0] + 1 != len(occupied):
        return None  # an interior empty row disconnects the set
    if any(c > m for c in h) or any(c > n for c in v):
        return None
    j0, j1 = occupied[0], occupied[-1]

    def extend(j: int, rows: List[Tuple[int, int, int]], col_sums: List[int]) -> Optional[LatticeSet]:
        if j > j1:
            if col_sums != v:
                return None
            pts = [Point(x, y) for (y, l, r) in rows for x in range(l, r + 1)]
            s = LatticeSet(frozenset(pts))
            flags = classify_set(s)
            if flags.polyomino and flags.hv_convex:
                return s
            return None
        prev = rows[-1] if rows else None
        for l in range(m - h[j] + 1):
            r = l + h[j] - 1
            if prev is not None and (l > prev[2] or r < prev[1]):
                continue  # consecutive rows must overlap
            ok = True
            for x in range(l, r + 1):
                if col_sums[x] + 1 > v[x]:
                    ok = False
                    break
                if col_sums[x] == 0 and rows and rows[0][0] < j:
                    # column restarts after a gap -> column convexity broken
                    below = any(lr[1] <= x <= lr[2] for lr in rows)
                    if below:
                        ok = False
                        break
            if not ok:
                continue
            closed_ok = True
            if prev is not None:
                for x in range(prev[1], prev[2] + 1):
                    if (x < l or x > r) and col_sums[x] != v[x]:
                        closed_ok = False
                        break
            if not closed_ok:
                continue
            for x in range(l, r + 1):
                col_sums[x] += 1
            found = extend(j + 1, rows + [(j, l, r)], col_sums)
            for x in range(l, r + 1):
                col_sums[x] -= 1
            if found is not None:
                return found
        return None

    return extend(j0, [], [0] * m)
