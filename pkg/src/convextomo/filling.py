"""Kernel / Out / Undetermined partition engine and filling operations.

The filling step deduces cell statuses from the prescribed X-rays and the
target class.  Row and column deductions use the feasible-window closure: a
line of prescribed count k is solved by a run of k consecutive cells that
avoids every excluded cell and contains every kernel cell of the line.  Cells
in every feasible run are forced into the kernel, cells in none are excluded,
and a line with no feasible run is a contradiction.  This reproduces the
classical interval updates (with their tight exclusion bounds) together with
the saturation rules, and stays sound for any row- and column-convex target.

Digital-convex reconstruction adds two hull-based operations: closing the
kernel under its integer hull, and excluding every undetermined point whose
aggregation would swallow an already excluded point into the hull.

Lines are stored as kernel/out bitmasks so the window scan is a handful of
integer operations; a worklist of dirty lines keeps re-deduction local to
what actually changed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import List, Optional, Set, Tuple, Union

from .errors import MalformedResidualError, UnsupportedError
from .hull import IncrementalHull, Point, hull_chains, lattice_points_between, point_in_hull
from .lattice import Feet, LatticeSet, XRay

UNDET, KERNEL, OUT = 0, 1, 2


class _Contra(Exception):
    """Internal signal: a cell was forced into both Kernel and Out."""


class FillMode(enum.Enum):
    HV_POLYOMINO = "hv-polyomino"
    DIGITAL_CONVEX = "digital-convex"


@dataclass(frozen=True)
class FeetPlacement:
    """Positions of the four feet runs on the grid boundary lines."""

    m: int
    n: int
    south_start: int
    north_start: int
    west_start: int
    east_start: int
    south_len: int
    north_len: int
    west_len: int
    east_len: int

    @staticmethod
    def from_xrays(h: XRay, v: XRay, south_start: int, north_start: int,
                   west_start: int, east_start: int) -> "FeetPlacement":
        m, n = len(v), len(h)
        return FeetPlacement(
            m=m, n=n,
            south_start=south_start, north_start=north_start,
            west_start=west_start, east_start=east_start,
            south_len=h[0], north_len=h[n - 1],
            west_len=v[0], east_len=v[m - 1],
        )

    def to_feet(self) -> Feet:
        return Feet(
            south=LatticeSet.of((x, 0) for x in range(self.south_start, self.south_start + self.south_len)),
            north=LatticeSet.of((x, self.n - 1) for x in range(self.north_start, self.north_start + self.north_len)),
            west=LatticeSet.of((0, y) for y in range(self.west_start, self.west_start + self.west_len)),
            east=LatticeSet.of((self.m - 1, y) for y in range(self.east_start, self.east_start + self.east_len)),
        )


class Partition:
    """Mutable Kernel/Out/Undetermined decomposition of an m-by-n grid.

    A partition is owned by a single reconstruction procedure; statuses only
    move from Undetermined to Kernel or Out.  The kernel hull is built on
    first use and maintained incrementally afterwards, so pipelines that
    never ask for it pay nothing.
    """

    __slots__ = (
        "m", "n", "row_ker", "row_out", "col_ker", "col_out",
        "_hull", "_hull_backlog", "changes", "undet_total",
        "dirty_rows", "dirty_cols",
    )

    def __init__(self, m: int, n: int):
        self.m = m
        self.n = n
        self.row_ker = [0] * n
        self.row_out = [0] * n
        self.col_ker = [0] * m
        self.col_out = [0] * m
        self._hull: Optional[IncrementalHull] = None
        self._hull_backlog: List[Point] = []
        self.changes = 0
        self.undet_total = m * n
        self.dirty_rows: Set[int] = set(range(n))
        self.dirty_cols: Set[int] = set(range(m))

    @property
    def hull(self) -> IncrementalHull:
        if self._hull is None:
            self._hull = IncrementalHull(self.cells_with(KERNEL))
        else:
            for pt in self._hull_backlog:
                self._hull.add(pt)
        self._hull_backlog.clear()
        return self._hull

    def status(self, x: int, y: int) -> int:
        bit = 1 << x
        if self.row_ker[y] & bit:
            return KERNEL
        if self.row_out[y] & bit:
            return OUT
        return UNDET

    def set_kernel(self, x: int, y: int) -> None:
        bit = 1 << x
        if self.row_ker[y] & bit:
            return
        if self.row_out[y] & bit:
            raise _Contra((x, y))
        self.row_ker[y] |= bit
        self.col_ker[x] |= 1 << y
        self.changes += 1
        self.undet_total -= 1
        self.dirty_rows.add(y)
        self.dirty_cols.add(x)
        if self._hull is not None:
            self._hull_backlog.append(Point(x, y))

    def set_out(self, x: int, y: int) -> None:
        bit = 1 << x
        if self.row_out[y] & bit:
            return
        if self.row_ker[y] & bit:
            raise _Contra((x, y))
        self.row_out[y] |= bit
        self.col_out[x] |= 1 << y
        self.changes += 1
        self.undet_total -= 1
        self.dirty_rows.add(y)
        self.dirty_cols.add(x)

    # Kernel run bounds of a line; (length, -1) when the line has no kernel.
    def row_span(self, j: int) -> Tuple[int, int]:
        mask = self.row_ker[j]
        if not mask:
            return self.m, -1
        return (mask & -mask).bit_length() - 1, mask.bit_length() - 1

    def col_span(self, i: int) -> Tuple[int, int]:
        mask = self.col_ker[i]
        if not mask:
            return self.n, -1
        return (mask & -mask).bit_length() - 1, mask.bit_length() - 1

    def row_kernel_count(self, j: int) -> int:
        return self.row_ker[j].bit_count()

    def col_kernel_count(self, i: int) -> int:
        return self.col_ker[i].bit_count()

    def row_undet_count(self, j: int) -> int:
        full = (1 << self.m) - 1
        return (full & ~self.row_ker[j] & ~self.row_out[j]).bit_count()

    def col_undet_count(self, i: int) -> int:
        full = (1 << self.n) - 1
        return (full & ~self.col_ker[i] & ~self.col_out[i]).bit_count()

    def cells_with(self, status: int) -> List[Point]:
        out: List[Point] = []
        full = (1 << self.m) - 1
        for y in range(self.n):
            if status == KERNEL:
                mask = self.row_ker[y]
            elif status == OUT:
                mask = self.row_out[y]
            else:
                mask = full & ~self.row_ker[y] & ~self.row_out[y]
            while mask:
                low = mask & -mask
                out.append(Point(low.bit_length() - 1, y))
                mask ^= low
        return out

    def kernel_set(self) -> LatticeSet:
        return LatticeSet(frozenset(self.cells_with(KERNEL)))

    @property
    def kernel_hull(self) -> List[Point]:
        """Counter-clockwise vertex list of the kernel's convex hull."""
        return self.hull.vertices()


@dataclass(frozen=True)
class RowState:
    """Five-segment decomposition of one line: excluded ends, undetermined
    gaps and the central kernel run: [0..a] out, ]a..b[ undetermined,
    [b..c] kernel, ]c..d[ undetermined, [d..len-1] out."""

    a: int
    b: Optional[int]
    c: Optional[int]
    d: int


def _line_state(ker: int, out: int, length: int) -> RowState:
    if not ker:
        return RowState(a=-1, b=None, c=None, d=length)
    b = (ker & -ker).bit_length() - 1
    c = ker.bit_length() - 1
    a = -1
    for t in range(b - 1, -1, -1):
        if out >> t & 1:
            a = t
            break
    d = length
    for t in range(c + 1, length):
        if out >> t & 1:
            d = t
            break
    return RowState(a=a, b=b, c=c, d=d)


def row_state(p: Partition, j: int) -> RowState:
    return _line_state(p.row_ker[j], p.row_out[j], p.m)


def col_state(p: Partition, i: int) -> RowState:
    return _line_state(p.col_ker[i], p.col_out[i], p.n)


@dataclass(frozen=True)
class Borders:
    """Undetermined points split by corner relative to the kernel."""

    nw: LatticeSet
    ne: LatticeSet
    se: LatticeSet
    sw: LatticeSet


@dataclass(frozen=True)
class Contradiction:
    """The placement admits no solution."""


@dataclass(frozen=True)
class Complete:
    solution: LatticeSet


@dataclass(frozen=True)
class Residual:
    partition: Partition
    borders: Borders


FillingOutcome = Union[Contradiction, Complete, Residual]


def placement_corners_consistent(fp: FeetPlacement) -> bool:
    """Necessary corner agreement between the four feet runs: a grid corner
    cell is claimed by its row foot iff it is claimed by its column foot."""
    m, n = fp.m, fp.n
    if n >= 2:
        if (fp.south_start == 0) != (fp.west_start == 0):
            return False
        if (fp.south_start + fp.south_len == m) != (fp.east_start == 0):
            return False
        if (fp.north_start == 0) != (fp.west_start + fp.west_len == n):
            return False
        if (fp.north_start + fp.north_len == m) != (fp.east_start + fp.east_len == n):
            return False
    return True


def init_partition_raw(m: int, n: int, ss: int, ns: int, ws: int, es: int,
                       sl: int, nl: int, wl: int, el: int) -> Union[Partition, Contradiction]:
    """Mask-based initialization from the four run starts and lengths."""
    full_m = (1 << m) - 1
    full_n = (1 << n) - 1
    srun = ((1 << sl) - 1) << ss
    nrun = ((1 << nl) - 1) << ns
    wrun = ((1 << wl) - 1) << ws
    erun = ((1 << el) - 1) << es

    row_ker = [0] * n
    row_out = [0] * n
    row_ker[0] |= srun
    row_out[0] |= full_m & ~srun
    row_ker[n - 1] |= nrun
    row_out[n - 1] |= full_m & ~nrun
    last = 1 << (m - 1)
    for y in range(n):
        if (wrun >> y) & 1:
            row_ker[y] |= 1
        else:
            row_out[y] |= 1
        if (erun >> y) & 1:
            row_ker[y] |= last
        else:
            row_out[y] |= last
    for y in range(n):
        if row_ker[y] & row_out[y]:
            return Contradiction()

    p = Partition(m, n)
    p.row_ker = row_ker
    p.row_out = row_out
    col_ker = p.col_ker
    col_out = p.col_out
    col_ker[0] = wrun
    col_out[0] = full_n & ~wrun
    if m > 1:
        col_ker[m - 1] = erun
        col_out[m - 1] = full_n & ~erun
    else:
        col_ker[0] |= erun
        col_out[0] |= full_n & ~erun
    top = 1 << (n - 1)
    for i in range(m):
        bit = 1 << i
        if row_ker[0] & bit:
            col_ker[i] |= 1
        else:
            col_out[i] |= 1
        if row_ker[n - 1] & bit:
            col_ker[i] |= top
        else:
            col_out[i] |= top
    for i in range(m):
        if col_ker[i] & col_out[i]:
            return Contradiction()
    determined = sum((rk | ro).bit_count() for rk, ro in zip(row_ker, row_out))
    p.undet_total = m * n - determined
    p.changes = determined
    return p


def init_partition(m: int, n: int, fp: FeetPlacement) -> Union[Partition, Contradiction]:
    """Kernel = the four feet runs; every other boundary cell is Out.

    Feet may overlap at grid corners; a corner cell claimed by one foot and
    rejected by the other line's count is a contradiction.
    """
    for start, length, limit, name in (
        (fp.south_start, fp.south_len, m, "south"),
        (fp.north_start, fp.north_len, m, "north"),
        (fp.west_start, fp.west_len, n, "west"),
        (fp.east_start, fp.east_len, n, "east"),
    ):
        if length < 1 or start < 0 or start + length > limit:
            raise ValueError(f"{name} foot run does not fit the grid")
    return init_partition_raw(m, n, fp.south_start, fp.north_start, fp.west_start,
                              fp.east_start, fp.south_len, fp.north_len,
                              fp.west_len, fp.east_len)


def _window_line(ker: int, out: int, count: int, length: int) -> Tuple[int, int]:
    """Feasible-window closure of one line.

    Returns (forced_kernel_mask, excluded_mask) of newly determined cells;
    raises _Contra when no run of ``count`` consecutive cells avoids every
    excluded cell while containing every kernel cell.
    """
    full = (1 << length) - 1
    und = full & ~ker & ~out
    if count == 0:
        if ker:
            raise _Contra("kernel cell on a zero-count line")
        return 0, und
    if count > length:
        raise _Contra("count exceeds line length")
    if ker:
        kmin = (ker & -ker).bit_length() - 1
        kmax = ker.bit_length() - 1
        lo = max(0, kmax - count + 1)
        hi = min(length - count, kmin)
    else:
        lo, hi = 0, length - count
    if lo > hi:
        raise _Contra("kernel cells spread wider than the count")
    window = (1 << count) - 1
    forced = full
    covered = 0
    feasible = False
    for s in range(lo, hi + 1):
        w = window << s
        if not (out & w):
            feasible = True
            forced &= w
            covered |= w
    if not feasible:
        raise _Contra("no feasible run on line")
    return forced & und, und & ~covered


def line_fill(p: Partition, h: XRay, v: XRay) -> Union[Partition, Contradiction]:
    """Drain the dirty-line worklist, applying the window closure to every
    row and column that changed since it was last deduced."""
    hc, vc = h.counts, v.counts
    m, n = p.m, p.n
    full_m = (1 << m) - 1
    full_n = (1 << n) - 1
    row_ker, row_out = p.row_ker, p.row_out
    col_ker, col_out = p.col_ker, p.col_out
    dirty_rows, dirty_cols = p.dirty_rows, p.dirty_cols
    hull_log = p._hull_backlog if p._hull is not None else None
    changed = 0
    try:
        while dirty_rows or dirty_cols:
            while dirty_rows:
                j = dirty_rows.pop()
                ker, out = row_ker[j], row_out[j]
                if not (full_m & ~ker & ~out):
                    if ker.bit_count() != hc[j]:
                        return Contradiction()
                    continue
                new_k, new_o = _window_line(ker, out, hc[j], m)
                if new_k:
                    row_ker[j] |= new_k
                    ybit = 1 << j
                    changed += new_k.bit_count()
                    while new_k:
                        low = new_k & -new_k
                        new_k ^= low
                        x = low.bit_length() - 1
                        col_ker[x] |= ybit
                        dirty_cols.add(x)
                        if hull_log is not None:
                            hull_log.append(Point(x, j))
                if new_o:
                    row_out[j] |= new_o
                    ybit = 1 << j
                    changed += new_o.bit_count()
                    while new_o:
                        low = new_o & -new_o
                        new_o ^= low
                        x = low.bit_length() - 1
                        col_out[x] |= ybit
                        dirty_cols.add(x)
            while dirty_cols:
                i = dirty_cols.pop()
                ker, out = col_ker[i], col_out[i]
                if not (full_n & ~ker & ~out):
                    if ker.bit_count() != vc[i]:
                        return Contradiction()
                    continue
                new_k, new_o = _window_line(ker, out, vc[i], n)
                if new_k:
                    col_ker[i] |= new_k
                    xbit = 1 << i
                    changed += new_k.bit_count()
                    while new_k:
                        low = new_k & -new_k
                        new_k ^= low
                        y = low.bit_length() - 1
                        row_ker[y] |= xbit
                        dirty_rows.add(y)
                        if hull_log is not None:
                            hull_log.append(Point(i, y))
                if new_o:
                    col_out[i] |= new_o
                    xbit = 1 << i
                    changed += new_o.bit_count()
                    while new_o:
                        low = new_o & -new_o
                        new_o ^= low
                        y = low.bit_length() - 1
                        row_out[y] |= xbit
                        dirty_rows.add(y)
    except _Contra:
        return Contradiction()
    p.changes += changed
    p.undet_total -= changed
    return p


def convex_fill_kernel(p: Partition) -> Union[Partition, Contradiction]:
    """Close the kernel under its integer hull; excluded hull points contradict."""
    if len(p.hull) == 0:
        return p
    try:
        for q in lattice_points_between(p.hull.lower, p.hull.upper):
            p.set_kernel(q.x, q.y)
    except _Contra:
        return Contradiction()
    return p


def convex_fill_out(p: Partition) -> Partition:
    """Exclude undetermined points whose aggregation would swallow an
    excluded point into the kernel hull; only Out grows here."""
    verts = p.hull.vertices()
    if not verts:
        return p
    outs = p.cells_with(OUT)
    if not outs:
        return p
    for y in p.cells_with(UNDET):
        if p.hull.contains(y):
            continue  # will be resolved by the hull closure instead
        lower, upper = hull_chains(verts + [y])
        for x in outs:
            if point_in_hull(lower, upper, x):
                p.set_out(y.x, y.y)
                break
    return p


def partition_borders(p: Partition) -> Borders:
    """Assign each undetermined point to a corner by its position relative
    to the kernel runs of its own row and column."""
    nw, ne, se, sw = [], [], [], []
    for q in p.cells_with(UNDET):
        bx, cx = p.row_span(q.y)
        by, cy = p.col_span(q.x)
        if bx > cx or by > cy:
            raise MalformedResidualError(f"undetermined point {tuple(q)} on a kernel-free line")
        if q.x < bx:
            horiz = "w"
        elif q.x > cx:
            horiz = "e"
        else:
            raise MalformedResidualError(f"undetermined point {tuple(q)} inside its row kernel span")
        if q.y < by:
            vert = "s"
        elif q.y > cy:
            vert = "n"
        else:
            raise MalformedResidualError(f"undetermined point {tuple(q)} inside its column kernel span")
        {"nw": nw, "ne": ne, "se": se, "sw": sw}[vert + horiz].append(q)
    return Borders(
        nw=LatticeSet(frozenset(nw)),
        ne=LatticeSet(frozenset(ne)),
        se=LatticeSet(frozenset(se)),
        sw=LatticeSet(frozenset(sw)),
    )


def run_filling(p: Partition, h: XRay, v: XRay, mode: FillMode) -> FillingOutcome:
    """Iterate the filling operations to their fixpoint.

    Ends with a Contradiction, a Complete solution (no undetermined cell
    left, X-rays verified), or a Residual partition with its borders.
    """
    if len(h) != p.n or len(v) != p.m:
        raise ValueError("X-ray lengths do not match the grid")
    if h.total != v.total:
        raise ValueError("X-ray sums differ")
    if 0 in h.counts or 0 in v.counts:
        raise UnsupportedError("zero X-ray entries are not supported by the filling step")

    while True:
        before = p.changes
        res = line_fill(p, h, v)
        if isinstance(res, Contradiction):
            return res
        if mode is FillMode.DIGITAL_CONVEX:
            res = convex_fill_kernel(p)
            if isinstance(res, Contradiction):
                return res
            convex_fill_out(p)
        if p.changes == before:
            break

    if p.undet_total == 0:
        hc, vc = h.counts, v.counts
        for j in range(p.n):
            if p.row_ker[j].bit_count() != hc[j]:
                return Contradiction()
        for i in range(p.m):
            if p.col_ker[i].bit_count() != vc[i]:
                return Contradiction()
        return Complete(p.kernel_set())
    return Residual(p, partition_borders(p))
