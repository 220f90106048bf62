"""Exact integer-lattice geometry: sets, X-rays, hulls, feet, fatness.

Coordinates follow the grid convention used everywhere in this package:
``x`` is the column index ``i`` and ``y`` the row index ``j``, with the
origin at the bottom-left.  A horizontal X-ray is indexed by row and a
vertical X-ray by column.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from .errors import EmptySetError, NonContiguousFootError, OutOfGridError
from .hull import Point, hull_chains, lattice_points_between

__all__ = [
    "Point",
    "LatticeSet",
    "Axis",
    "XRay",
    "Feet",
    "FatKind",
    "ThinOrientation",
    "Fatness",
    "ClassFlags",
    "compute_xrays",
    "integer_hull",
    "is_digital_convex",
    "classify_set",
    "feet",
    "classify_fatness",
    "apply_shear",
]


@dataclass(frozen=True)
class LatticeSet:
    """A finite set of integer points, hashable and immutable."""

    points: FrozenSet[Point] = field(default_factory=frozenset)

    @staticmethod
    def of(points: Iterable[Tuple[int, int]]) -> "LatticeSet":
        return LatticeSet(frozenset(Point(x, y) for x, y in points))

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p: Point) -> bool:
        return p in self.points

    def __iter__(self) -> Iterator[Point]:
        return iter(self.sorted_points)

    @cached_property
    def sorted_points(self) -> Tuple[Point, ...]:
        """Canonical ordering: lexicographic by x, then y."""
        return tuple(sorted(self.points))

    @cached_property
    def bbox(self) -> Optional[Tuple[int, int, int, int]]:
        """(min_x, min_y, max_x, max_y), or None for the empty set."""
        if not self.points:
            return None
        xs = [p.x for p in self.points]
        ys = [p.y for p in self.points]
        return min(xs), min(ys), max(xs), max(ys)

    def translate(self, dx: int, dy: int) -> "LatticeSet":
        return LatticeSet(frozenset(Point(p.x + dx, p.y + dy) for p in self.points))


class Axis(enum.Enum):
    HORIZONTAL = "horizontal"  # one count per row, indexed by y
    VERTICAL = "vertical"  # one count per column, indexed by x


@dataclass(frozen=True)
class XRay:
    """Per-line point counts along one axis."""

    counts: Tuple[int, ...]
    axis: Axis

    def __post_init__(self):
        if len(self.counts) < 1:
            raise ValueError("an X-ray needs at least one line")
        if any(c < 0 for c in self.counts):
            raise ValueError("X-ray counts must be non-negative")

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, i: int) -> int:
        return self.counts[i]

    @property
    def total(self) -> int:
        return sum(self.counts)


def compute_xrays(s: LatticeSet, m: int, n: int) -> Tuple[XRay, XRay]:
    """Horizontal and vertical X-rays of ``s`` inside an m-by-n grid."""
    h = [0] * n
    v = [0] * m
    for p in s.points:
        if not (0 <= p.x < m and 0 <= p.y < n):
            raise OutOfGridError(f"point {tuple(p)} outside {m}x{n} grid")
        h[p.y] += 1
        v[p.x] += 1
    return XRay(tuple(h), Axis.HORIZONTAL), XRay(tuple(v), Axis.VERTICAL)


def integer_hull(s: LatticeSet) -> LatticeSet:
    """All lattice points inside or on the real convex hull of ``s``.

    Enumerates line by line between the exact lower and upper hull chains;
    the naive test (every bounding-box point against half-planes) is kept in
    the test suite as the independent reference.
    """
    if not s.points:
        return s
    lower, upper = hull_chains(s.points)
    return LatticeSet(frozenset(lattice_points_between(lower, upper)))


def is_digital_convex(s: LatticeSet) -> bool:
    """True iff ``s`` equals the lattice points of its own convex hull."""
    if not s.points:
        return True
    return integer_hull(s).points == s.points


@dataclass(frozen=True)
class ClassFlags:
    h_convex: bool
    v_convex: bool
    hv_convex: bool
    polyomino: bool
    digital_convex: bool


def _lines_are_intervals(groups: Dict[int, List[int]]) -> bool:
    for vals in groups.values():
        if max(vals) - min(vals) + 1 != len(vals):
            return False
    return True


def _is_four_connected(s: LatticeSet) -> bool:
    pts = s.points
    if not pts:
        return False
    start = next(iter(pts))
    seen = {start}
    stack = [start]
    while stack:
        p = stack.pop()
        for q in (Point(p.x + 1, p.y), Point(p.x - 1, p.y), Point(p.x, p.y + 1), Point(p.x, p.y - 1)):
            if q in pts and q not in seen:
                seen.add(q)
                stack.append(q)
    return len(seen) == len(pts)


def classify_set(s: LatticeSet) -> ClassFlags:
    """Row/column convexity, 4-connectivity and digital convexity flags."""
    if not s.points:
        raise EmptySetError("cannot classify an empty set")
    rows: Dict[int, List[int]] = {}
    cols: Dict[int, List[int]] = {}
    for p in s.points:
        rows.setdefault(p.y, []).append(p.x)
        cols.setdefault(p.x, []).append(p.y)
    h_convex = _lines_are_intervals(rows)
    v_convex = _lines_are_intervals(cols)
    return ClassFlags(
        h_convex=h_convex,
        v_convex=v_convex,
        hv_convex=h_convex and v_convex,
        polyomino=_is_four_connected(s),
        digital_convex=is_digital_convex(s),
    )


@dataclass(frozen=True)
class Feet:
    """The four extremal subsets of a set: minimal y, minimal x, maximal y, maximal x."""

    south: LatticeSet
    west: LatticeSet
    north: LatticeSet
    east: LatticeSet


def _contiguous_run(coords: List[int], label: str) -> None:
    coords = sorted(coords)
    for a, b in zip(coords, coords[1:]):
        if b != a + 1:
            raise NonContiguousFootError(f"{label} foot is not a contiguous run")


def feet(s: LatticeSet) -> Feet:
    """Extremal subsets of a non-empty set; each must be a contiguous run."""
    if not s.points:
        raise EmptySetError("an empty set has no feet")
    min_x, min_y, max_x, max_y = s.bbox
    south = [p for p in s.points if p.y == min_y]
    north = [p for p in s.points if p.y == max_y]
    west = [p for p in s.points if p.x == min_x]
    east = [p for p in s.points if p.x == max_x]
    _contiguous_run([p.x for p in south], "south")
    _contiguous_run([p.x for p in north], "north")
    _contiguous_run([p.y for p in west], "west")
    _contiguous_run([p.y for p in east], "east")
    return Feet(
        south=LatticeSet(frozenset(south)),
        west=LatticeSet(frozenset(west)),
        north=LatticeSet(frozenset(north)),
        east=LatticeSet(frozenset(east)),
    )


class FatKind(enum.Enum):
    FAT = "fat"
    THIN = "thin"


class ThinOrientation(enum.Enum):
    """Which diagonal arrangement the separating point witnesses."""

    ASCENDING = "ascending"  # south left of north, west below east
    DESCENDING = "descending"  # south right of north, west above east


@dataclass(frozen=True)
class Fatness:
    kind: FatKind
    witness: Optional[Point] = None
    orientation: Optional[ThinOrientation] = None

    @property
    def is_fat(self) -> bool:
        return self.kind is FatKind.FAT


def classify_fatness(f: Feet) -> Fatness:
    """Thin iff an integer point strictly separates opposite feet pairs into
    diagonally opposite quadrants; the separation is over whole feet, so a
    foot's entire coordinate range must clear the witness strictly."""
    south_xs = [p.x for p in f.south.points]
    north_xs = [p.x for p in f.north.points]
    west_ys = [p.y for p in f.west.points]
    east_ys = [p.y for p in f.east.points]
    # Ascending: every south x < X < every north x, every west y < Y < every east y.
    if max(south_xs) + 1 < min(north_xs) and max(west_ys) + 1 < min(east_ys):
        return Fatness(
            FatKind.THIN,
            witness=Point(max(south_xs) + 1, max(west_ys) + 1),
            orientation=ThinOrientation.ASCENDING,
        )
    if max(north_xs) + 1 < min(south_xs) and max(east_ys) + 1 < min(west_ys):
        return Fatness(
            FatKind.THIN,
            witness=Point(max(north_xs) + 1, max(east_ys) + 1),
            orientation=ThinOrientation.DESCENDING,
        )
    return Fatness(FatKind.FAT)


def apply_shear(s: LatticeSet, k: int) -> LatticeSet:
    """Vertical shear (x, y) -> (x, y - k*x); bijective, X-ray preserving."""
    return LatticeSet(frozenset(Point(p.x, p.y - k * p.x) for p in s.points))
