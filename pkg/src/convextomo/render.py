"""Set-file parsing and ASCII/SVG rendering of sets and partition traces.

Set files come in two formats:

* ASCII grid: one row per line, ``#`` occupied, ``.`` empty, the last line
  being row y = 0 (origin at the bottom-left).
* Point list: a ``# width height`` header followed by one ``x y`` pair per
  line.

ASCII rendering of a set is lossless: parsing an emitted grid reproduces
the set exactly.  The SVG renderer keeps the color conventions used by the
partition traces: kernel cells dark on grey, excluded cells red on pink,
undetermined cells grey, horizontal correspondences blue, vertical ones
green, the kernel hull outlined in orange.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import ParseError
from .filling import KERNEL, OUT, Partition, UNDET
from .hull import Point
from .lattice import LatticeSet

SVG_COLORS = {
    "kernel_fill": "#bdbdbd",
    "kernel_dot": "#1a1a1a",
    "out_fill": "#f6c9c9",
    "out_dot": "#c0392b",
    "undet_dot": "#9e9e9e",
    "point_dot": "#1a1a1a",
    "grid_line": "#888888",
    "h_link": "#1f5fbf",
    "v_link": "#2e8b57",
    "hull_line": "#e8a33d",
}

SET_LAYERS = frozenset({"points", "hull"})
PARTITION_LAYERS = frozenset({"kernel", "out", "undetermined", "correspondences", "hull"})


@dataclass(frozen=True)
class RenderSpec:
    """Rendering options: output format, layer selection, svg cell size."""

    format: str = "ascii"
    layers: FrozenSet[str] = frozenset({"points"})
    cell_size: int = 24

    def validate_for(self, available: FrozenSet[str]) -> None:
        if self.format not in ("ascii", "svg"):
            raise ValueError(f"unknown format {self.format!r}")
        unknown = self.layers - available
        if unknown:
            raise ValueError(f"layers not present in the rendered object: {sorted(unknown)}")


def parse_set_file(text: str) -> Tuple[LatticeSet, int, int]:
    """Parse either set-file format; returns (set, width, height)."""
    lines = text.splitlines()
    stripped = [(i + 1, ln) for i, ln in enumerate(lines) if ln.strip()]
    if not stripped:
        raise ParseError(1, 1, "empty set file")
    first = stripped[0][1].strip()
    if first.startswith("#") and len(first.split()) == 3:
        return _parse_point_list(stripped)
    return _parse_ascii_grid(stripped)


def _parse_point_list(lines: List[Tuple[int, str]]) -> Tuple[LatticeSet, int, int]:
    lineno, header = lines[0]
    parts = header.split()
    try:
        m, n = int(parts[1]), int(parts[2])
    except ValueError:
        raise ParseError(lineno, len(parts[0]) + 2, "header must be '# width height'")
    if m < 1 or n < 1:
        raise ParseError(lineno, 3, "grid dimensions must be positive")
    pts = []
    for lineno, ln in lines[1:]:
        fields = ln.split()
        if len(fields) != 2:
            raise ParseError(lineno, 1, "expected 'x y'")
        try:
            x, y = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(lineno, 1, "coordinates must be integers")
        if not (0 <= x < m and 0 <= y < n):
            raise ParseError(lineno, 1, f"point ({x}, {y}) outside {m}x{n} grid")
        pts.append(Point(x, y))
    return LatticeSet(frozenset(pts)), m, n


def _parse_ascii_grid(lines: List[Tuple[int, str]]) -> Tuple[LatticeSet, int, int]:
    rows = [(lineno, ln.rstrip()) for lineno, ln in lines]
    n = len(rows)
    m = max(len(ln) for _, ln in rows)
    pts = []
    for idx, (lineno, ln) in enumerate(rows):
        y = n - 1 - idx  # last line is row 0
        for col, ch in enumerate(ln):
            if ch == "#":
                pts.append(Point(col, y))
            elif ch != ".":
                raise ParseError(lineno, col + 1, f"unexpected character {ch!r}")
    return LatticeSet(frozenset(pts)), m, n


def render_ascii_set(s: LatticeSet, m: Optional[int] = None, n: Optional[int] = None) -> str:
    """ASCII grid of a set; dimensions default to the bounding box."""
    if not s.points:
        return "."
    min_x, min_y, max_x, max_y = s.bbox
    if min_x < 0 or min_y < 0:
        raise ValueError("ASCII grids need non-negative coordinates")
    m = m if m is not None else max_x + 1
    n = n if n is not None else max_y + 1
    rows = []
    for y in range(n - 1, -1, -1):
        rows.append("".join("#" if Point(x, y) in s.points else "." for x in range(m)))
    return "\n".join(rows)


def render_ascii_partition(p: Partition) -> str:
    """Trace grid: '#' kernel, 'x' excluded, '?' undetermined."""
    chars = {KERNEL: "#", OUT: "x", UNDET: "?"}
    rows = []
    for y in range(p.n - 1, -1, -1):
        rows.append("".join(chars[p.status(x, y)] for x in range(p.m)))
    return "\n".join(rows)


def _svg_header(width: int, height: int) -> List[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]


class SvgGrid:
    """Cell-based SVG canvas with the origin at the bottom-left."""

    def __init__(self, m: int, n: int, cell: int = 24, margin: int = 8):
        self.m = m
        self.n = n
        self.cell = cell
        self.margin = margin
        self.width = m * cell + 2 * margin
        self.height = n * cell + 2 * margin
        self.body: List[str] = []

    def _cx(self, x: int) -> float:
        return self.margin + (x + 0.5) * self.cell

    def _cy(self, y: int) -> float:
        return self.margin + (self.n - 1 - y + 0.5) * self.cell

    def fill_cell(self, x: int, y: int, color: str) -> None:
        px = self.margin + x * self.cell
        py = self.margin + (self.n - 1 - y) * self.cell
        self.body.append(
            f'<rect x="{px}" y="{py}" width="{self.cell}" height="{self.cell}" fill="{color}"/>'
        )

    def dot(self, x: int, y: int, color: str, radius: float = 0.3) -> None:
        r = radius * self.cell
        self.body.append(
            f'<circle cx="{self._cx(x)}" cy="{self._cy(y)}" r="{r:.1f}" fill="{color}"/>'
        )

    def line(self, a: Point, b: Point, color: str, width: float = 2.0) -> None:
        self.body.append(
            f'<line x1="{self._cx(a.x)}" y1="{self._cy(a.y)}" x2="{self._cx(b.x)}" '
            f'y2="{self._cy(b.y)}" stroke="{color}" stroke-width="{width}"/>'
        )

    def polygon(self, pts: Sequence[Point], color: str, width: float = 2.0) -> None:
        coords = " ".join(f"{self._cx(p.x):.1f},{self._cy(p.y):.1f}" for p in pts)
        self.body.append(
            f'<polygon points="{coords}" fill="none" stroke="{color}" stroke-width="{width}"/>'
        )

    def grid_lines(self) -> None:
        c, mg = self.cell, self.margin
        for i in range(self.m + 1):
            x = mg + i * c
            self.body.append(
                f'<line x1="{x}" y1="{mg}" x2="{x}" y2="{mg + self.n * c}" '
                f'stroke="{SVG_COLORS["grid_line"]}" stroke-width="0.5"/>'
            )
        for j in range(self.n + 1):
            y = mg + j * c
            self.body.append(
                f'<line x1="{mg}" y1="{y}" x2="{mg + self.m * c}" y2="{y}" '
                f'stroke="{SVG_COLORS["grid_line"]}" stroke-width="0.5"/>'
            )

    def to_svg(self) -> str:
        return "\n".join(_svg_header(self.width, self.height) + self.body + ["</svg>"])


def render_svg_set(s: LatticeSet, m: Optional[int] = None, n: Optional[int] = None,
                   cell: int = 24, layers: FrozenSet[str] = frozenset({"points"})) -> str:
    if not s.points:
        return SvgGrid(1, 1, cell).to_svg()
    min_x, min_y, max_x, max_y = s.bbox
    dx = -min(0, min_x)
    dy = -min(0, min_y)
    shifted = s.translate(dx, dy)
    m = m if m is not None else max_x + dx + 1
    n = n if n is not None else max_y + dy + 1
    g = SvgGrid(m, n, cell)
    g.grid_lines()
    if "hull" in layers:
        from .hull import hull_vertices

        verts = hull_vertices(shifted.sorted_points)
        if len(verts) >= 2:
            g.polygon(verts, SVG_COLORS["hull_line"])
    if "points" in layers:
        for p in shifted.sorted_points:
            g.dot(p.x, p.y, SVG_COLORS["point_dot"])
    return g.to_svg()


def render_svg_partition(p: Partition, cell: int = 24,
                         correspondences: Optional[Iterable[Tuple[Point, Point, str]]] = None,
                         show_hull: bool = False) -> str:
    """Partition trace; ``correspondences`` holds (a, b, axis) links with
    axis 'h' or 'v'."""
    g = SvgGrid(p.m, p.n, cell)
    for y in range(p.n):
        for x in range(p.m):
            st = p.status(x, y)
            if st == KERNEL:
                g.fill_cell(x, y, SVG_COLORS["kernel_fill"])
            elif st == OUT:
                g.fill_cell(x, y, SVG_COLORS["out_fill"])
    g.grid_lines()
    if show_hull:
        verts = p.kernel_hull
        if len(verts) >= 2:
            g.polygon(verts, SVG_COLORS["hull_line"])
    for y in range(p.n):
        for x in range(p.m):
            st = p.status(x, y)
            if st == KERNEL:
                g.dot(x, y, SVG_COLORS["kernel_dot"])
            elif st == OUT:
                g.dot(x, y, SVG_COLORS["out_dot"], radius=0.22)
            else:
                g.dot(x, y, SVG_COLORS["undet_dot"], radius=0.18)
    if correspondences:
        for a, b, axis in correspondences:
            color = SVG_COLORS["h_link"] if axis == "h" else SVG_COLORS["v_link"]
            g.line(a, b, color)
    return g.to_svg()
