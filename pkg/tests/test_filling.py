import random

import pytest

from convextomo.errors import MalformedResidualError, UnsupportedError
from convextomo.filling import (
    Borders,
    Complete,
    Contradiction,
    FeetPlacement,
    FillMode,
    KERNEL,
    OUT,
    Partition,
    Residual,
    UNDET,
    _window_line,
    col_state,
    convex_fill_kernel,
    convex_fill_out,
    init_partition,
    line_fill,
    partition_borders,
    row_state,
    run_filling,
)
from convextomo.hull import Point
from convextomo.hvpoly import BAD_GUY
from convextomo.lattice import Axis, LatticeSet, XRay, integer_hull


def xray(counts, axis=Axis.HORIZONTAL):
    return XRay(tuple(counts), axis)


def make_partition(m, n, kernel=(), out=()):
    p = Partition(m, n)
    for x, y in kernel:
        p.set_kernel(x, y)
    for x, y in out:
        p.set_out(x, y)
    return p


def statuses(p):
    return {(x, y): p.status(x, y) for x in range(p.m) for y in range(p.n)}


class TestInitPartition:
    def test_1x1(self):
        fp = FeetPlacement(1, 1, 0, 0, 0, 0, 1, 1, 1, 1)
        p = init_partition(1, 1, fp)
        assert isinstance(p, Partition)
        assert p.status(0, 0) == KERNEL and p.undet_total == 0

    def test_3x3_full_boundary(self):
        fp = FeetPlacement(3, 3, 0, 0, 0, 0, 3, 3, 3, 3)
        p = init_partition(3, 3, fp)
        assert isinstance(p, Partition)
        for x in range(3):
            assert p.status(x, 0) == KERNEL and p.status(x, 2) == KERNEL
        for y in range(3):
            assert p.status(0, y) == KERNEL and p.status(2, y) == KERNEL
        assert p.status(1, 1) == UNDET

    def test_badguy_init(self):
        p = init_partition(15, 16, BAD_GUY.placement)
        assert isinstance(p, Partition)
        kernel = p.cells_with(KERNEL)
        assert sorted(tuple(q) for q in kernel) == sorted(
            [(9, 0), (10, 0), (4, 15), (0, 11), (14, 4)]
        )
        # the remaining boundary is excluded
        assert p.status(0, 0) == OUT and p.status(14, 15) == OUT

    def test_corner_conflict(self):
        # south claims (0,0) but west starts higher up
        fp = FeetPlacement(3, 3, 0, 0, 1, 2, 1, 1, 1, 1)
        assert isinstance(init_partition(3, 3, fp), Contradiction)

    def test_bad_run_raises(self):
        fp = FeetPlacement(3, 3, 2, 0, 0, 0, 2, 1, 1, 1)
        with pytest.raises(ValueError):
            init_partition(3, 3, fp)


class TestConvexFillKernel:
    def test_fills_midpoint(self):
        p = make_partition(3, 1, kernel=[(0, 0), (2, 0)])
        res = convex_fill_kernel(p)
        assert isinstance(res, Partition)
        assert p.status(1, 0) == KERNEL

    def test_contradiction_on_excluded_midpoint(self):
        p = make_partition(3, 1, kernel=[(0, 0)], out=[(1, 0)])
        p2 = make_partition(3, 1, out=[(1, 0)])
        p2.set_kernel(0, 0)
        p2.set_kernel(2, 0)
        assert isinstance(convex_fill_kernel(p2), Contradiction)

    def test_triangle_closure(self):
        p = make_partition(3, 3, kernel=[(0, 0), (2, 0), (0, 2)])
        convex_fill_kernel(p)
        expected = integer_hull(LatticeSet.of([(0, 0), (2, 0), (0, 2)]))
        got = LatticeSet(frozenset(p.cells_with(KERNEL)))
        assert got == expected


class TestConvexFillOut:
    def test_excludes_point_behind_out(self):
        p = make_partition(3, 1, kernel=[(0, 0)], out=[(1, 0)])
        convex_fill_out(p)
        assert p.status(2, 0) == OUT

    def test_keeps_point_when_not_covered(self):
        p = make_partition(3, 2, kernel=[(0, 0)], out=[(1, 1)])
        convex_fill_out(p)
        assert p.status(2, 0) == UNDET

    def test_triangle_coverage(self):
        p = make_partition(6, 3, kernel=[(0, 0), (1, 0), (0, 1), (1, 1)], out=[(3, 1)])
        convex_fill_out(p)
        assert p.status(5, 2) == OUT


class TestWindowLine:
    def test_saturated_window(self):
        # count 2, kernel at bits 3..4, length 8: everything else excluded
        new_k, new_o = _window_line(0b11000, 0, 2, 8)
        assert new_k == 0
        assert new_o == 0b11100111

    def test_kernel_growth(self):
        # count 3, kernel {2}, out at 0 and 6: kernel grows to [2..3]
        ker, out = 1 << 2, (1 << 0) | (1 << 6)
        new_k, new_o = _window_line(ker, out, 3, 7)
        assert new_k & (1 << 3)
        assert new_o & (1 << 5)

    def test_kernel_wider_than_count(self):
        from convextomo.filling import _Contra
        with pytest.raises(_Contra):
            _window_line(0b1111, 0, 3, 8)

    def test_no_window(self):
        from convextomo.filling import _Contra
        with pytest.raises(_Contra):
            _window_line(0, 0b0101, 2, 3)


class TestRunFilling:
    def test_1x1_complete(self):
        fp = FeetPlacement(1, 1, 0, 0, 0, 0, 1, 1, 1, 1)
        p = init_partition(1, 1, fp)
        out = run_filling(p, xray([1]), xray([1], Axis.VERTICAL), FillMode.HV_POLYOMINO)
        assert isinstance(out, Complete)
        assert out.solution == LatticeSet.of([(0, 0)])

    def test_2x2_complete(self):
        fp = FeetPlacement(2, 2, 0, 0, 0, 0, 2, 2, 2, 2)
        p = init_partition(2, 2, fp)
        out = run_filling(p, xray([2, 2]), xray([2, 2], Axis.VERTICAL), FillMode.DIGITAL_CONVEX)
        assert isinstance(out, Complete)
        assert len(out.solution) == 4

    def test_badguy_residual(self):
        p = init_partition(15, 16, BAD_GUY.placement)
        out = run_filling(p, BAD_GUY.h, BAD_GUY.v, FillMode.HV_POLYOMINO)
        assert isinstance(out, Residual)
        assert out.partition.undet_total > 0

    def test_zero_entry_unsupported(self):
        fp = FeetPlacement(2, 2, 0, 1, 0, 1, 1, 1, 1, 1)
        p = init_partition(2, 2, fp)
        assert isinstance(p, Partition)
        with pytest.raises(UnsupportedError):
            run_filling(p, xray([1, 1]), xray([2, 0], Axis.VERTICAL), FillMode.HV_POLYOMINO)


class TestBorders:
    def test_badguy_borders_nonempty(self):
        p = init_partition(15, 16, BAD_GUY.placement)
        out = run_filling(p, BAD_GUY.h, BAD_GUY.v, FillMode.HV_POLYOMINO)
        b = out.borders
        assert b.nw.points and b.ne.points and b.se.points and b.sw.points
        union = b.nw.points | b.ne.points | b.se.points | b.sw.points
        assert len(union) == out.partition.undet_total
        assert not (b.nw.points & b.ne.points)

    def test_complete_partition_empty_borders(self):
        fp = FeetPlacement(2, 2, 0, 0, 0, 0, 2, 2, 2, 2)
        p = init_partition(2, 2, fp)
        run_filling(p, xray([2, 2]), xray([2, 2], Axis.VERTICAL), FillMode.HV_POLYOMINO)
        b = partition_borders(p)
        assert b == Borders(LatticeSet(), LatticeSet(), LatticeSet(), LatticeSet())

    def test_synthetic_nw_only(self):
        p = make_partition(3, 3, kernel=[(1, 0), (2, 0), (1, 1), (2, 1), (2, 2)],
                           out=[(0, 0), (0, 1), (0, 2)])
        # leaves (1,2) undetermined: above its column kernel, left of its row kernel
        b = partition_borders(p)
        assert b.nw == LatticeSet.of([(1, 2)])
        assert not b.ne.points and not b.se.points and not b.sw.points

    def test_kernel_free_line_malformed(self):
        p = make_partition(2, 2, kernel=[(0, 0)])
        with pytest.raises(MalformedResidualError):
            partition_borders(p)


class TestRowState:
    def test_five_segments(self):
        p = make_partition(8, 1, kernel=[(3, 0), (4, 0)], out=[(0, 0), (7, 0)])
        rs = row_state(p, 0)
        assert (rs.a, rs.b, rs.c, rs.d) == (0, 3, 4, 7)

    def test_empty_kernel(self):
        p = make_partition(4, 2, out=[(0, 0)])
        rs = row_state(p, 1)
        assert rs.b is None and rs.c is None
        cs = col_state(p, 0)
        assert cs.b is None


class TestSoundnessAndOrderIndependence:
    def test_filling_soundness_sampled(self):
        # for every digital convex set consistent with the placement, the
        # fixpoint must keep Kernel inside and Out outside the set
        from convextomo.oracle import GridSpec, enumerate_digital_convex
        from convextomo.lattice import classify_fatness, compute_xrays, feet

        for s in enumerate_digital_convex(GridSpec(4, 4)):
            min_x, min_y, max_x, max_y = s.bbox
            t = s.translate(-min_x, -min_y)
            m, n = max_x - min_x + 1, max_y - min_y + 1
            h, v = compute_xrays(t, m, n)
            if 0 in h.counts or 0 in v.counts:
                continue
            ft = feet(t)
            fp = FeetPlacement.from_xrays(
                h, v,
                min(p.x for p in ft.south.points), min(p.x for p in ft.north.points),
                min(p.y for p in ft.west.points), min(p.y for p in ft.east.points),
            )
            part = init_partition(m, n, fp)
            assert isinstance(part, Partition)
            out = run_filling(part, h, v, FillMode.DIGITAL_CONVEX)
            assert not isinstance(out, Contradiction), (h.counts, v.counts)
            kernel = set(part.cells_with(KERNEL))
            excluded = set(part.cells_with(OUT))
            assert kernel <= t.points
            assert not (excluded & t.points)

    def test_order_independence_random_schedules(self):
        # the fixpoint is a closure: the final partition does not depend on
        # the order the line deductions fire in
        from convextomo.filling import _Contra, _window_line

        rng = random.Random(5)
        cases = [
            ((2, 2), (2, 2)),
            ((1, 2, 1), (1, 2, 1)),
            ((1, 3, 1), (1, 3, 1)),
            ((2, 3, 2), (2, 3, 2)),
            ((1, 2, 3, 2, 1), (1, 2, 3, 2, 1)),
        ]
        for hc, vc in cases:
            h, v = xray(hc), xray(vc, Axis.VERTICAL)
            m, n = len(vc), len(hc)
            fp = FeetPlacement.from_xrays(h, v, 0, 0, 0, 0)
            ref = init_partition(m, n, fp)
            if isinstance(ref, Contradiction):
                continue
            ref_out = run_filling(ref, h, v, FillMode.HV_POLYOMINO)
            for _ in range(5):
                p = init_partition(m, n, fp)
                contradicted = False
                try:
                    while p.dirty_rows or p.dirty_cols:
                        lines = [("r", j) for j in p.dirty_rows] + [("c", i) for i in p.dirty_cols]
                        kind, idx = rng.choice(lines)
                        if kind == "r":
                            p.dirty_rows.discard(idx)
                            ker, out = p.row_ker[idx], p.row_out[idx]
                            if ((1 << m) - 1) & ~ker & ~out:
                                nk, no = _window_line(ker, out, hc[idx], m)
                                for x in range(m):
                                    if nk >> x & 1:
                                        p.set_kernel(x, idx)
                                    if no >> x & 1:
                                        p.set_out(x, idx)
                        else:
                            p.dirty_cols.discard(idx)
                            ker, out = p.col_ker[idx], p.col_out[idx]
                            if ((1 << n) - 1) & ~ker & ~out:
                                nk, no = _window_line(ker, out, vc[idx], n)
                                for y in range(n):
                                    if nk >> y & 1:
                                        p.set_kernel(idx, y)
                                    if no >> y & 1:
                                        p.set_out(idx, y)
                except _Contra:
                    contradicted = True
                if isinstance(ref_out, Contradiction):
                    assert contradicted
                else:
                    assert not contradicted
                    target = ref_out.partition if isinstance(ref_out, Residual) else ref
                    assert statuses(p) == statuses(target)
