import itertools

import pytest
from hypothesis import given, settings, strategies as st

from convextomo.errors import EmptySetError, NonContiguousFootError, OutOfGridError
from convextomo.hull import Point
from convextomo.lattice import (
    FatKind,
    LatticeSet,
    ThinOrientation,
    apply_shear,
    classify_fatness,
    classify_set,
    compute_xrays,
    feet,
    integer_hull,
    is_digital_convex,
)
from convextomo.oracle import GridSpec, enumerate_digital_convex

sets_strategy = st.frozensets(
    st.tuples(st.integers(0, 5), st.integers(0, 5)).map(lambda t: Point(*t)),
    max_size=14,
).map(LatticeSet)


class TestComputeXrays:
    def test_single_point(self):
        h, v = compute_xrays(LatticeSet.of([(0, 0)]), 1, 1)
        assert h.counts == (1,) and v.counts == (1,)

    def test_full_square(self):
        h, v = compute_xrays(LatticeSet.of([(0, 0), (0, 1), (1, 0), (1, 1)]), 2, 2)
        assert h.counts == (2, 2) and v.counts == (2, 2)

    def test_l_shape(self):
        h, v = compute_xrays(LatticeSet.of([(0, 0), (1, 0), (1, 1), (2, 0)]), 3, 2)
        assert h.counts == (3, 1) and v.counts == (1, 2, 1)

    def test_out_of_grid(self):
        with pytest.raises(OutOfGridError):
            compute_xrays(LatticeSet.of([(2, 0)]), 2, 1)

    @given(sets_strategy)
    @settings(max_examples=150, deadline=None)
    def test_sums_equal_cardinality(self, s):
        h, v = compute_xrays(s, 6, 6)
        assert h.total == v.total == len(s)


class TestIntegerHull:
    def test_empty(self):
        assert integer_hull(LatticeSet()) == LatticeSet()

    def test_collinear_midpoint(self):
        got = integer_hull(LatticeSet.of([(0, 0), (2, 0)]))
        assert got == LatticeSet.of([(0, 0), (1, 0), (2, 0)])

    def test_triangle(self):
        got = integer_hull(LatticeSet.of([(0, 0), (2, 0), (0, 2)]))
        assert got == LatticeSet.of([(0, 0), (2, 0), (0, 2), (1, 0), (0, 1), (1, 1)])

    @given(sets_strategy)
    @settings(max_examples=150, deadline=None)
    def test_idempotent_and_superset(self, s):
        hull = integer_hull(s)
        assert s.points <= hull.points
        assert integer_hull(hull) == hull

    @given(sets_strategy, sets_strategy)
    @settings(max_examples=150, deadline=None)
    def test_monotone(self, a, b):
        union = LatticeSet(a.points | b.points)
        assert integer_hull(a).points <= integer_hull(union).points


class TestDigitalConvex:
    def test_steep_segment(self):
        assert is_digital_convex(LatticeSet.of([(0, 0), (2, 1)]))

    def test_gap(self):
        assert not is_digital_convex(LatticeSet.of([(0, 0), (2, 0)]))

    def test_diamond(self):
        assert is_digital_convex(LatticeSet.of([(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]))

    def test_implies_hv_convex_exhaustive_3x3(self):
        cells = [(x, y) for x in range(3) for y in range(3)]
        for r in range(1, 10):
            for combo in itertools.combinations(cells, r):
                s = LatticeSet.of(combo)
                if is_digital_convex(s):
                    assert classify_set(s).hv_convex


class TestClassifySet:
    def test_square_all_true(self):
        flags = classify_set(LatticeSet.of([(0, 0), (0, 1), (1, 0), (1, 1)]))
        assert flags.h_convex and flags.v_convex and flags.hv_convex
        assert flags.polyomino and flags.digital_convex

    def test_row_gap(self):
        flags = classify_set(LatticeSet.of([(0, 0), (2, 0)]))
        assert not flags.h_convex and not flags.polyomino

    def test_l_tromino(self):
        flags = classify_set(LatticeSet.of([(0, 0), (0, 1), (1, 1)]))
        assert flags.h_convex and flags.v_convex and flags.polyomino and flags.digital_convex

    def test_empty_raises(self):
        with pytest.raises(EmptySetError):
            classify_set(LatticeSet())


class TestFeet:
    def test_singleton(self):
        f = feet(LatticeSet.of([(0, 0)]))
        single = LatticeSet.of([(0, 0)])
        assert f.south == f.north == f.west == f.east == single

    def test_square(self):
        f = feet(LatticeSet.of([(x, y) for x in range(2) for y in range(2)]))
        assert f.south == LatticeSet.of([(0, 0), (1, 0)])
        assert f.north == LatticeSet.of([(0, 1), (1, 1)])
        assert f.west == LatticeSet.of([(0, 0), (0, 1)])
        assert f.east == LatticeSet.of([(1, 0), (1, 1)])

    def test_diamond(self):
        f = feet(LatticeSet.of([(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]))
        assert f.south == LatticeSet.of([(1, 0)])
        assert f.west == LatticeSet.of([(0, 1)])
        assert f.north == LatticeSet.of([(1, 2)])
        assert f.east == LatticeSet.of([(2, 1)])

    def test_non_contiguous(self):
        with pytest.raises(NonContiguousFootError):
            feet(LatticeSet.of([(0, 0), (2, 0)]))

    def test_empty(self):
        with pytest.raises(EmptySetError):
            feet(LatticeSet())


class TestFatness:
    def test_full_square_fat(self):
        s = LatticeSet.of([(x, y) for x in range(3) for y in range(3)])
        assert classify_fatness(feet(s)).kind is FatKind.FAT

    def test_diagonal_three_thin(self):
        fat = classify_fatness(feet(LatticeSet.of([(0, 0), (1, 1), (2, 2)])))
        assert fat.kind is FatKind.THIN
        assert fat.witness == Point(1, 1)
        assert fat.orientation is ThinOrientation.ASCENDING

    def test_diagonal_two_fat(self):
        assert classify_fatness(feet(LatticeSet.of([(0, 0), (1, 1)]))).is_fat

    def test_antidiagonal_thin(self):
        fat = classify_fatness(feet(LatticeSet.of([(2, 0), (1, 1), (0, 2)])))
        assert fat.kind is FatKind.THIN
        assert fat.orientation is ThinOrientation.DESCENDING

    def test_invariance_under_symmetries_4x4(self):
        # fatness depends only on the feet geometry, so it survives the
        # dihedral symmetries and translations of the set
        for s in enumerate_digital_convex(GridSpec(4, 4)):
            base = classify_fatness(feet(s)).kind
            transforms = [
                lambda p: Point(p.y, -p.x),  # rotate 90
                lambda p: Point(-p.x, p.y),  # mirror x
                lambda p: Point(p.x, -p.y),  # mirror y
                lambda p: Point(p.x + 3, p.y - 7),  # translate
            ]
            for tf in transforms:
                t = LatticeSet(frozenset(tf(p) for p in s.points))
                assert classify_fatness(feet(t)).kind is base


class TestShear:
    def test_identity(self):
        s = LatticeSet.of([(0, 0), (1, 1), (2, 0)])
        assert apply_shear(s, 0) == s

    def test_formula(self):
        assert apply_shear(LatticeSet.of([(0, 0), (1, 1)]), 1) == LatticeSet.of([(0, 0), (1, 0)])

    @given(sets_strategy, st.integers(-3, 3))
    @settings(max_examples=150, deadline=None)
    def test_roundtrip_and_v_invariance(self, s, k):
        assert apply_shear(apply_shear(s, k), -k) == s
        if s.points:
            def col_counts(t):
                counts = {}
                for p in t.points:
                    counts[p.x] = counts.get(p.x, 0) + 1
                return counts
            assert col_counts(apply_shear(s, k)) == col_counts(s)
