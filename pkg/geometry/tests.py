from fractions import Fraction
from itertools import combinations

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st
from hypothesis.extra.django import TestCase as HypothesisTestCase

from core.exceptions import DuplicatePointError, EsptsParseError, PreconditionError
from .espts import decode_lines, format_espts, parse_espts
from .kernel import (
    AffineMap, HalfPlane, Orientation, Point, PointSet, convex_hull, cross,
    hulls_disjoint, in_convex_hull, integer_coordinates, is_convex_position,
    orientation, point_in_convex_region, segments_intersect, shear_distinct_x,
)

coords = st.fractions(min_value=-20, max_value=20, max_denominator=12)
points = st.builds(Point, coords, coords)
point_lists = st.lists(points, min_size=1, max_size=10, unique=True)


def grid(size):
    return PointSet(Point(x, y) for x in range(size) for y in range(size))


class OrientationTests(SimpleTestCase):

    def test_examples(self):
        self.assertEqual(orientation(Point(0, 0), Point(1, 0), Point(2, 1)), Orientation.LEFT)
        self.assertEqual(orientation(Point(0, 0), Point(1, 1), Point(2, 2)), Orientation.COLLINEAR)
        self.assertEqual(orientation(Point(0, 0), Point(1, 0), Point(2, -1)), Orientation.RIGHT)

    def test_duplicate_points_are_collinear(self):
        p = Point(3, 4)
        self.assertEqual(orientation(p, p, Point(0, 1)), Orientation.COLLINEAR)

    def test_rational_coordinates(self):
        p, q, r = Point('1/3', 0), Point('2/3', '1/7'), Point(1, '2/7')
        self.assertEqual(orientation(p, q, r), Orientation.COLLINEAR)

    def test_float_coordinates_rejected(self):
        with self.assertRaises(TypeError):
            Point(0.5, 1)

    def test_integer_coordinates_keep_orientation(self):
        pts = [Point('1/2', '1/3'), Point('3/4', 0), Point(1, '5/6')]
        scaled = integer_coordinates(pts)
        self.assertTrue(all(isinstance(c, int) for pair in scaled for c in pair))
        self.assertEqual(orientation(*pts), Orientation.LEFT)


class OrientationPropertyTests(HypothesisTestCase):

    @settings(max_examples=200, deadline=None)
    @given(points, points, points)
    def test_antisymmetric_under_swaps(self, p, q, r):
        base = orientation(p, q, r)
        self.assertEqual(orientation(q, p, r), -base)
        self.assertEqual(orientation(p, r, q), -base)
        self.assertEqual(orientation(r, q, p), -base)

    @settings(max_examples=200, deadline=None)
    @given(points, points, points, coords, coords, st.fractions(min_value=Fraction(1, 10), max_value=10))
    def test_translation_and_scaling_invariance(self, p, q, r, dx, dy, scale):
        moved = AffineMap(scale, 0, 0, scale, dx, dy)
        self.assertEqual(
            orientation(moved.apply(p), moved.apply(q), moved.apply(r)),
            orientation(p, q, r),
        )

    @settings(max_examples=100, deadline=None)
    @given(point_lists)
    def test_shear_keeps_orientations_and_separates_x(self, pts):
        original = PointSet(pts)
        sheared = shear_distinct_x(original)
        self.assertTrue(sheared.has_distinct_x())
        self.assertEqual(len(sheared), len(original))
        for i, j, k in combinations(range(len(original)), 3):
            self.assertEqual(
                orientation(sheared[i], sheared[j], sheared[k]),
                orientation(original[i], original[j], original[k]),
            )

    @settings(max_examples=150, deadline=None)
    @given(point_lists)
    def test_hull_equals_set_iff_convex_position(self, pts):
        hull = convex_hull(pts)
        self.assertEqual(set(hull) == set(pts), is_convex_position(pts))

    @settings(max_examples=100, deadline=None)
    @given(point_lists)
    def test_predicates_are_deterministic(self, pts):
        self.assertEqual(convex_hull(pts), convex_hull(list(pts)))
        self.assertEqual(is_convex_position(pts), is_convex_position(list(pts)))


class ShearTests(SimpleTestCase):

    def test_vertical_pair_is_separated(self):
        sheared = shear_distinct_x([Point(0, 0), Point(0, 1), Point(1, 0)])
        self.assertEqual(len({p.x for p in sheared}), 3)
        self.assertEqual(orientation(*sheared), orientation(Point(0, 0), Point(0, 1), Point(1, 0)))

    def test_distinct_x_is_unchanged(self):
        original = PointSet([Point(0, 0), Point(1, 1)])
        self.assertEqual(shear_distinct_x(original), original)

    def test_vertical_line_stays_collinear(self):
        sheared = shear_distinct_x([Point(0, 0), Point(0, 1), Point(0, 2)])
        self.assertEqual(len({p.x for p in sheared}), 3)
        self.assertEqual(orientation(*sheared), Orientation.COLLINEAR)

    def test_duplicates_rejected(self):
        with self.assertRaises(DuplicatePointError):
            shear_distinct_x([Point(0, 0), Point(0, 0)])


class HullTests(SimpleTestCase):

    def test_grid_hull_is_the_corners(self):
        self.assertEqual(
            convex_hull(grid(3)),
            (Point(0, 0), Point(2, 0), Point(2, 2), Point(0, 2)),
        )

    def test_grid_hull_matches_brute_force(self):
        pts = list(grid(3))
        strict = [p for p in pts if not in_convex_hull(p, [q for q in pts if q != p])]
        self.assertEqual(set(convex_hull(pts)), set(strict))

    def test_collinear_hull_keeps_endpoints(self):
        self.assertEqual(convex_hull([Point(0, 0), Point(1, 1), Point(2, 2)]), (Point(0, 0), Point(2, 2)))

    def test_singleton(self):
        self.assertEqual(convex_hull([Point(0, 0)]), (Point(0, 0),))

    def test_empty_rejected(self):
        with self.assertRaises(PreconditionError):
            convex_hull([])

    def test_convex_position_examples(self):
        pentagon = [Point(0, 1), Point(1, 0), Point(2, 0), Point(2, 1), Point(1, 2)]
        self.assertTrue(is_convex_position(pentagon))
        self.assertFalse(is_convex_position([Point(0, 0), Point(1, 0), Point(2, 0)]))
        self.assertTrue(is_convex_position([Point(5, 1), Point(-2, 3)]))

    def test_hulls_disjoint(self):
        square = [Point(0, 0), Point(2, 0), Point(2, 2), Point(0, 2)]
        self.assertTrue(hulls_disjoint(square, [Point(3, 0), Point(3, 5)]))
        self.assertFalse(hulls_disjoint(square, [Point(1, -1), Point(1, 3)]))
        self.assertFalse(hulls_disjoint(square, [Point(2, 1)]))

    def test_segments_intersect(self):
        self.assertTrue(segments_intersect(Point(0, 0), Point(2, 2), Point(0, 2), Point(2, 0)))
        self.assertTrue(segments_intersect(Point(0, 0), Point(2, 0), Point(2, 0), Point(3, 1)))
        self.assertTrue(segments_intersect(Point(0, 0), Point(4, 0), Point(1, 0), Point(2, 0)))
        self.assertFalse(segments_intersect(Point(0, 0), Point(1, 0), Point(2, 0), Point(3, 0)))
        self.assertFalse(segments_intersect(Point(0, 0), Point(1, 1), Point(1, 0), Point(2, -1)))


class HalfPlaneTests(SimpleTestCase):

    def test_examples(self):
        origin = Point(0, 0)
        self.assertTrue(point_in_convex_region(origin, [HalfPlane(0, 1, 1)]))
        self.assertFalse(point_in_convex_region(origin, [HalfPlane(1, 0, 0)]))
        self.assertTrue(point_in_convex_region(origin, [HalfPlane(1, 0, 0, closed=True)]))

    def test_open_triangle(self):
        a, b, c = Point(0, 0), Point(4, 0), Point(2, 3)
        triangle = [
            HalfPlane.through(a, b, containing=c),
            HalfPlane.through(b, c, containing=a),
            HalfPlane.through(c, a, containing=b),
        ]
        self.assertTrue(point_in_convex_region(Point(2, 1), triangle))
        self.assertFalse(point_in_convex_region(Point(2, 0), triangle))

    def test_value_is_cross_product(self):
        p, q, r = Point(1, 2), Point(4, -1), Point(0, 7)
        plane = HalfPlane.through(p, q, containing=r)
        self.assertEqual(abs(plane.value(r)), abs(cross(p, q, r)))

    def test_zero_normal_rejected(self):
        with self.assertRaises(PreconditionError):
            HalfPlane(0, 0, 1)


class EsptsTests(SimpleTestCase):

    def test_round_trip(self):
        pts = PointSet([Point(0, 0), Point('-3/2', 7), Point(5, '1/9')])
        self.assertEqual(parse_espts(format_espts(pts, comment='three points')), pts)

    def test_comments_and_blank_lines(self):
        text = 'espts v1\n# header comment\n\n1 2\n  # indented\n-3 4/5\n'
        self.assertEqual(parse_espts(text), PointSet([Point(1, 2), Point(-3, '4/5')]))

    def test_malformed_coordinate_cites_line(self):
        with self.assertRaises(EsptsParseError) as ctx:
            parse_espts('espts v1\n0 0\n1 x\n')
        self.assertEqual(ctx.exception.lineno, 3)

    def test_not_lowest_terms(self):
        with self.assertRaises(EsptsParseError) as ctx:
            parse_espts('espts v1\n2/4 1\n')
        self.assertEqual(ctx.exception.lineno, 2)

    def test_missing_header(self):
        with self.assertRaises(EsptsParseError):
            parse_espts('0 0\n')

    def test_duplicate_point(self):
        with self.assertRaises(EsptsParseError) as ctx:
            parse_espts('espts v1\n0 0\n1 1\n0/1 0\n')
        self.assertEqual(ctx.exception.lineno, 4)

    def test_ascii_digits_only(self):
        for text in ('espts v1\n٣ １２\n', 'espts v1\n1/٢ 0\n'):
            with self.assertRaises(EsptsParseError) as ctx:
                parse_espts(text)
            self.assertEqual(ctx.exception.lineno, 2)

    def test_invalid_utf8_cites_line(self):
        with self.assertRaises(EsptsParseError) as ctx:
            decode_lines(b'espts v1\n0 0\n1 \xff\n')
        self.assertEqual(ctx.exception.lineno, 3)
        self.assertIn('invalid UTF-8', str(ctx.exception))
        self.assertEqual(decode_lines('espts v1\n0 ½\n'.encode()), 'espts v1\n0 ½\n')
