import math
from fractions import Fraction

from django.test import SimpleTestCase

from core.exceptions import PreconditionError
from extremal.bounds import h_ell
from extremal.engine import longest_cap, longest_cup, max_collinear, max_convex_subset
from geometry.kernel import AffineMap, Point, PointSet
from .builders import (
    build_base_capfree, build_base_cupfree, build_ES_lower, build_X, es_blocks,
)
from .placement import (
    MAX_ROUNDS, Box, FlatPlacement, combine_flat, lines_pass_above, lines_pass_below,
    placed_box, settle_flat, slope_range, strictly_one_side,
)
from .verifier import ConstructionClaim, verify_construction


class BaseConstructionTests(SimpleTestCase):

    def test_cupfree_3_5(self):
        pts = build_base_cupfree(3, 5)
        self.assertEqual(len(pts), 4)
        self.assertEqual(max_collinear(pts).size, 2)
        self.assertLessEqual(longest_cup(pts).size, 4)
        self.assertEqual(longest_cap(pts).size, 2)

    def test_cupfree_4_5(self):
        pts = build_base_cupfree(4, 5)
        self.assertEqual(len(pts), 6)
        self.assertEqual(max_collinear(pts).size, 3)

    def test_smallest_bases(self):
        self.assertEqual(len(build_base_cupfree(3, 3)), 2)
        self.assertEqual(len(build_base_capfree(3, 3)), 2)

    def test_capfree(self):
        pts = build_base_capfree(3, 5)
        self.assertEqual(len(pts), 4)
        self.assertEqual(longest_cup(pts).size, 2)
        self.assertLessEqual(longest_cap(pts).size, 4)
        self.assertEqual(len(build_base_capfree(5, 4)), 5)

    def test_capfree_mirrors_cupfree(self):
        mirrored = PointSet(Point(p.x, -p.y) for p in build_base_cupfree(4, 6))
        self.assertEqual(mirrored, build_base_capfree(4, 6))

    def test_base_sizes_reach_the_bound(self):
        for ell in range(3, 7):
            for m in range(3, 9):
                self.assertGreaterEqual(len(build_base_cupfree(ell, m)), h_ell(ell, m, 3))

    def test_rejects_small_parameters(self):
        with self.assertRaises(PreconditionError):
            build_base_cupfree(2, 5)
        with self.assertRaises(PreconditionError):
            build_base_capfree(3, 2)


class PlacementTests(SimpleTestCase):

    def test_singletons(self):
        combined = combine_flat([Point(5, 5)], [Point(-1, 7)])
        self.assertEqual(len(combined), 2)
        self.assertLess(combined[0].x, combined[1].x)
        self.assertLess(combined[0].y, combined[1].y)

    def test_recursive_blocks_settle_quickly(self):
        for ell, m, n in ((3, 4, 4), (3, 5, 4), (4, 4, 4), (5, 5, 5)):
            with self.subTest(ell=ell, m=m, n=n):
                combined, rounds = settle_flat(build_X(ell, m - 1, n), build_X(ell, m, n - 1))
                self.assertLess(rounds, MAX_ROUNDS)
                self.assertEqual(combined, build_X(ell, m, n))

    def test_pairs_pass_exact_checks(self):
        lower = [Point(0, 0), Point(1, 5)]
        upper = [Point(0, 3), Point(4, -2)]
        combined = combine_flat(lower, upper)
        placed_lower, placed_upper = combined[:2], combined[2:]
        self.assertTrue(lines_pass_below(placed_lower, placed_upper))
        self.assertTrue(lines_pass_above(placed_upper, placed_lower))

    def test_keeps_cardinality(self):
        combined = combine_flat(build_X(3, 3, 3), build_X(3, 4, 3))
        self.assertEqual(len(combined), len(build_X(3, 3, 3)) + len(build_X(3, 4, 3)))

    def test_bigger_blocks_pass_exact_checks(self):
        lower, upper = build_X(3, 4, 5), build_X(3, 5, 4)
        combined = combine_flat(lower, upper)
        placed_lower, placed_upper = combined[:len(lower)], combined[len(lower):]
        self.assertTrue(lines_pass_below(placed_lower, placed_upper))
        self.assertTrue(lines_pass_above(placed_upper, placed_lower))

    def test_shears_inputs_with_repeated_x(self):
        combined = combine_flat([Point(0, 0), Point(0, 1)], [Point(3, 3)])
        self.assertTrue(combined.has_distinct_x())

    def test_rejects_empty_input(self):
        with self.assertRaises(PreconditionError):
            combine_flat([], [Point(0, 0)])

    def test_flat_placement(self):
        placement = FlatPlacement.into_box([Point(0, 0), Point(4, 2)], 1, 2, 0, Fraction(1, 8))
        self.assertEqual(placement.apply(Point(4, 2)), Point(2, Fraction(1, 8)))
        self.assertEqual(
            placed_box(placement, [Point(0, 0), Point(4, 2)]),
            Box(Fraction(1), Fraction(2), Fraction(0), Fraction(1, 8)),
        )
        with self.assertRaises(PreconditionError):
            FlatPlacement(0, 1, 0, 0)

    def test_slope_range(self):
        self.assertEqual(slope_range([Point(0, 0), Point(1, 1), Point(2, 4)]), (1, 3))
        self.assertIsNone(slope_range([Point(0, 0)]))

    def test_strictly_one_side(self):
        left = Box(Fraction(0), Fraction(1), Fraction(0), Fraction(1))
        right = Box(Fraction(9), Fraction(10), Fraction(0), Fraction(1))
        above = Box(Fraction(4), Fraction(5), Fraction(5), Fraction(6))
        across = Box(Fraction(4), Fraction(5), Fraction(0), Fraction(1))
        self.assertTrue(strictly_one_side(left, right, above))
        self.assertFalse(strictly_one_side(left, right, across))


class BuildXTests(SimpleTestCase):

    def test_3_4_4(self):
        pts = build_X(3, 4, 4)
        self.assertEqual(len(pts), 6)
        self.assertTrue(verify_construction(pts, ConstructionClaim.x(3, 4, 4)).passes)

    def test_classical_sizes(self):
        for m in range(3, 7):
            for n in range(3, 7):
                self.assertEqual(len(build_X(3, m, n)), math.comb(m + n - 4, n - 2))

    def test_size_identity(self):
        for ell in (3, 4):
            for m in range(4, 7):
                for n in range(4, 7):
                    self.assertEqual(
                        len(build_X(ell, m, n)),
                        len(build_X(ell, m - 1, n)) + len(build_X(ell, m, n - 1)),
                    )

    def test_4_4_4(self):
        pts = build_X(4, 4, 4)
        self.assertGreaterEqual(len(pts), 8)
        self.assertLessEqual(max_collinear(pts).size, 3)
        self.assertTrue(verify_construction(pts, 'x:4,4,4').passes)

    def test_certificate_3_5_5(self):
        certificate = verify_construction(build_X(3, 5, 5), ConstructionClaim.x(3, 5, 5))
        self.assertTrue(certificate.passes)
        self.assertEqual(certificate.size, 20)
        self.assertLessEqual(certificate.longest_cup_points, 4)
        self.assertLessEqual(certificate.longest_cap_points, 4)

    def test_cup_bound_is_tight_for_3_4_3(self):
        self.assertLessEqual(longest_cup(build_X(3, 4, 3)).size, 3)

    def test_capfree_base_has_short_caps(self):
        self.assertLessEqual(longest_cap(build_base_capfree(3, 5)).size, 4)

    def test_affine_robustness(self):
        pts = build_X(4, 5, 4)
        before = verify_construction(pts, 'x:4,5,4')
        # a > 0 keeps x-order; det > 0 keeps orientation
        moved = AffineMap(2, 0, Fraction(1, 3), 5, 7, -1).apply_all(pts)
        after = verify_construction(moved, 'x:4,5,4')
        self.assertEqual(after.to_dict(), before.to_dict())


class BuildESTests(SimpleTestCase):

    def test_3_6(self):
        pts = build_ES_lower(3, 6)
        self.assertEqual(len(pts), 16)
        self.assertLessEqual(max_convex_subset(pts).size, 5)
        self.assertTrue(verify_construction(pts, ConstructionClaim.es(3, 6)).passes)

    def test_4_6(self):
        pts = build_ES_lower(4, 6)
        self.assertEqual(len(pts), 22)
        certificate = verify_construction(pts, 'es:4,6')
        self.assertTrue(certificate.passes)
        self.assertLessEqual(certificate.max_collinear_points, 3)
        self.assertLessEqual(certificate.max_convex_points, 5)

    def test_block_order(self):
        params = [p for p, _ in es_blocks(3, 7)]
        self.assertEqual(params, [(7, 3), (5, 4), (4, 5), (3, 7)])

    def test_rotation_keeps_es_certificate(self):
        pts = build_ES_lower(3, 6)
        turned = AffineMap(1, -1, 1, 1).apply_all(pts)
        certificate = verify_construction(turned, 'es:3,6')
        self.assertEqual(certificate.max_convex_points, verify_construction(pts, 'es:3,6').max_convex_points)
        self.assertTrue(certificate.passes)

    def test_rejects_small_n(self):
        with self.assertRaises(PreconditionError):
            build_ES_lower(3, 5)


class VerifierTests(SimpleTestCase):

    def test_collinear_points_fail(self):
        certificate = verify_construction([Point(0, 0), Point(1, 1), Point(2, 2)], 'x:3,4,4')
        self.assertFalse(certificate.no_collinear_ell)
        self.assertFalse(certificate.passes)

    def test_too_small_fails(self):
        self.assertFalse(verify_construction(build_X(3, 4, 4)[:5], 'x:3,4,4').passes)

    def test_sidecar_shape(self):
        payload = verify_construction(build_X(3, 4, 4), 'x:3,4,4').to_dict()
        self.assertEqual(payload['claim'], 'x:3,4,4')
        self.assertEqual(payload['size'], 6)
        self.assertTrue(payload['passes'])
        self.assertEqual(payload['bounds']['size_at_least'], '6')

    def test_claim_parsing(self):
        self.assertEqual(ConstructionClaim.parse('x:3,5,5'), ConstructionClaim.x(3, 5, 5))
        self.assertEqual(ConstructionClaim.parse('es:3,6').target_size, 16)
        self.assertEqual(str(ConstructionClaim.es(4, 7)), 'es:4,7')
        for bad in ('x:3,5', 'y:3,3,3', 'es:3,2', 'x:3;5;5'):
            with self.assertRaises(PreconditionError):
                ConstructionClaim.parse(bad)
