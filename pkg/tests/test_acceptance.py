"""
End-to-end acceptance checks for the constructions, searches and bounds.

These run for minutes rather than seconds; skip them with
    python manage.py test --exclude-tag slow
"""

import math
import random
from fractions import Fraction

from django.test import SimpleTestCase, tag

from constructions.builders import build_ES_lower, build_X
from constructions.verifier import ConstructionClaim, verify_construction
from extremal.bounds import es_lower, f3, h_ell
from extremal.engine import (
    StructureKind, find_structure, max_collinear, max_convex_subset,
)
from extremal.labels import count_downsets, enumerate_downsets, fingerprint_classes
from geometry.kernel import Point, PointSet
from relative.bodies import (
    ConvexBody, brute_force_relative, longest_inner_cap, longest_outer_cup,
)
from relative.order import brute_force_antichain, dilworth, prec_order
from relative.support import (
    check_transversals, find_fat_cap, populate_support, transversal_check,
)
from relative.tests import relative_instance

GRID = 10 ** 6


def _direction(p, q):
    dx, dy = q[0] - p[0], q[1] - p[1]
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    g = math.gcd(dx, dy)
    return dx // g, dy // g


def general_position(rng, size, spread=GRID):
    """size integer points with distinct x-coordinates and no three on a line."""
    kept = []
    for x in rng.sample(range(spread), size):
        while True:
            p = (x, rng.randrange(spread))
            directions = [_direction(p, q) for q in kept]
            if len(set(directions)) == len(directions):
                kept.append(p)
                break
    return PointSet(Point(x, y) for x, y in kept)


@tag('slow')
class ClassicalSharpnessTests(SimpleTestCase):

    def test_construction_is_extremal(self):
        for m in range(3, 9):
            for n in range(3, 9):
                with self.subTest(m=m, n=n):
                    pts = build_X(3, m, n)
                    self.assertEqual(len(pts), math.comb(m + n - 4, n - 2))
                    self.assertIsNone(find_structure(pts, 3, m, n))

    def test_one_more_point_forces_a_structure(self):
        rng = random.Random(2024)
        for m in range(3, 7):
            for n in range(3, 7):
                size = f3(m, n)
                for _ in range(1000):
                    pts = general_position(rng, size)
                    witness = find_structure(pts, 3, m, n)
                    self.assertIsNotNone(witness, (m, n, pts))
                    self.assertTrue(witness.verify())


@tag('slow')
class CollinearLowerBoundTests(SimpleTestCase):

    def test_certificates(self):
        for ell in (4, 5):
            for m in range(3, 8):
                for n in range(3, 8):
                    with self.subTest(ell=ell, m=m, n=n):
                        certificate = verify_construction(build_X(ell, m, n), ConstructionClaim.x(ell, m, n))
                        self.assertTrue(certificate.passes)
                        self.assertGreaterEqual(Fraction(certificate.size), h_ell(ell, m, n))


@tag('slow')
class ConvexLowerBoundTests(SimpleTestCase):

    def test_construction(self):
        for ell in (3, 4):
            for n in (6, 7):
                with self.subTest(ell=ell, n=n):
                    pts = build_ES_lower(ell, n)
                    self.assertEqual(len(pts), (3 * ell - 1) * 2 ** (n - 5))
                    self.assertLessEqual(max_convex_subset(pts).size, n - 1)
                    self.assertLessEqual(max_collinear(pts).size, ell - 1)

    def test_classical_es6(self):
        pts = build_ES_lower(3, 6)
        self.assertEqual(len(pts) + 1, es_lower(3, 6))
        self.assertEqual(es_lower(3, 6), 17)
        self.assertEqual(max_convex_subset(pts).size, 5)


@tag('slow')
class DownSetTests(SimpleTestCase):

    def test_counts(self):
        for a in range(7):
            for b in range(7):
                downsets = enumerate_downsets(a, b)
                self.assertEqual(len(downsets), math.comb(a + b, a))
                self.assertEqual(len(set(downsets)), count_downsets(a, b))

    def test_fingerprints_of_extremal_sets(self):
        for m in range(3, 9):
            for n in range(3, 9):
                with self.subTest(m=m, n=n):
                    classes = fingerprint_classes(build_X(3, m, n), m - 2, n - 2)
                    self.assertLessEqual(len(classes), math.comb(m + n - 4, n - 2))


@tag('slow')
class DilworthTests(SimpleTestCase):
    SEGMENT = ConvexBody.segment(Point(0, 0), Point(10, 0))

    def instance(self, rng, size):
        grid = [Point(x, y) for x in range(-30, 41) for y in range(1, 31)]
        return prec_order(rng.sample(grid, size), self.SEGMENT)

    def test_product_bound(self):
        rng = random.Random(7)
        for _ in range(500):
            result = dilworth(self.instance(rng, 50))
            self.assertGreaterEqual(result.v * result.h, 50)

    def test_antichain_oracle(self):
        rng = random.Random(8)
        for _ in range(100):
            instance = self.instance(rng, rng.randint(1, 15))
            self.assertEqual(dilworth(instance).h, brute_force_antichain(instance))


@tag('slow')
class FatCapTests(SimpleTestCase):

    def test_random_sets(self):
        rng = random.Random(99)
        for trial in range(20):
            pts = PointSet(
                Point(x, rng.randrange(GRID)) for x in rng.sample(range(GRID), 2000)
            )
            fat = find_fat_cap(pts, 4, seed=trial)
            self.assertGreaterEqual(fat.min_occupancy, 1)
            result = transversal_check(pts, fat.cap, 10_000, seed=trial)
            self.assertTrue(result.ok, result.counterexample)
            self.assertEqual(result.violations, 0)

    def test_planted_counterexample(self):
        rng = random.Random(5)
        pts = general_position(rng, 300, spread=10 ** 4)
        fat = find_fat_cap(pts, 4, seed=5)
        self.assertGreaterEqual(fat.min_occupancy, 1)
        occupancy = populate_support(pts, fat.cap)
        a, b, c = (members[0] for members in occupancy.members[:3])
        inside = Point((a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3)

        result = check_transversals([[a], [b], [c], [inside]], 10_000)
        self.assertFalse(result.ok)
        self.assertEqual((result.checked, result.violations), (1, 1))


@tag('slow')
class RelativeOracleTests(SimpleTestCase):

    def test_against_exhaustive_search(self):
        rng = random.Random(31)
        bodies = [
            ConvexBody.point(Point(0, -6)),
            ConvexBody.segment(Point(-4, -6), Point(4, -6)),
        ]
        for trial in range(200):
            body = bodies[trial % 2]
            pts = relative_instance(rng, body, rng.randint(3, 10))
            for kind, search in ((StructureKind.INNER_CAP, longest_inner_cap),
                                 (StructureKind.OUTER_CUP, longest_outer_cup)):
                witness = search(pts, body)
                self.assertTrue(witness.verify())
                self.assertEqual(witness.size, brute_force_relative(pts, body, kind).size)


class FormulaTests(SimpleTestCase):

    def test_spot_values(self):
        self.assertEqual(h_ell(3, 5, 5), 20)
        self.assertEqual(f3(4, 4), 7)
        for n in range(5, 12):
            self.assertEqual(es_lower(3, n), 2 ** (n - 2) + 1)
