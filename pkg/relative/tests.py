import random
from fractions import Fraction
from itertools import combinations

from django.test import SimpleTestCase

from core.exceptions import CapacityError, NoStructureFound, PreconditionError
from extremal.engine import StructureKind, StructureWitness
from geometry.kernel import Point, PointSet, in_convex_hull, is_convex_position
from .bodies import (
    ConvexBody, as_body, brute_force_relative, check_avoidance,
    classify_triple_wrt, longest_inner_cap, longest_outer_cup, radial_order,
)
from .cells import CellProfile, cell_bodies, cell_profile
from .order import brute_force_antichain, dilworth, prec_order
from .support import (
    check_transversals, find_fat_cap, populate_support, support_regions,
    transversal_check,
)

FOUR_CAP = PointSet([Point(0, 0), Point(2, 3), Point(5, 3), Point(7, 0)])
SIX_CAP = PointSet([Point(0, 0), Point(2, 3), Point(5, 4), Point(8, 4), Point(11, 3), Point(13, 0)])
FIVE_CAP = PointSet([Point(0, 0), Point(1, 3), Point(3, 4), Point(5, 3), Point(6, 0)])

# bounding boxes of the chain regions of SIX_CAP, scaled by 24
SIX_CAP_BOXES = {
    1: (48, 120, 72, 96),
    2: (120, 192, 96, 108),
    3: (192, 264, 72, 96),
}


def avoids(p, q, body):
    try:
        check_avoidance([p, q], body)
    except PreconditionError:
        return False
    return True


def relative_instance(rng, body, size, spread=8):
    """Points above the line y = 1/2 whose pairwise lines all miss body."""
    body = as_body(body)
    kept = []
    for _ in range(300):
        if len(kept) == size:
            break
        c = Point(rng.randint(-spread, spread), rng.randint(1, spread))
        if c not in kept and all(avoids(c, q, body) for q in kept):
            kept.append(c)
    return PointSet(kept)


def cell_points(rng, r, size, attempts=800):
    """Random points inside support region r of SIX_CAP; no line through two of them meets x_r or x_{r+1}."""
    region = support_regions(SIX_CAP)[r]
    left, right, _ = cell_bodies(SIX_CAP, r)
    bodies = [ConvexBody.point(left), ConvexBody.point(right)]
    x0, x1, y0, y1 = SIX_CAP_BOXES[r]
    kept = []
    for _ in range(attempts):
        if len(kept) == size:
            break
        c = Point(Fraction(rng.randint(x0, x1), 24), Fraction(rng.randint(y0, y1), 24))
        if c in kept or not region.contains(c):
            continue
        if all(avoids(c, q, body) for q in kept for body in bodies):
            kept.append(c)
    return PointSet(kept)


def brute_restricted(points, instance, body, kind, want_chain):
    index = {p: i for i, p in enumerate(instance.ground)}
    pts = list(points)
    for size in range(len(pts), 0, -1):
        for subset in combinations(pts, size):
            ids = [index[p] for p in subset]
            ordered = instance.is_chain(ids) if want_chain else instance.is_antichain(ids)
            if ordered and StructureWitness(kind, PointSet(subset), as_body(body).vertices).verify():
                return size
    return 0


class SupportRegionTests(SimpleTestCase):

    def test_four_cap_regions(self):
        regions = support_regions(FOUR_CAP)
        self.assertEqual(len(regions), 4)
        probe = Point(Fraction(7, 2), Fraction(7, 2))
        self.assertEqual([r.contains(probe) for r in regions], [False, True, False, False])
        self.assertEqual(regions[1].edge, (Point(2, 3), Point(5, 3)))

    def test_cap_points_are_in_no_region(self):
        for region in support_regions(FOUR_CAP):
            self.assertFalse(any(region.contains(p) for p in FOUR_CAP))

    def test_unsorted_input(self):
        shuffled = PointSet([FOUR_CAP[2], FOUR_CAP[0], FOUR_CAP[3], FOUR_CAP[1]])
        self.assertEqual(support_regions(shuffled), support_regions(FOUR_CAP))

    def test_rejects_short_or_non_convex_chains(self):
        with self.assertRaises(PreconditionError):
            support_regions(FOUR_CAP[:3])
        with self.assertRaises(PreconditionError):
            support_regions([Point(0, 0), Point(1, 1), Point(2, 0), Point(3, 1)])

    def test_regions_are_disjoint_and_outside_the_hull(self):
        rng = random.Random(7)
        for trial in range(10):
            sign = 1 if trial % 2 else -1
            xs = sorted(rng.sample(range(13), 5))
            chain = PointSet(Point(x, sign * x * x) for x in xs)
            regions = support_regions(chain)
            for _ in range(200):
                p = Point(Fraction(rng.randint(-8, 56), 4), Fraction(rng.randint(-600, 600), 4))
                inside = [r.index for r in regions if r.contains(p)]
                self.assertLessEqual(len(inside), 1)
                if inside:
                    self.assertFalse(in_convex_hull(p, chain))

    def test_populate_counts(self):
        self.assertEqual(populate_support(FOUR_CAP, FOUR_CAP).counts, [0, 0, 0, 0])
        probe = Point(Fraction(7, 2), Fraction(7, 2))
        occupancy = populate_support(list(FOUR_CAP) + [probe], FOUR_CAP)
        self.assertEqual(occupancy.counts, [0, 1, 0, 0])
        self.assertEqual(list(occupancy.members[1]), [probe])

    def test_populate_agrees_with_exact_regions(self):
        rng = random.Random(3)
        pts = PointSet({Point(Fraction(rng.randint(-20, 160), 20), Fraction(rng.randint(-40, 100), 20))
                        for _ in range(300)})
        occupancy = populate_support(pts, FOUR_CAP)
        for region, members in zip(occupancy.regions, occupancy.members):
            self.assertEqual(list(members), [p for p in pts if region.contains(p)])
        self.assertLessEqual(sum(occupancy.counts), len(pts))


class FatCapTests(SimpleTestCase):

    def test_parabola(self):
        pts = PointSet(Point(x, x * x) for x in range(200))
        fat = find_fat_cap(pts, 4, seed=1)
        self.assertEqual(fat.k, 4)
        self.assertEqual(fat.kind, StructureKind.CUP)
        self.assertGreaterEqual(fat.min_occupancy, 1)
        self.assertLessEqual(sum(fat.occupancy.counts), len(pts))

    def test_deterministic(self):
        rng = random.Random(11)
        pts = PointSet(Point(x, rng.randrange(500)) for x in rng.sample(range(500), 300))
        self.assertEqual(find_fat_cap(pts, 4, seed=5).to_dict(), find_fat_cap(pts, 4, seed=5).to_dict())

    def test_finalists_are_counted_on_the_full_set(self):
        rng = random.Random(23)
        for _ in range(5):
            pts = PointSet(Point(x, rng.randrange(60)) for x in rng.sample(range(60), 9))
            best = -1
            for combo in combinations(sorted(pts), 4):
                try:
                    occupancy = populate_support(pts, combo)
                except PreconditionError:
                    continue
                best = max(best, min(occupancy.chain_counts))
            if best < 0:
                continue
            # every candidate reaches the exact stage, so a two-point probe cannot mislead
            fat = find_fat_cap(pts, 4, seed=1, budget=1, sample_size=9, probe_size=2, finalists=200)
            self.assertEqual(fat.min_occupancy, best)
            self.assertEqual(fat.min_occupancy, min(populate_support(pts, fat.cap).chain_counts))

    def test_exact_cap(self):
        fat = find_fat_cap(FIVE_CAP, 5, seed=0)
        self.assertEqual(fat.cap, FIVE_CAP)
        self.assertEqual(fat.min_occupancy, 0)
        self.assertEqual(fat.to_dict()['cap'][0], ['0', '0'])

    def test_collinear_points_have_no_cap(self):
        with self.assertRaises(NoStructureFound):
            find_fat_cap([Point(i, 2 * i) for i in range(12)], 4, seed=0)

    def test_rejects_bad_parameters(self):
        with self.assertRaises(PreconditionError):
            find_fat_cap(FIVE_CAP, 3)
        with self.assertRaises(PreconditionError):
            find_fat_cap(FIVE_CAP, 6)
        with self.assertRaises(PreconditionError):
            find_fat_cap(FIVE_CAP, 4, finalists=0)


class TransversalTests(SimpleTestCase):

    def test_one_point_per_region(self):
        picks = [Point(1, 2), Point(Fraction(7, 2), Fraction(7, 2)), Point(6, 2)]
        result = transversal_check(list(FOUR_CAP) + picks, FOUR_CAP, sample_budget=100)
        self.assertTrue(result.ok)
        self.assertEqual(result.mode, 'exhaustive')
        self.assertEqual(result.checked, 1)
        self.assertEqual(result.ok, is_convex_position(picks))

    def test_empty_region_rejected(self):
        with self.assertRaises(PreconditionError):
            transversal_check(FOUR_CAP, FOUR_CAP, sample_budget=100)

    def test_parabola_transversals(self):
        pts = PointSet(Point(x, x * x) for x in range(120))
        fat = find_fat_cap(pts, 5, seed=2)
        result = transversal_check(pts, fat.cap, sample_budget=2000, seed=2)
        self.assertTrue(result.ok)
        self.assertEqual(result.violations, 0)

    def test_planted_counterexample(self):
        groups = [[Point(0, 0)], [Point(4, 0)], [Point(2, 4)], [Point(5, 5), Point(2, 1)]]
        result = check_transversals(groups, sample_budget=10)
        self.assertFalse(result.ok)
        self.assertEqual(result.mode, 'exhaustive')
        self.assertEqual((result.checked, result.violations), (2, 1))
        self.assertEqual(result.counterexample, (Point(0, 0), Point(4, 0), Point(2, 4), Point(2, 1)))
        self.assertEqual(result.to_dict()['counterexample'][3], ['2', '1'])

    def test_collinear_selection_fails(self):
        result = check_transversals([[Point(0, 0)], [Point(1, 1)], [Point(2, 2)]], sample_budget=10)
        self.assertFalse(result.ok)

    def test_sampling_mode(self):
        groups = [[Point(i, 0) for i in range(5)], [Point(i, 10) for i in range(5)], [Point(20, 5 + i) for i in range(5)]]
        result = check_transversals(groups, sample_budget=10, seed=4)
        self.assertEqual(result.mode, 'sampled')
        self.assertEqual(result.checked, 10)
        self.assertEqual(result, check_transversals(groups, sample_budget=10, seed=4))


class RadialOrderTests(SimpleTestCase):

    def test_point_body(self):
        expected = [Point(-2, 3), Point(-1, 4), Point(1, 4), Point(2, 3)]
        shuffled = [expected[2], expected[0], expected[3], expected[1]]
        self.assertEqual(radial_order(shuffled, Point(0, -10)), expected)

    def test_single_point(self):
        body = ConvexBody.segment(Point(-1, -5), Point(1, -5))
        self.assertEqual(radial_order([Point(0, 3)], body), [Point(0, 3)])

    def test_avoidance_violation_names_the_pair(self):
        with self.assertRaises(PreconditionError) as ctx:
            radial_order([Point(1, 0), Point(2, 10)], Point(0, -10))
        self.assertEqual(set(ctx.exception.witness), {Point(1, 0), Point(2, 10)})

    def test_separation_violation(self):
        with self.assertRaises(PreconditionError):
            radial_order([Point(-1, 1), Point(1, 1), Point(0, -1)], Point(0, 0))

    def test_body_validation(self):
        with self.assertRaises(PreconditionError):
            ConvexBody([Point(0, 0), Point(1, 1), Point(2, 2)])
        self.assertEqual(ConvexBody.polygon([Point(0, 0), Point(2, 0), Point(1, 1), Point(1, 0)]).kind, 'polygon')


class ClassifyTests(SimpleTestCase):
    TRIPLE = (Point(-2, 3), Point(0, 4), Point(2, 3))

    def test_inner_cap(self):
        self.assertEqual(classify_triple_wrt(Point(0, -10), *self.TRIPLE), StructureKind.INNER_CAP)

    def test_outer_cup(self):
        self.assertEqual(classify_triple_wrt(Point(0, 10), *self.TRIPLE), StructureKind.OUTER_CUP)

    def test_collinear(self):
        self.assertEqual(
            classify_triple_wrt(Point(0, -10), Point(-1, 3), Point(0, 3), Point(1, 3)),
            StructureKind.COLLINEAR,
        )

    def test_classification_is_total_and_closed(self):
        rng = random.Random(21)
        bodies = [ConvexBody.point(Point(0, -10)), ConvexBody.segment(Point(-3, -10), Point(3, -10))]
        for trial in range(12):
            body = bodies[trial % 2]
            order = radial_order(relative_instance(rng, body, 7), body)
            kinds = {
                t: classify_triple_wrt(body, *(order[i] for i in t))
                for t in combinations(range(len(order)), 3)
            }
            for i, j, s, t in combinations(range(len(order)), 4):
                for kind in (StructureKind.INNER_CAP, StructureKind.OUTER_CUP):
                    if kinds[(i, j, s)] == kind and kinds[(j, s, t)] == kind:
                        self.assertEqual(kinds[(i, j, t)], kind)
                        self.assertEqual(kinds[(i, s, t)], kind)


class RelativeChainTests(SimpleTestCase):

    def test_cap_far_above_a_point(self):
        witness = longest_inner_cap(FIVE_CAP, Point(0, -100))
        self.assertEqual(witness.size, 5)
        self.assertTrue(witness.verify())

    def test_collinear_points(self):
        line = [Point(x, 3) for x in range(-2, 3)]
        self.assertEqual(longest_inner_cap(line, Point(0, -10)).size, 2)

    def test_body_above_a_cup(self):
        cup = [Point(x, x * x) for x in range(-3, 4)]
        body = ConvexBody.segment(Point(-1, 40), Point(1, 40))
        outer = longest_outer_cup(cup, body)
        inner = longest_inner_cap(cup, body)
        self.assertEqual(outer.size, brute_force_relative(cup, body, StructureKind.OUTER_CUP).size)
        self.assertEqual(inner.size, brute_force_relative(cup, body, StructureKind.INNER_CAP).size)
        self.assertEqual((inner.size, outer.size), (7, 2))

    def test_matches_exhaustive_search(self):
        rng = random.Random(5)
        bodies = [ConvexBody.point(Point(0, -10)), ConvexBody.segment(Point(-3, -10), Point(3, -10))]
        for trial in range(30):
            body = bodies[trial % 2]
            pts = relative_instance(rng, body, rng.randint(3, 8))
            for kind, search in ((StructureKind.INNER_CAP, longest_inner_cap),
                                 (StructureKind.OUTER_CUP, longest_outer_cup)):
                witness = search(pts, body)
                self.assertTrue(witness.verify())
                self.assertEqual(witness.size, brute_force_relative(pts, body, kind).size)

    def test_oracle_cap(self):
        with self.assertRaises(CapacityError):
            brute_force_relative([Point(x, 1) for x in range(21)], Point(0, -1), StructureKind.INNER_CAP)


class PrecOrderTests(SimpleTestCase):
    SEGMENT = ConvexBody.segment(Point(0, 0), Point(4, 0))

    def test_examples(self):
        instance = prec_order([Point(2, 1), Point(2, 3)], self.SEGMENT)
        self.assertTrue(instance.less(0, 1))
        self.assertFalse(instance.less(1, 0))

    def test_vertical_chain(self):
        instance = prec_order([Point(2, 1), Point(2, 2), Point(2, 3)], self.SEGMENT)
        self.assertTrue(instance.is_chain([0, 1, 2]))

    def test_total_order(self):
        result = dilworth(prec_order([Point(2, y) for y in range(1, 6)], self.SEGMENT))
        self.assertEqual((result.v, result.h), (5, 1))
        self.assertEqual(list(result.chain), [Point(2, y) for y in range(1, 6)])

    def test_antichain(self):
        result = dilworth(prec_order([Point(x, 1) for x in (-10, -5, 0, 5, 10)], self.SEGMENT))
        self.assertEqual((result.v, result.h), (1, 5))
        self.assertEqual(len(result.cover), 5)

    def test_empty(self):
        result = dilworth(prec_order([], self.SEGMENT))
        self.assertEqual((result.v, result.h), (0, 0))

    def test_random_instances(self):
        rng = random.Random(17)
        grid = [Point(x, y) for x in range(-20, 21) for y in range(1, 21)]
        for size in (12, 50):
            for _ in range(4):
                instance = prec_order(rng.sample(grid, size), self.SEGMENT)
                result = dilworth(instance)
                self.assertGreaterEqual(result.v * result.h, size)
                covered = sorted(p for chain in result.cover for p in chain)
                self.assertEqual(covered, sorted(instance.ground))
                index = {p: i for i, p in enumerate(instance.ground)}
                for chain in result.cover:
                    self.assertTrue(instance.is_chain([index[p] for p in chain]))
                if size <= 15:
                    self.assertEqual(result.h, brute_force_antichain(instance))


class CellTests(SimpleTestCase):

    def test_cell_bodies(self):
        left, right, body = cell_bodies(SIX_CAP, 1)
        self.assertEqual((left, right), (Point(2, 3), Point(5, 4)))
        self.assertEqual(body.vertices, (Point(0, 0), Point(8, 4)))
        with self.assertRaises(PreconditionError):
            cell_bodies(SIX_CAP, 0)
        with self.assertRaises(PreconditionError):
            cell_bodies(SIX_CAP, 4)

    def test_single_point(self):
        left, right, body = cell_bodies(SIX_CAP, 1)
        profile = cell_profile([Point(Fraction(29, 9), Fraction(11, 3))], left, right, body)
        self.assertEqual((profile.h, profile.v, profile.a, profile.b, profile.w, profile.z), (1,) * 6)

    def test_matches_exhaustive_search(self):
        rng = random.Random(8)
        for r in (1, 2, 3):
            pts = cell_points(rng, r, 7)
            left, right, body = cell_bodies(SIX_CAP, r)
            profile = cell_profile(pts, left, right, body)
            instance = prec_order(pts, body)
            self.assertGreaterEqual(profile.v * profile.h, len(pts))
            self.assertEqual(profile.h, brute_force_antichain(instance))
            expected = {
                'a': brute_restricted(pts, instance, ConvexBody.point(right), StructureKind.INNER_CAP, True),
                'b': brute_restricted(pts, instance, ConvexBody.point(left), StructureKind.INNER_CAP, True),
                'w': brute_restricted(pts, instance, body, StructureKind.INNER_CAP, False),
                'z': brute_restricted(pts, instance, body, StructureKind.OUTER_CUP, False),
            }
            self.assertEqual({name: getattr(profile, name) for name in expected}, expected)
            for witness in profile.witnesses.values():
                self.assertTrue(witness.verify())

    def test_alternate_cells_inner_caps_are_convex(self):
        rng = random.Random(13)
        union = []
        for r in (1, 3):
            left, right, body = cell_bodies(SIX_CAP, r)
            profile = cell_profile(cell_points(rng, r, 8), left, right, body)
            union.extend(profile.witnesses['w'].members)
        self.assertTrue(is_convex_position(union))

    def test_adjacent_cells_share_a_convex_chain(self):
        rng = random.Random(29)
        first = cell_profile(cell_points(rng, 1, 8), *cell_bodies(SIX_CAP, 1))
        second = cell_profile(cell_points(rng, 2, 8), *cell_bodies(SIX_CAP, 2))
        union = list(first.witnesses['a'].members) + list(second.witnesses['b'].members)
        self.assertTrue(is_convex_position(union))

    def test_z_premise(self):
        profile = CellProfile(h=1, v=1, a=1, b=1, w=1, z=2)
        self.assertTrue(profile.z_below(4, [Point(0, 0), Point(1, 1), Point(2, 2)]))
        self.assertIsNone(profile.z_below(4, FIVE_CAP))
