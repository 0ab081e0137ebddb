import math
import random
from fractions import Fraction
from itertools import combinations

from django.test import SimpleTestCase

from core.exceptions import CapacityError, DistinctXRequired, PreconditionError
from geometry.kernel import Orientation, Point, PointSet, orientation
from .bounds import (
    BoundsConfig, bound_table, cell_count, es_lower, es_upper_exponent, f3,
    f_ell_upper, h_ell, relative_upper, supersaturation_threshold,
)
from .engine import (
    StructureKind, StructureWitness, brute_force_convex_subset,
    brute_force_longest_chain, find_structure, longest_cap, longest_cup,
    max_collinear, max_convex_subset,
)
from .labels import (
    DownSet, count_downsets, downset_of, enumerate_downsets,
    fingerprint_classes, grid_antichain_width, pair_labels,
)


def parabola(count, sign=1):
    return PointSet(Point(i, sign * i * i) for i in range(count))


def random_points(rng, size, spread=40):
    xs = rng.sample(range(spread), size)
    return PointSet(Point(x, rng.randrange(spread)) for x in xs)


def in_general_position(points):
    return all(orientation(*t) != Orientation.COLLINEAR for t in combinations(points, 3))


class CupCapTests(SimpleTestCase):

    def test_parabola_is_a_cup(self):
        cup = longest_cup(parabola(5))
        self.assertEqual(cup.size, 5)
        self.assertEqual(cup.kind, StructureKind.CUP)
        self.assertTrue(cup.verify())

    def test_collinear_points_give_a_pair(self):
        line = PointSet(Point(i, 2 * i) for i in range(5))
        cup = longest_cup(line)
        self.assertEqual(list(cup.members), [Point(0, 0), Point(1, 2)])
        self.assertEqual(longest_cap(line).size, 2)

    def test_reflected_parabola_is_a_cap(self):
        self.assertEqual(longest_cap(parabola(5, sign=-1)).size, 5)
        self.assertEqual(longest_cap(parabola(5)).size, 2)

    def test_members_are_left_to_right(self):
        shuffled = PointSet([Point(3, 9), Point(0, 0), Point(2, 4), Point(1, 1)])
        self.assertEqual(list(longest_cup(shuffled).members), list(parabola(4)))

    def test_requires_distinct_x(self):
        with self.assertRaises(DistinctXRequired):
            longest_cup([Point(0, 0), Point(0, 1), Point(1, 0)])

    def test_requires_two_points(self):
        with self.assertRaises(PreconditionError):
            longest_cap([Point(0, 0)])

    def test_agrees_with_exhaustive_search(self):
        rng = random.Random(7)
        for _ in range(60):
            pts = random_points(rng, rng.randint(2, 12))
            self.assertEqual(longest_cup(pts).members, brute_force_longest_chain(pts, StructureKind.CUP).members)
            self.assertEqual(longest_cap(pts).members, brute_force_longest_chain(pts, StructureKind.CAP).members)


class CollinearTests(SimpleTestCase):

    def test_grid(self):
        grid = PointSet(Point(x, y) for x in range(3) for y in range(3))
        self.assertEqual(max_collinear(grid).size, 3)

    def test_diagonal_run(self):
        pts = [Point(0, 0), Point(1, 1), Point(2, 2), Point(3, 3), Point(0, 1)]
        run = max_collinear(pts)
        self.assertEqual(run.size, 4)
        self.assertNotIn(Point(0, 1), run.members)
        self.assertTrue(run.verify())

    def test_vertical_line(self):
        pts = [Point(0, y) for y in range(4)] + [Point(1, 5)]
        self.assertEqual(max_collinear(pts).size, 4)

    def test_general_position_gives_a_pair(self):
        run = max_collinear(parabola(6))
        self.assertEqual(list(run.members), [Point(0, 0), Point(1, 1)])


class ConvexSubsetTests(SimpleTestCase):

    def test_grid(self):
        grid = PointSet(Point(x, y) for x in range(3) for y in range(3))
        witness = max_convex_subset(grid)
        self.assertEqual(witness.size, 5)
        self.assertEqual(brute_force_convex_subset(grid).size, 5)
        self.assertTrue(witness.verify())

    def test_parabola(self):
        self.assertEqual(max_convex_subset(parabola(7)).size, 7)

    def test_collinear_input(self):
        witness = max_convex_subset([Point(i, i) for i in range(5)])
        self.assertEqual(witness.size, 2)

    def test_rational_coordinates(self):
        pts = [Point(0, 0), Point('1/2', '1/3'), Point(1, 0), Point('1/2', 1), Point('1/2', '1/2')]
        self.assertEqual(max_convex_subset(pts).size, brute_force_convex_subset(pts).size)

    def test_requires_three_points(self):
        with self.assertRaises(PreconditionError):
            max_convex_subset([Point(0, 0), Point(1, 1)])

    def test_agrees_with_exhaustive_search(self):
        rng = random.Random(11)
        for _ in range(60):
            size = rng.randint(3, 12)
            pts = PointSet(rng.sample([Point(x, y) for x in range(7) for y in range(7)], size))
            witness = max_convex_subset(pts)
            self.assertTrue(witness.verify())
            self.assertEqual(witness.size, brute_force_convex_subset(pts).size)

    def test_oracle_cap(self):
        with self.assertRaises(CapacityError):
            brute_force_convex_subset(parabola(21))


class StructureWitnessTests(SimpleTestCase):

    def test_rejects_wrong_kind(self):
        members = parabola(4)
        self.assertTrue(StructureWitness(StructureKind.CUP, members).verify())
        self.assertFalse(StructureWitness(StructureKind.CAP, members).verify())
        self.assertFalse(StructureWitness(StructureKind.COLLINEAR, members).verify())

    def test_inner_cap_against_a_point(self):
        cap = PointSet([Point(-2, 3), Point(0, 4), Point(2, 3)])
        self.assertTrue(StructureWitness(StructureKind.INNER_CAP, cap, (Point(0, -10),)).verify())
        self.assertFalse(StructureWitness(StructureKind.INNER_CAP, cap, (Point(0, 10),)).verify())
        self.assertTrue(StructureWitness(StructureKind.OUTER_CUP, cap, (Point(0, 10),)).verify())

    def test_to_dict(self):
        payload = longest_cup(parabola(3)).to_dict()
        self.assertEqual(payload['kind'], 'cup')
        self.assertEqual(payload['points'], [['0', '0'], ['1', '1'], ['2', '4']])


class PairLabelTests(SimpleTestCase):

    def test_examples(self):
        labels = pair_labels([Point(0, 0), Point(1, 1), Point(2, 0)])
        self.assertEqual(labels[(Point(1, 1), Point(2, 0))].as_tuple(), (1, 2))
        labels = pair_labels([Point(0, 0), Point(1, 0), Point(2, 0)])
        self.assertEqual(labels[(Point(1, 0), Point(2, 0))].as_tuple(), (1, 1))
        labels = pair_labels(parabola(4))
        self.assertEqual(labels[(Point(2, 4), Point(3, 9))].as_tuple(), (3, 1))

    def test_labels_match_brute_force(self):
        rng = random.Random(3)
        for _ in range(25):
            pts = random_points(rng, 7)
            order = list(pts.sorted_by_x())
            labels = pair_labels(pts)
            for i, j in combinations(range(len(order)), 2):
                best = {StructureKind.CUP: 1, StructureKind.CAP: 1}
                for size in range(1, i + 1):
                    for prefix in combinations(order[:i], size):
                        chain = PointSet(prefix + (order[i], order[j]))
                        for kind in best:
                            if StructureWitness(kind, chain).verify():
                                best[kind] = max(best[kind], len(chain) - 1)
                label = labels[(order[i], order[j])]
                self.assertEqual(label.x_label, best[StructureKind.CUP])
                self.assertEqual(label.y_label, best[StructureKind.CAP])

    def test_labels_grow_along_cups_and_caps(self):
        rng = random.Random(5)
        pts = random_points(rng, 12)
        labels = pair_labels(pts)
        for p, q, r in combinations(list(pts.sorted_by_x()), 3):
            turn = orientation(p, q, r)
            if turn == Orientation.LEFT:
                self.assertGreaterEqual(labels[(q, r)].x_label, labels[(p, q)].x_label + 1)
            elif turn == Orientation.RIGHT:
                self.assertGreaterEqual(labels[(q, r)].y_label, labels[(p, q)].y_label + 1)


class DownSetTests(SimpleTestCase):

    def test_leftmost_point_has_empty_fingerprint(self):
        pts = [Point(0, 0), Point(1, 1), Point(2, 0)]
        self.assertEqual(downset_of(pts, Point(0, 0), 2, 2), DownSet.empty(2, 2))

    def test_generated_fingerprint(self):
        pts = [Point(0, 0), Point(1, 1), Point(2, 0)]
        self.assertEqual(downset_of(pts, Point(2, 0), 2, 2).profile, (2, 0))

    def test_collinear_fingerprint(self):
        pts = [Point(i, 0) for i in range(4)]
        self.assertEqual(downset_of(pts, Point(3, 0), 2, 2).profile, (1, 0))

    def test_label_outside_grid(self):
        with self.assertRaises(PreconditionError):
            downset_of(parabola(4), Point(3, 9), 2, 2)

    def test_membership(self):
        down = DownSet(3, 2, (2, 1, 0))
        self.assertIn((1, 2), down)
        self.assertNotIn((2, 2), down)
        self.assertEqual(len(down), 3)
        self.assertEqual(down.elements(), [(1, 1), (1, 2), (2, 1)])

    def test_profile_must_be_non_increasing(self):
        with self.assertRaises(PreconditionError):
            DownSet(2, 2, (0, 1))

    def test_counts(self):
        self.assertEqual(count_downsets(2, 2), 6)
        self.assertEqual(count_downsets(0, 5), 1)
        self.assertEqual(count_downsets(3, 4), 35)
        self.assertEqual(len(enumerate_downsets(3, 4)), 35)

    def test_enumeration(self):
        self.assertEqual(len(enumerate_downsets(1, 1)), 2)
        self.assertEqual(enumerate_downsets(0, 0), [DownSet(0, 0, ())])
        six = enumerate_downsets(2, 2)
        self.assertEqual(len(set(six)), 6)

    def test_enumeration_cap(self):
        with self.assertRaises(CapacityError):
            enumerate_downsets(12, 12)

    def test_antichain_width(self):
        self.assertEqual(grid_antichain_width(2, 5), 2)
        self.assertEqual(grid_antichain_width(0, 3), 0)

    def test_pigeonhole_on_random_sets(self):
        rng = random.Random(13)
        for _ in range(20):
            pts = random_points(rng, 15)
            a = longest_cup(pts).size - 1
            b = longest_cap(pts).size - 1
            classes = fingerprint_classes(pts, a, b)
            self.assertEqual(sum(len(members) for members in classes.values()), len(pts))
            self.assertLessEqual(len(classes), count_downsets(a, b))


class FindStructureTests(SimpleTestCase):

    def test_seven_points_in_general_position(self):
        rng = random.Random(17)
        checked = 0
        while checked < 100:
            pts = random_points(rng, 7)
            if not in_general_position(pts):
                continue
            checked += 1
            witness = find_structure(pts, 3, 4, 4)
            self.assertIsNotNone(witness)
            self.assertTrue(witness.verify())

    def test_collinear_first(self):
        witness = find_structure([Point(i, i) for i in range(5)], 5, 3, 3)
        self.assertEqual(witness.kind, StructureKind.COLLINEAR)
        self.assertEqual(witness.size, 5)

    def test_trims_to_requested_size(self):
        witness = find_structure(parabola(6), 3, 4, 4)
        self.assertEqual(witness.kind, StructureKind.CUP)
        self.assertEqual(witness.size, 4)

    def test_none_when_absent(self):
        self.assertIsNone(find_structure(parabola(3), 3, 4, 3))

    def test_requires_distinct_x(self):
        with self.assertRaises(DistinctXRequired):
            find_structure([Point(0, 0), Point(0, 1)], 3, 3, 3)

    def test_rejects_small_parameters(self):
        with self.assertRaises(PreconditionError):
            find_structure(parabola(3), 2, 3, 3)


class BoundsTests(SimpleTestCase):

    def test_h_ell(self):
        self.assertEqual(h_ell(3, 5, 5), 20)
        self.assertEqual(h_ell(4, 4, 4), 8)
        self.assertEqual(h_ell(3, 3, 3), 2)
        self.assertEqual(h_ell(4, 3, 3), Fraction(5, 2))

    def test_f3(self):
        self.assertEqual(f3(4, 4), 7)
        for n in range(3, 10):
            self.assertEqual(f3(3, n), n)

    def test_es_lower(self):
        for n in range(3, 10):
            self.assertEqual(es_lower(3, n), Fraction(2) ** (n - 2) + 1)
        self.assertEqual(es_lower(4, 6), 23)
        self.assertEqual(es_lower(4, 4), Fraction(13, 2))

    def test_configurable_rows(self):
        cfg = BoundsConfig(c=Fraction(3))
        self.assertEqual(f_ell_upper(3, 4, 4, cfg), 3 * (3 + 3) * 6)
        self.assertEqual(relative_upper(3, 4, 4, cfg), f_ell_upper(3, 4, 4, cfg))
        self.assertEqual(es_upper_exponent(4, BoundsConfig(big_c=Fraction(1))), math.ceil(4 + math.sqrt(8)))
        self.assertEqual(supersaturation_threshold(3, 2, cfg), 3 * 2 ** 64)
        self.assertEqual(cell_count(4), 2 * math.ceil(math.sqrt(8)))

    def test_config_validation(self):
        from core.exceptions import ConfigError
        with self.assertRaises(ConfigError):
            BoundsConfig(epsilon=Fraction(3, 2))
        with self.assertRaises(ConfigError):
            BoundsConfig(c=Fraction(0))
        self.assertEqual(BoundsConfig.from_epsilon(Fraction(1, 5)).c, 50)

    def test_bound_table(self):
        table = bound_table(3, 6)
        self.assertEqual(len(table.pairs), 16)
        self.assertEqual(table.pair(5, 5).h_ell, 20)
        self.assertEqual(table.es_row(6).es_lower, 17)
        payload = table.to_dict()
        self.assertEqual(payload['config']['c'], '100')
        self.assertIn('f_ell_upper', payload['conditional_on_config'])
