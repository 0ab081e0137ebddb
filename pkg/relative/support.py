"""
Supports of cups and caps, fat-cap search and transversal checks.

The support of a k-cup or k-cap X = x_0 .. x_{k-1} (left to right) is a
list of k open regions. Region i lies beyond the edge x_i x_{i+1} and
between the lines x_{i-1} x_i and x_{i+1} x_{i+2}, indices wrapping around.
Regions 0 .. k-2 flank the chain edges; region k-1 flanks the closing edge.
"""

import logging
import math
import random
from dataclasses import dataclass
from itertools import combinations, product

from core.exceptions import NoStructureFound, PreconditionError
from core.utils import coord_pairs
from extremal.engine import StructureKind, StructureWitness, longest_cap, longest_cup
from geometry.kernel import (
    HalfPlane, PointSet, as_point_set, int_cross, integer_coordinates,
    is_convex_position, point_in_convex_region,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SupportRegion:
    index: int
    edge: tuple
    halfplanes: tuple

    def contains(self, p):
        return point_in_convex_region(p, self.halfplanes)

    def to_dict(self):
        return {
            'index': self.index,
            'edge': coord_pairs(self.edge),
            'halfplanes': [h.to_dict() for h in self.halfplanes],
        }


def _chain_kind(order):
    for kind in (StructureKind.CUP, StructureKind.CAP):
        if StructureWitness(kind, order).verify():
            return kind
    return None


def _support_order(points):
    order = as_point_set(points).require_distinct_x().sorted_by_x()
    if len(order) < 4:
        raise PreconditionError(f'A support needs a cup or cap of at least 4 points, got {len(order)}.')
    kind = _chain_kind(order)
    if kind is None:
        raise PreconditionError('Points are neither a cup nor a cap.', tuple(order))
    return order, kind


def support_regions(points):
    """The k open support regions of a cup or cap, in edge order."""
    order, _ = _support_order(points)
    k = len(order)
    regions = []
    for i in range(k):
        prev, a, b, nxt = order[i - 1], order[i], order[(i + 1) % k], order[(i + 2) % k]
        regions.append(SupportRegion(i, (a, b), (
            HalfPlane.through(a, b, containing=nxt).opposite(),
            HalfPlane.through(prev, a, containing=b),
            HalfPlane.through(b, nxt, containing=a),
        )))
    return regions


def _sign(value):
    return (value > 0) - (value < 0)


def _region_tests(chain):
    """Integer form of support_regions: per region, (p, q, side) triples."""
    k = len(chain)
    tests = []
    for i in range(k):
        prev, a, b, nxt = chain[i - 1], chain[i], chain[(i + 1) % k], chain[(i + 2) % k]
        tests.append((
            (a, b, -_sign(int_cross(a, b, nxt))),
            (prev, a, _sign(int_cross(prev, a, b))),
            (b, nxt, _sign(int_cross(b, nxt, a))),
        ))
    return tests


def _inside(tests, r):
    return all(int_cross(p, q, r) * side > 0 for p, q, side in tests)


@dataclass(frozen=True)
class SupportOccupancy:
    regions: tuple
    members: tuple

    @property
    def counts(self):
        return [len(m) for m in self.members]

    @property
    def chain_counts(self):
        return self.counts[:-1]

    def to_dict(self):
        return {
            'counts': self.counts,
            'regions': [r.to_dict() for r in self.regions],
            'members': [coord_pairs(m) for m in self.members],
        }


def populate_support(points, cap):
    """Exact membership of every point in every support region of cap."""
    ps = as_point_set(points)
    regions = support_regions(cap)
    chain = [r.edge[0] for r in regions]
    coords = integer_coordinates(chain + list(ps))
    tests = _region_tests(coords[:len(chain)])
    lookup = coords[len(chain):]
    members = tuple(
        PointSet(p for p, c in zip(ps, lookup) if _inside(region_tests, c))
        for region_tests in tests
    )
    return SupportOccupancy(tuple(regions), members)


@dataclass(frozen=True)
class FatCap:
    kind: StructureKind
    cap: PointSet
    occupancy: SupportOccupancy

    @property
    def k(self):
        return len(self.cap)

    @property
    def min_occupancy(self):
        return min(self.occupancy.chain_counts)

    def to_dict(self):
        return {
            'k': self.k,
            'cap': coord_pairs(self.cap),
            'occupancies': self.occupancy.counts,
            'min_occupancy': self.min_occupancy,
        }


def _turns(chain):
    signs = {_sign(int_cross(p, q, r)) for p, q, r in zip(chain, chain[1:], chain[2:])}
    return signs if len(signs) == 1 and 0 not in signs else None


def _score(chain, probe, floor):
    """Minimum probe count over the chain regions; stops once it cannot beat floor."""
    best = None
    for region_tests in _region_tests(chain)[:-1]:
        count = sum(1 for r in probe if _inside(region_tests, r))
        best = count if best is None else min(best, count)
        if floor is not None and best <= floor:
            break
    return best


def _admit(finalists, score, combo, keep):
    """Insert (score, combo) into the best-first list finalists, keeping at most keep entries."""
    if any(c == combo for _, c in finalists):
        return
    at = next((i for i, (s, _) in enumerate(finalists) if s < score), len(finalists))
    finalists.insert(at, (score, combo))
    del finalists[keep:]


def find_fat_cap(points, k, seed=0, budget=8, sample_size=10, probe_size=256, finalists=4):
    """
    Empirical search for a k-cup or k-cap whose chain regions are all well
    populated. Each round draws sample_size points and scores every k-cup
    and k-cap among them on a fixed probe sample. The best `finalists`
    candidates are then counted exactly on the full set, and the one with
    the largest minimum occupancy wins (earlier probe rank on ties).
    Deterministic for a given seed.
    Raises NoStructureFound when P holds no k-cup and no k-cap.
    """
    ps = as_point_set(points).require_distinct_x()
    if k < 4:
        raise PreconditionError(f'find_fat_cap needs k >= 4, got {k}.')
    if len(ps) < k:
        raise PreconditionError(f'find_fat_cap needs at least k={k} points, got {len(ps)}.')
    if budget < 1 or sample_size < k or finalists < 1:
        raise PreconditionError('budget and finalists must be positive and sample_size at least k.')

    rng = random.Random(seed)
    coords = integer_coordinates(ps)
    probe = [coords[i] for i in rng.sample(range(len(ps)), min(probe_size, len(ps)))]

    leaders = []
    for rounds in range(budget):
        sample = sorted(rng.sample(range(len(ps)), min(sample_size, len(ps))), key=lambda i: coords[i])
        for combo in combinations(sample, k):
            chain = [coords[i] for i in combo]
            if _turns(chain) is None:
                continue
            floor = leaders[-1][0] if len(leaders) >= finalists else None
            score = _score(chain, probe, floor)
            if floor is None or score > floor:
                _admit(leaders, score, combo, finalists)
        logger.debug('find_fat_cap round %d: best probe score %s', rounds, leaders[0][0] if leaders else None)

    if leaders:
        candidates = [PointSet(ps[i] for i in combo) for _, combo in leaders]
    else:
        found = [w for w in (longest_cup(ps), longest_cap(ps)) if w.size >= k]
        if not found:
            raise NoStructureFound(f'No {k}-cup or {k}-cap in {len(ps)} points.')
        candidates = [found[0].members[:k]]

    result = None
    for cap in candidates:
        order, kind = _support_order(cap)
        candidate = FatCap(kind, order, populate_support(ps, order))
        if result is None or candidate.min_occupancy > result.min_occupancy:
            result = candidate
    logger.info('find_fat_cap: %s of %d points, min occupancy %d', result.kind.value, k, result.min_occupancy)
    return result


@dataclass(frozen=True)
class TransversalResult:
    ok: bool
    mode: str
    checked: int
    violations: int
    counterexample: tuple = None

    def to_dict(self):
        return {
            'ok': self.ok,
            'mode': self.mode,
            'checked': self.checked,
            'violations': self.violations,
            'counterexample': coord_pairs(self.counterexample) if self.counterexample else None,
        }


def check_transversals(groups, sample_budget, seed=0):
    """
    Check that every selection of one point per group is in convex position.
    Exhaustive when the number of selections fits sample_budget, otherwise
    sample_budget uniform draws from random.Random(seed).
    """
    groups = [list(g) for g in groups]
    for i, group in enumerate(groups):
        if not group:
            raise PreconditionError(f'Group {i} is empty; nothing to select from.')
    if sample_budget < 1:
        raise PreconditionError('sample_budget must be positive.')

    total = math.prod(len(g) for g in groups)
    if total <= sample_budget:
        mode, selections = 'exhaustive', product(*groups)
    else:
        rng = random.Random(seed)
        mode = 'sampled'
        selections = ([rng.choice(g) for g in groups] for _ in range(sample_budget))

    checked = violations = 0
    counterexample = None
    for selection in selections:
        checked += 1
        if not is_convex_position(selection):
            violations += 1
            if counterexample is None:
                counterexample = tuple(selection)
    logger.debug('check_transversals: %s, %d checked, %d violations', mode, checked, violations)
    return TransversalResult(violations == 0, mode, checked, violations, counterexample)


def transversal_check(points, cap, sample_budget, seed=0, regions=None):
    """check_transversals over the populated support regions (chain regions by default)."""
    occupancy = populate_support(points, cap)
    selected = list(regions) if regions is not None else list(range(len(occupancy.regions) - 1))
    for i in selected:
        if not occupancy.members[i]:
            raise PreconditionError(f'Support region {i} holds no points.')
    return check_transversals([occupancy.members[i] for i in selected], sample_budget, seed)
