"""
Point sets relative to a convex body K: separation, avoidance, radial
order, triple classification and the longest inner-cap / outer-cup.
"""

import logging
from dataclasses import dataclass
from functools import cmp_to_key
from itertools import combinations

from core.exceptions import CapacityError, PreconditionError
from extremal.engine import ORACLE_CAP, StructureKind, StructureWitness
from geometry.kernel import (
    Orientation, Point, PointSet, as_point_set, convex_hull, cross,
    hull_contains, hulls_disjoint, in_convex_hull, is_convex_position, orientation,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConvexBody:
    """A point, a segment or a convex polygon, kept as strict hull vertices."""
    vertices: tuple

    def __post_init__(self):
        vertices = tuple(v if isinstance(v, Point) else Point(*v) for v in self.vertices)
        if not vertices:
            raise PreconditionError('A convex body needs at least one vertex.')
        if len(vertices) > 2 and not is_convex_position(vertices):
            raise PreconditionError('Polygon vertices must be in strict convex position.', vertices)
        if len(vertices) == 2 and vertices[0] == vertices[1]:
            raise PreconditionError('Segment endpoints must differ.', vertices)
        object.__setattr__(self, 'vertices', vertices)

    @classmethod
    def point(cls, p):
        return cls((p,))

    @classmethod
    def segment(cls, p, q):
        return cls((p, q))

    @classmethod
    def polygon(cls, points):
        return cls(convex_hull(points))

    @property
    def kind(self):
        return {1: 'point', 2: 'segment'}.get(len(self.vertices), 'polygon')

    def contains(self, p, closed=True):
        return hull_contains(convex_hull(self.vertices), p, closed=closed)

    def to_dict(self):
        return {'kind': self.kind, 'vertices': [v.as_pair() for v in self.vertices]}


def as_body(body):
    if isinstance(body, ConvexBody):
        return body
    if isinstance(body, Point):
        return ConvexBody.point(body)
    return ConvexBody(tuple(body))


def hulls_separated(points, body):
    """A line strictly separates conv(points) from body."""
    return hulls_disjoint(list(points), list(as_body(body).vertices))


def _side_of(p, q, body):
    """Common strict side of line pq for every vertex of body, or None if the line meets it."""
    sides = {orientation(p, q, v) for v in body.vertices}
    if len(sides) == 1 and Orientation.COLLINEAR not in sides:
        return sides.pop()
    return None


def check_avoidance(points, body):
    """Raise PreconditionError naming the first pair whose line meets body."""
    body = as_body(body)
    pts = list(points)
    for p, q in combinations(pts, 2):
        if _side_of(p, q, body) is None:
            raise PreconditionError(f'The line through {p} and {q} meets the body.', (p, q))


def check_relative(points, body):
    body = as_body(body)
    ps = as_point_set(points)
    if ps and not hulls_separated(ps, body):
        raise PreconditionError('No line separates the points from the body.', tuple(ps))
    check_avoidance(ps, body)
    return ps, body


def radial_order(points, body):
    """
    Clockwise order around body; for a body below the points this is left
    to right. p comes before q when body lies to the right of line pq.
    Raises PreconditionError if separation or avoidance fails.
    """
    ps, body = check_relative(points, body)

    def compare(p, q):
        if p == q:
            return 0
        return -1 if _side_of(p, q, body) == Orientation.RIGHT else 1

    order = sorted(ps, key=cmp_to_key(compare))
    for i, p in enumerate(order):
        for q in order[i + 1:]:
            if compare(p, q) > 0:
                raise PreconditionError('Points admit no radial order around the body.', (p, q))
    return order


def _anchor(body):
    n = len(body.vertices)
    return Point(sum(v.x for v in body.vertices) / n, sum(v.y for v in body.vertices) / n)


def anchored_order(points, body):
    """
    Clockwise order around a point of body. Agrees with radial_order on
    every subset whose pairs avoid body, but only needs separation.
    """
    ps, body = as_point_set(points), as_body(body)
    if ps and not hulls_separated(ps, body):
        raise PreconditionError('No line separates the points from the body.', tuple(ps))
    anchor = _anchor(body)

    def distance(p):
        return (p.x - anchor.x) ** 2 + (p.y - anchor.y) ** 2

    def compare(p, q):
        turn = orientation(p, q, anchor)
        if turn != Orientation.COLLINEAR:
            return -1 if turn == Orientation.RIGHT else 1
        return (distance(p) > distance(q)) - (distance(p) < distance(q))

    return sorted(ps, key=cmp_to_key(compare))


def is_inner_cap(members, body_vertices):
    """Every member is separated from the other members and the body."""
    return all(
        not in_convex_hull(x, [y for y in members if y != x] + body_vertices)
        for x in members
    )


def is_outer_cup(members, body_vertices):
    if len(members) < 2:
        return True
    return all(
        hulls_disjoint([x] + body_vertices, [y for y in members if y != x])
        for x in members
    )


def _classify(triple, body):
    p, q, r = triple
    if cross(p, q, r) == 0:
        return StructureKind.COLLINEAR
    vertices = list(body.vertices)
    inner = is_inner_cap(list(triple), vertices)
    outer = is_outer_cup(list(triple), vertices)
    if inner == outer:
        raise PreconditionError(
            'Triple is ' + ('both an inner-cap and an outer-cup.' if inner else 'neither an inner-cap nor an outer-cup.'),
            triple,
        )
    return StructureKind.INNER_CAP if inner else StructureKind.OUTER_CUP


def classify_triple_wrt(body, p, q, r):
    """INNER_CAP, OUTER_CUP or COLLINEAR for a triple avoiding and separated from body."""
    _, body = check_relative([p, q, r], body)
    return _classify((p, q, r), body)


def _best_chain(n, triple_ok, pair_ok=None):
    """
    Longest index sequence in 0..n-1, increasing, whose consecutive triples
    satisfy triple_ok (and consecutive pairs pair_ok). Lexicographically
    smallest among the longest.
    """
    pair_ok = pair_ok or (lambda i, j: True)
    if n == 0:
        return [], {}
    start = {}
    for i in range(n - 1, -1, -1):
        for j in range(n - 1, i, -1):
            if not pair_ok(i, j):
                continue
            best = 2
            for k in range(j + 1, n):
                if (j, k) in start and triple_ok(i, j, k):
                    best = max(best, start[(j, k)] + 1)
            start[(i, j)] = best
    if not start:
        return [0], start
    length = max(start.values())
    chain = list(min(pair for pair, value in start.items() if value == length))
    while len(chain) < length:
        prev, cur = chain[-2], chain[-1]
        need = start[(prev, cur)] - 1
        chain.append(next(
            k for k in range(cur + 1, n)
            if start.get((cur, k)) == need and triple_ok(prev, cur, k)
        ))
    return chain, start


def _triple_table(order, body, kind):
    cache = {}

    def ok(i, j, k):
        key = (i, j, k)
        if key not in cache:
            cache[key] = _classify((order[i], order[j], order[k]), body) == kind
        return cache[key]
    return ok


def _longest_relative(points, body, kind):
    order = radial_order(points, body)
    body = as_body(body)
    chain, _ = _best_chain(len(order), _triple_table(order, body, kind))
    return StructureWitness(kind, PointSet(order[i] for i in chain), body.vertices)


def longest_inner_cap(points, body):
    """Largest inner-cap with respect to body, members in radial order."""
    return _longest_relative(points, body, StructureKind.INNER_CAP)


def longest_outer_cup(points, body):
    return _longest_relative(points, body, StructureKind.OUTER_CUP)


def brute_force_relative(points, body, kind):
    """Exhaustive inner-cap or outer-cup search straight from the definition."""
    ps = as_point_set(points)
    if len(ps) > ORACLE_CAP:
        raise CapacityError(f'Exhaustive search is capped at {ORACLE_CAP} points.')
    body = as_body(body)
    for size in range(len(ps), 0, -1):
        for subset in combinations(ps, size):
            witness = StructureWitness(kind, PointSet(subset), body.vertices)
            if witness.verify():
                return witness
    return StructureWitness(kind, PointSet(), body.vertices)