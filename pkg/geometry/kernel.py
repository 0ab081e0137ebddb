"""
Exact planar geometry kernel: coordinates, orientation, hulls, half-planes.

Every coordinate is a Fraction. Nothing here touches floating point, so
predicates are deterministic and exact however small the constructions get.
"""

import enum
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from core.exceptions import DistinctXRequired, DuplicatePointError, PreconditionError

logger = logging.getLogger(__name__)

Coord = Fraction


def as_coord(value):
    """Coerce an int, a 'p/q' string or a Fraction to a Coord."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError('float coordinates are not exact; pass int, str or Fraction')
    return Fraction(value)


@dataclass(frozen=True, order=True)
class Point:
    """A planar point. Ordering is (x, y), i.e. left-to-right x-order."""
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'x', as_coord(self.x))
        object.__setattr__(self, 'y', as_coord(self.y))

    def __str__(self):
        return f'({self.x}, {self.y})'

    def as_pair(self):
        return [str(self.x), str(self.y)]


class PointSet(Sequence):
    """An ordered set of distinct points."""

    __slots__ = ('_points',)

    def __init__(self, points=()):
        pts = tuple(p if isinstance(p, Point) else Point(*p) for p in points)
        seen = set()
        for p in pts:
            if p in seen:
                raise DuplicatePointError(p)
            seen.add(p)
        self._points = pts

    def __getitem__(self, index):
        if isinstance(index, slice):
            return PointSet(self._points[index])
        return self._points[index]

    def __len__(self):
        return len(self._points)

    def __iter__(self):
        return iter(self._points)

    def __contains__(self, item):
        return item in self._points

    def __eq__(self, other):
        if isinstance(other, PointSet):
            return self._points == other._points
        return NotImplemented

    def __hash__(self):
        return hash(self._points)

    def __repr__(self):
        return f'PointSet({len(self._points)} points)'

    @property
    def points(self):
        return self._points

    def sorted_by_x(self):
        return PointSet(sorted(self._points))

    def same_points(self, other):
        return set(self._points) == set(other)

    def duplicate_x_pair(self):
        """Return two points sharing an x-coordinate, or None."""
        by_x = {}
        for p in self._points:
            if p.x in by_x:
                return by_x[p.x], p
            by_x[p.x] = p
        return None

    def has_distinct_x(self):
        return self.duplicate_x_pair() is None

    def require_distinct_x(self):
        pair = self.duplicate_x_pair()
        if pair is not None:
            raise DistinctXRequired(*pair)
        return self


def as_point_set(points):
    return points if isinstance(points, PointSet) else PointSet(points)


class Orientation(enum.IntEnum):
    RIGHT = -1
    COLLINEAR = 0
    LEFT = 1


def cross(p, q, r):
    """Twice the signed area of triangle pqr: (q - p) x (r - p)."""
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


def orientation(p, q, r):
    value = cross(p, q, r)
    if value > 0:
        return Orientation.LEFT
    if value < 0:
        return Orientation.RIGHT
    return Orientation.COLLINEAR


def integer_coordinates(points):
    """
    Rescale points to integer coordinates by the LCM of all denominators.

    A positive scaling preserves every orientation, and Python ints are much
    cheaper than Fractions inside cubic loops.
    """
    pts = list(points)
    scale = math.lcm(*(c.denominator for p in pts for c in (p.x, p.y))) if pts else 1
    return [(int(p.x * scale), int(p.y * scale)) for p in pts]


def int_cross(p, q, r):
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def shear_distinct_x(points):
    """
    Shear (x, y) -> (x + eps*y, y) so that all x-coordinates are distinct.

    A shear has determinant 1, so every orientation is preserved for any eps.
    eps only has to dodge the values at which two points with different x
    would collide; half the smallest positive such value does.
    """
    ps = as_point_set(points)
    if ps.has_distinct_x():
        return ps

    bound = None
    for p, q in combinations(ps, 2):
        if p.x != q.x and p.y != q.y:
            collision = (q.x - p.x) / (p.y - q.y)
            if collision > 0 and (bound is None or collision < bound):
                bound = collision
    eps = bound / 2 if bound is not None else Fraction(1)
    logger.debug('Shearing %d points with eps=%s', len(ps), eps)
    return PointSet(Point(p.x + eps * p.y, p.y) for p in ps)


def convex_hull(points):
    """
    Strict hull vertices in counterclockwise order, starting from the
    lowest-leftmost point. Points in the interior of hull edges are dropped.
    """
    pts = sorted(set(points))
    if not pts:
        raise PreconditionError('convex_hull needs at least one point.')
    if len(pts) <= 2:
        return tuple(pts)

    def half(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and cross(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    return tuple(lower[:-1] + upper[:-1])


def is_convex_position(points):
    pts = list(points)
    if len(pts) <= 2:
        return len(set(pts)) == len(pts)
    return len(convex_hull(pts)) == len(pts)


def on_segment(p, a, b):
    """True if p lies on the closed segment ab."""
    if cross(a, b, p) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def segments_intersect(a, b, c, d):
    """Closed segments ab and cd share at least one point."""
    d1, d2 = orientation(a, b, c), orientation(a, b, d)
    d3, d4 = orientation(c, d, a), orientation(c, d, b)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    return (
        on_segment(c, a, b) or on_segment(d, a, b)
        or on_segment(a, c, d) or on_segment(b, c, d)
    )


def hull_contains(hull, p, closed=True):
    """Membership of p in the polygon given by counterclockwise strict hull vertices."""
    if len(hull) == 1:
        return closed and p == hull[0]
    if len(hull) == 2:
        return closed and on_segment(p, hull[0], hull[1])
    signs = [cross(hull[i], hull[(i + 1) % len(hull)], p) for i in range(len(hull))]
    if closed:
        return all(s >= 0 for s in signs)
    return all(s > 0 for s in signs)


def in_convex_hull(p, points, closed=True):
    return hull_contains(convex_hull(points), p, closed=closed)


def _hull_edges(hull):
    if len(hull) < 2:
        return []
    if len(hull) == 2:
        return [(hull[0], hull[1])]
    return [(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]


def hulls_disjoint(first, second):
    """True if the closed convex hulls of two point sets do not meet."""
    ha, hb = convex_hull(first), convex_hull(second)
    if any(hull_contains(ha, p) for p in hb) or any(hull_contains(hb, p) for p in ha):
        return False
    for a, b in _hull_edges(ha):
        for c, d in _hull_edges(hb):
            if segments_intersect(a, b, c, d):
                return False
    return True


@dataclass(frozen=True)
class HalfPlane:
    """The set a*x + b*y + c > 0 (>= 0 when closed)."""
    a: Fraction
    b: Fraction
    c: Fraction
    closed: bool = False

    def __post_init__(self):
        for name in ('a', 'b', 'c'):
            object.__setattr__(self, name, as_coord(getattr(self, name)))
        if self.a == 0 and self.b == 0:
            raise PreconditionError('Half-plane normal (a, b) must be non-zero.')

    def value(self, p):
        return self.a * p.x + self.b * p.y + self.c

    def contains(self, p):
        v = self.value(p)
        return v >= 0 if self.closed else v > 0

    def opposite(self):
        return HalfPlane(-self.a, -self.b, -self.c, self.closed)

    @classmethod
    def through(cls, p, q, containing, closed=False):
        """Half-plane bounded by line pq, on the side of `containing`."""
        a = p.y - q.y
        b = q.x - p.x
        plane = cls(a, b, -(a * p.x + b * p.y), closed)
        side = plane.value(containing)
        if side == 0:
            raise PreconditionError('Reference point lies on the bounding line.', (p, q, containing))
        return plane if side > 0 else plane.opposite()

    def to_dict(self):
        return {'a': str(self.a), 'b': str(self.b), 'c': str(self.c), 'closed': self.closed}


def point_in_convex_region(p, halfplanes):
    return all(h.contains(p) for h in halfplanes)


@dataclass(frozen=True)
class AffineMap:
    """(x, y) -> (a*x + b*y + e, c*x + d*y + f) with positive determinant."""
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction = Fraction(0)
    f: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ('a', 'b', 'c', 'd', 'e', 'f'):
            object.__setattr__(self, name, as_coord(getattr(self, name)))
        if self.a * self.d - self.b * self.c <= 0:
            raise PreconditionError('Affine map must preserve orientation (det > 0).')

    def apply(self, p):
        return Point(self.a * p.x + self.b * p.y + self.e, self.c * p.x + self.d * p.y + self.f)

    def apply_all(self, points):
        return PointSet(self.apply(p) for p in points)
