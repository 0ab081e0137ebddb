"""
Flat placement of point sets and the exact checks that certify it.

Blocks are squeezed vertically until every line through two points of one
block clears the other blocks. The loop checks a sufficient condition built
from exact slope ranges and bounding boxes, so a placement that passes is
correct without testing every pair of lines.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from core.exceptions import PlacementError, PreconditionError
from geometry.kernel import Orientation, Point, PointSet, as_point_set, cross, orientation, shear_distinct_x

logger = logging.getLogger(__name__)

MAX_ROUNDS = 10_000


@dataclass(frozen=True)
class FlatPlacement:
    """(x, y) -> (scale_x * x + translate_x, scale_y * y + translate_y)."""
    scale_x: Fraction
    scale_y: Fraction
    translate_x: Fraction
    translate_y: Fraction

    def __post_init__(self):
        for name in ('scale_x', 'scale_y', 'translate_x', 'translate_y'):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.scale_x <= 0 or self.scale_y <= 0:
            raise PreconditionError('Placement scales must be positive.')

    @classmethod
    def into_box(cls, points, x0, x1, y0, y1):
        """Map the bounding box of points onto [x0, x1] x [y0, y1]; flat sets sit at y0."""
        box = Box.of(points)
        sx = (x1 - x0) / box.width if box.width else Fraction(1)
        sy = (y1 - y0) / box.height if box.height else Fraction(1)
        return cls(sx, sy, x0 - sx * box.x0, y0 - sy * box.y0)

    def apply(self, p):
        return Point(self.scale_x * p.x + self.translate_x, self.scale_y * p.y + self.translate_y)

    def apply_all(self, points):
        return PointSet(self.apply(p) for p in points)


@dataclass(frozen=True)
class Box:
    x0: Fraction
    x1: Fraction
    y0: Fraction
    y1: Fraction

    @classmethod
    def of(cls, points):
        pts = list(points)
        if not pts:
            raise PreconditionError('Cannot take the bounding box of no points.')
        xs = [p.x for p in pts]
        ys = [p.y for p in pts]
        return cls(min(xs), max(xs), min(ys), max(ys))

    @property
    def width(self):
        return self.x1 - self.x0

    @property
    def height(self):
        return self.y1 - self.y0

    def corners(self):
        return [Point(x, y) for x in (self.x0, self.x1) for y in (self.y0, self.y1)]


def placed_box(placement, points):
    return Box.of(placement.apply_all(points))


def slope_range(points):
    """
    (min, max) slope over all pairs of a set with distinct x, or None for
    fewer than two points. Both extremes are attained by x-adjacent pairs.
    """
    pts = sorted(points)
    if len(pts) < 2:
        return None
    slopes = [(q.y - p.y) / (q.x - p.x) for p, q in zip(pts, pts[1:])]
    return min(slopes), max(slopes)


def line_ceiling(box, slopes, x0, x1):
    """Upper bound on every line through a point of box, slope in slopes, over x in [x0, x1]."""
    offsets = (x0 - box.x1, x1 - box.x0)
    return box.y1 + max(s * d for s in slopes for d in offsets)


def line_floor(box, slopes, x0, x1):
    offsets = (x0 - box.x1, x1 - box.x0)
    return box.y0 + min(s * d for s in slopes for d in offsets)


def lines_clear_below(source, target):
    """Sufficient check: lines through two source points pass strictly below target."""
    slopes = slope_range(source)
    if slopes is None:
        return True
    src, dst = Box.of(source), Box.of(target)
    return line_ceiling(src, slopes, dst.x0, dst.x1) < dst.y0


def lines_clear_above(source, target):
    """Sufficient check: lines through two source points pass strictly above target."""
    slopes = slope_range(source)
    if slopes is None:
        return True
    src, dst = Box.of(source), Box.of(target)
    return line_floor(src, slopes, dst.x0, dst.x1) > dst.y1


def lines_pass_below(source, target):
    """Exact pairwise check: every line through two source points is strictly below every target point."""
    pts = sorted(source)
    return all(
        orientation(p, q, r) == Orientation.LEFT
        for i, p in enumerate(pts) for q in pts[i + 1:] for r in target
    )


def lines_pass_above(source, target):
    pts = sorted(source)
    return all(
        orientation(p, q, r) == Orientation.RIGHT
        for i, p in enumerate(pts) for q in pts[i + 1:] for r in target
    )


def strictly_one_side(left_box, right_box, middle_box):
    """
    True if every point of middle_box lies strictly on one side of every line
    through a point of left_box and a point of right_box. The cross product is
    affine in each argument, so checking box corners is enough.
    """
    signs = {
        (cross(a, b, r) > 0) - (cross(a, b, r) < 0)
        for a, b, r in product(left_box.corners(), right_box.corners(), middle_box.corners())
    }
    return len(signs) == 1 and 0 not in signs


def _distinct_x(points):
    ps = as_point_set(points)
    return ps if ps.has_distinct_x() else shear_distinct_x(ps)


def combine_flat(lower, upper):
    """Union of flat copies of lower and upper, lower points first. See settle_flat."""
    return settle_flat(lower, upper)[0]


def settle_flat(lower, upper):
    """
    Place a flat copy of lower in [0, 1] x [0, d] and a flat copy of upper in
    [2, 3] x [1, 1 + d], halving d until lines through either copy clear the
    other one. Returns (union, rounds used).
    Raises PlacementError if the loop runs out of rounds.
    """
    a, b = as_point_set(lower), as_point_set(upper)
    if not a or not b:
        raise PreconditionError('combine_flat needs two non-empty point sets.')
    a, b = _distinct_x(a), _distinct_x(b)

    flatness = Fraction(1)
    for rounds in range(1, MAX_ROUNDS + 1):
        placed_a = FlatPlacement.into_box(a, 0, 1, 0, flatness).apply_all(a)
        placed_b = FlatPlacement.into_box(b, 2, 3, 1, 1 + flatness).apply_all(b)
        if lines_clear_below(placed_a, placed_b) and lines_clear_above(placed_b, placed_a):
            logger.debug('combine_flat: %d + %d points placed after %d rounds', len(a), len(b), rounds)
            return PointSet(list(placed_a) + list(placed_b)), rounds
        flatness /= 2
    raise PlacementError(f'combine_flat did not settle within {MAX_ROUNDS} rounds.')
