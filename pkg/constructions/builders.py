"""
Lower-bound point sets.

    build_base_cupfree / build_base_capfree   points on one convex chain
    build_X                                    recursive flat combination
    build_ES_lower                             flat blocks along a circular arc

Builders are deterministic and memoised; verification lives in verifier.py
and never trusts anything decided here.
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from core.exceptions import PlacementError, PreconditionError
from extremal.bounds import h_ell
from geometry.kernel import Point, PointSet
from .placement import (
    MAX_ROUNDS, Box, FlatPlacement, combine_flat, lines_clear_above,
    lines_clear_below, strictly_one_side,
)

logger = logging.getLogger(__name__)


def _check_params(**params):
    for name, value in params.items():
        if value < 3:
            raise PreconditionError(f'{name} must be at least 3, got {value}.')


def _chain_points(ell, size, sign):
    """
    Vertices (i, sign * i^2) form a strictly convex chain. ell - 1 points go
    inside each of the first (size - 1) // 2 segments, plus one point alone
    on the next segment when size - 1 is odd.
    """
    full, lone = divmod(size - 1, 2)
    pts = []

    def on_segment(i, t):
        x = i + t
        y = (1 - t) * i * i + t * (i + 1) * (i + 1)
        return Point(x, sign * y)

    for i in range(full):
        pts.extend(on_segment(i, Fraction(j, ell)) for j in range(1, ell))
    if lone:
        pts.append(on_segment(full, Fraction(1, 2)))
    return PointSet(pts)


@lru_cache(maxsize=None)
def build_base_cupfree(ell, m):
    """No ell on a line, no m-cup, no 3-cap."""
    _check_params(ell=ell, m=m)
    return _chain_points(ell, m, 1)


@lru_cache(maxsize=None)
def build_base_capfree(ell, n):
    """Mirror image of build_base_cupfree: no ell on a line, no 3-cup, no n-cap."""
    _check_params(ell=ell, n=n)
    return _chain_points(ell, n, -1)


@lru_cache(maxsize=None)
def build_X(ell, m, n):
    """
    No ell on a line, no m-cup and no n-cap.
    Size is at least h_ell(ell, m, n), and exactly C(m+n-4, n-2) when ell = 3.
    """
    _check_params(ell=ell, m=m, n=n)
    if n == 3:
        return build_base_cupfree(ell, m)
    if m == 3:
        return build_base_capfree(ell, n)
    return combine_flat(build_X(ell, m - 1, n), build_X(ell, m, n - 1))


def es_blocks(ell, n):
    """Blocks of the arc assembly from top to bottom, with their target sizes."""
    blocks = [((n, 3), build_X(ell, n, 3))]
    blocks += [((n - 2 - i, 4 + i), build_X(ell, n - 2 - i, 4 + i)) for i in range(n - 5)]
    blocks.append(((3, n), build_X(ell, 3, n)))
    return blocks


def _trim_blocks(ell, n, blocks):
    """
    Drop rightmost points until the total is exactly (3 ell - 1) 2^(n-5):
    first down to each block's own bound, then from the top block.
    """
    target = (3 * ell - 1) * 2 ** (n - 5)
    kept = [list(points.sorted_by_x()) for _, points in blocks]
    surplus = sum(len(points) for points in kept) - target
    for (params, _), points in zip(blocks, kept):
        spare = len(points) - math.ceil(h_ell(ell, *params))
        cut = max(0, min(spare, surplus))
        del points[len(points) - cut:]
        surplus -= cut
    if surplus > 0:
        del kept[0][len(kept[0]) - surplus:]
    return [PointSet(points) for points in kept]


def _arc_point(k, count):
    """Rational point on the unit circle; k = 0 is (0, 1), k = count - 1 is (1, 0)."""
    t = 1 - Fraction(k, count - 1)
    return Point((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


def _arc_conditions_hold(placed):
    boxes = [Box.of(points) for points in placed]
    for i, j in combinations(range(len(placed)), 2):
        if boxes[i].x1 >= boxes[j].x0:
            return False
        # block i is higher and to the left of block j
        if not lines_clear_above(placed[i], placed[j]) or not lines_clear_below(placed[j], placed[i]):
            return False
    for i, s, j in combinations(range(len(placed)), 3):
        if not strictly_one_side(boxes[i], boxes[j], boxes[s]):
            return False
    return True


@lru_cache(maxsize=None)
def build_ES_lower(ell, n):
    """
    (3 ell - 1) 2^(n-5) points with no ell on a line and no n in convex position.

    Flat copies of X(ell, n, 3), X(ell, n-2-i, 4+i) for i = 0..n-6 and
    X(ell, 3, n) sit along the unit-circle arc from (0, 1) to (1, 0). Block
    width and flatness are halved until every line through two points of a
    block passes below the blocks to its left and above those to its right,
    and every block lies strictly to one side of every line joining a block
    on its left to a block on its right.
    """
    _check_params(ell=ell)
    if n < 6:
        raise PreconditionError(f'build_ES_lower needs n >= 6, got {n}.')

    blocks = _trim_blocks(ell, n, es_blocks(ell, n))
    centres = [_arc_point(k, len(blocks)) for k in range(len(blocks))]
    width = Fraction(1, 4)
    flatness = Fraction(1, 4)
    for rounds in range(1, MAX_ROUNDS + 1):
        placed = [
            FlatPlacement.into_box(
                points,
                c.x - width / 2, c.x + width / 2,
                c.y - width * flatness / 2, c.y + width * flatness / 2,
            ).apply_all(points)
            for points, c in zip(blocks, centres)
        ]
        if _arc_conditions_hold(placed):
            result = PointSet(p for points in placed for p in points)
            logger.info('build_ES_lower(%d, %d): %d points after %d rounds', ell, n, len(result), rounds)
            return result
        width /= 2
        flatness /= 2
    raise PlacementError(f'build_ES_lower({ell}, {n}) did not settle within {MAX_ROUNDS} rounds.')
