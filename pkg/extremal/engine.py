"""
Extremal engine: cups, caps, collinear runs and convex subsets.

Cups and caps are searched with the slope-sorted pair DP (quadratic pairs,
one sort per middle point). Convex subsets use a rotation-order DP anchored
at the lowest vertex of the polygon. Every search returns a StructureWitness
that can re-check itself against the geometry kernel.
"""

import enum
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from core.exceptions import CapacityError, PreconditionError
from core.utils import coord_pairs
from geometry.kernel import (
    Orientation, PointSet, as_point_set, hulls_disjoint, in_convex_hull,
    int_cross, integer_coordinates, is_convex_position, orientation,
)

logger = logging.getLogger(__name__)

ORACLE_CAP = 20


class StructureKind(str, enum.Enum):
    CUP = 'cup'
    CAP = 'cap'
    COLLINEAR = 'collinear'
    CONVEX = 'convex'
    INNER_CAP = 'inner_cap'
    OUTER_CUP = 'outer_cup'


@dataclass(frozen=True)
class StructureWitness:
    """
    A found structure and its member points.

    Cups and caps list members left to right. Inner-caps and outer-cups keep
    the vertices of the body they were found against in `body`.
    """
    kind: StructureKind
    members: PointSet
    body: tuple = field(default=())

    def __len__(self):
        return len(self.members)

    @property
    def size(self):
        return len(self.members)

    def prefix(self, count):
        return StructureWitness(self.kind, self.members[:count], self.body)

    def verify(self):
        """Re-check the witness with kernel predicates only."""
        pts = list(self.members)
        if self.kind in (StructureKind.CUP, StructureKind.CAP):
            turn = Orientation.LEFT if self.kind == StructureKind.CUP else Orientation.RIGHT
            if any(p.x >= q.x for p, q in zip(pts, pts[1:])):
                return False
            return all(orientation(*pts[i:i + 3]) == turn for i in range(len(pts) - 2))
        if self.kind == StructureKind.COLLINEAR:
            if len(pts) <= 2:
                return True
            return all(orientation(pts[0], pts[1], r) == Orientation.COLLINEAR for r in pts[2:])
        if self.kind == StructureKind.CONVEX:
            return is_convex_position(pts)
        body = list(self.body)
        if self.kind == StructureKind.INNER_CAP:
            return all(
                not in_convex_hull(x, [y for y in pts if y != x] + body)
                for x in pts
            )
        if self.kind == StructureKind.OUTER_CUP:
            if len(pts) == 1:
                return True
            return all(
                hulls_disjoint([x] + body, [y for y in pts if y != x])
                for x in pts
            )
        return False

    def to_dict(self):
        return {'kind': self.kind.value, 'points': coord_pairs(self.members)}


def _slope(dx, dy):
    return Fraction(dy, dx)


def _ending_lengths(coords):
    """
    ending[i][j] = points in the longest cup whose last two points are i, j.

    coords are integer pairs sorted by strictly increasing x. A cup extends
    through i exactly when slope(k, i) < slope(i, j); equal slopes are
    collinear and extend nothing.
    """
    n = len(coords)
    ending = [[0] * n for _ in range(n)]
    for i in range(n):
        xi, yi = coords[i]
        incoming = sorted(
            (_slope(xi - coords[k][0], yi - coords[k][1]), k) for k in range(i)
        )
        outgoing = sorted(
            (_slope(coords[j][0] - xi, coords[j][1] - yi), j) for j in range(i + 1, n)
        )
        best = 0
        pointer = 0
        for slope_out, j in outgoing:
            while pointer < len(incoming) and incoming[pointer][0] < slope_out:
                best = max(best, ending[incoming[pointer][1]][i])
                pointer += 1
            ending[i][j] = best + 1 if best else 2
    return ending


def _starting_lengths(coords):
    """start[a][b] = points in the longest cup whose first two points are a, b."""
    n = len(coords)
    # x -> -x maps cups to cups and reverses the order
    mirrored = [(-x, y) for x, y in reversed(coords)]
    ending = _ending_lengths(mirrored)
    start = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            start[a][b] = ending[n - 1 - b][n - 1 - a]
    return start


def _lexicographic_chain(coords):
    """Index sequence of the lexicographically smallest longest cup."""
    n = len(coords)
    if n == 1:
        return [0]
    start = _starting_lengths(coords)
    best = max(start[a][b] for a in range(n) for b in range(a + 1, n))
    chain = next(
        [a, b] for a in range(n) for b in range(a + 1, n) if start[a][b] == best
    )
    while len(chain) < best:
        prev, cur = chain[-2], chain[-1]
        need = start[prev][cur] - 1
        chain.append(next(
            c for c in range(cur + 1, n)
            if start[cur][c] == need and int_cross(coords[prev], coords[cur], coords[c]) > 0
        ))
    return chain


def _sorted_chain_input(points, name):
    ps = as_point_set(points)
    if len(ps) < 2:
        raise PreconditionError(f'{name} needs at least 2 points, got {len(ps)}.')
    order = ps.require_distinct_x().sorted_by_x()
    return order, integer_coordinates(order)


def longest_cup(points):
    """
    Maximum cup, left to right.
    Ties go to the lexicographically smallest index sequence in x-order.
    Raises DistinctXRequired if two points share an x-coordinate.
    """
    order, coords = _sorted_chain_input(points, 'longest_cup')
    chain = _lexicographic_chain(coords)
    logger.debug('longest_cup: %d of %d points', len(chain), len(order))
    return StructureWitness(StructureKind.CUP, PointSet(order[i] for i in chain))


def longest_cap(points):
    """Mirror of longest_cup: reflecting y turns caps into cups."""
    order, coords = _sorted_chain_input(points, 'longest_cap')
    chain = _lexicographic_chain([(x, -y) for x, y in coords])
    logger.debug('longest_cap: %d of %d points', len(chain), len(order))
    return StructureWitness(StructureKind.CAP, PointSet(order[i] for i in chain))


def chain_tables(points):
    """
    Sorted points plus the cup and cap ending-length tables.
    Used by the pair labelling; lengths here count points.
    """
    order = as_point_set(points).require_distinct_x().sorted_by_x()
    coords = integer_coordinates(order)
    cups = _ending_lengths(coords)
    caps = _ending_lengths([(x, -y) for x, y in coords])
    return order, cups, caps


def _direction(dx, dy):
    """Primitive direction of a line, normalised to point right (or up)."""
    d = math.gcd(dx, dy)
    dx, dy = dx // d, dy // d
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    return (dx, dy)


def max_collinear(points):
    """
    Largest set of points on one line.
    Ties go to the lexicographically smallest index sequence in (x, y) order.
    """
    ps = as_point_set(points)
    if len(ps) < 2:
        raise PreconditionError(f'max_collinear needs at least 2 points, got {len(ps)}.')
    order = sorted(ps)
    coords = integer_coordinates(order)
    best = (0, 1)
    for i in range(len(order)):
        lines = {}
        for j in range(i + 1, len(order)):
            key = _direction(coords[j][0] - coords[i][0], coords[j][1] - coords[i][1])
            lines.setdefault(key, [i]).append(j)
        for run in lines.values():
            candidate = tuple(run)
            if len(candidate) > len(best) or (len(candidate) == len(best) and candidate < best):
                best = candidate
    return StructureWitness(StructureKind.COLLINEAR, PointSet(order[i] for i in best))


def _pseudo_angle(u, d):
    """
    Sort key for directions d in the half-open half-plane starting at u.

    Directions parallel to u come first; the rest are ordered by the
    negated cotangent of their angle from u, which is monotone there.
    """
    s = u[0] * d[0] + u[1] * d[1]
    t = u[0] * d[1] - u[1] * d[0]
    if t == 0:
        return (0, Fraction(0))
    return (1, Fraction(-s, t))


def _best_polygon_at(coords, anchor):
    """
    Largest convex polygon whose lowest (then leftmost) vertex is anchor.
    Returns (size, vertex indices in counterclockwise order from anchor).
    """
    px, py = coords[anchor]
    cands = [i for i in range(len(coords)) if (coords[i][1], coords[i][0]) > (py, px)]
    if len(cands) < 2:
        return 0, ()

    def around(i):
        dx, dy = coords[i][0] - px, coords[i][1] - py
        angle = Fraction(0) if dy == 0 else Fraction(-dx, dy)
        return (dy != 0, angle, dx * dx + dy * dy)

    cands.sort(key=around)
    rank = []
    for pos, i in enumerate(cands):
        if pos and around(i)[:2] == around(cands[pos - 1])[:2]:
            rank.append(rank[-1])
        else:
            rank.append(pos)

    m = len(cands)
    pts = [coords[i] for i in cands]
    best = [[0] * m for _ in range(m)]
    parent = [[None] * m for _ in range(m)]
    for a in range(m):
        ax, ay = pts[a]
        u = (ax - px, ay - py)
        events = [(_pseudo_angle(u, u), 1, -1)]
        for c in range(a):
            if rank[c] < rank[a]:
                events.append((_pseudo_angle(u, (ax - pts[c][0], ay - pts[c][1])), 1, c))
        for b in range(a + 1, m):
            if rank[b] > rank[a]:
                events.append((_pseudo_angle(u, (pts[b][0] - ax, pts[b][1] - ay)), 0, b))
        # outgoing before incoming on ties: parallel edges are collinear
        events.sort(key=lambda event: (event[0], event[1]))
        top, source = 0, None
        for _, incoming, idx in events:
            if incoming:
                value = 2 if idx == -1 else best[idx][a]
                if value > top:
                    top, source = value, idx
            else:
                best[a][idx] = top + 1
                parent[a][idx] = source

    size, end = 0, None
    for a in range(m):
        for b in range(a + 1, m):
            if best[a][b] > size and int_cross(pts[a], pts[b], (px, py)) > 0:
                size, end = best[a][b], (a, b)
    if end is None:
        return 0, ()

    a, b = end
    chain = [b, a]
    while True:
        src = parent[a][b]
        if src == -1:
            break
        chain.append(src)
        a, b = src, a
    chain.reverse()
    return size, (anchor,) + tuple(cands[pos] for pos in chain)


def max_convex_subset(points):
    """
    Maximum subset in strict convex position, exact.

    Each point in (x, y) order is tried as the lowest vertex; the first
    strictly larger polygon wins, so the witness is deterministic. Members
    are listed counterclockwise from that lowest vertex.
    """
    ps = as_point_set(points)
    if len(ps) < 3:
        raise PreconditionError(f'max_convex_subset needs at least 3 points, got {len(ps)}.')
    order = sorted(ps)
    coords = integer_coordinates(order)
    size, vertices = 2, (0, 1)
    for anchor in range(len(order)):
        found, polygon = _best_polygon_at(coords, anchor)
        if found > size:
            size, vertices = found, polygon
    logger.debug('max_convex_subset: %d of %d points', size, len(order))
    return StructureWitness(StructureKind.CONVEX, PointSet(order[i] for i in vertices))


def brute_force_convex_subset(points):
    ps = as_point_set(points)
    if len(ps) > ORACLE_CAP:
        raise CapacityError(f'Exhaustive search is capped at {ORACLE_CAP} points.')
    order = sorted(ps)
    for size in range(len(order), 2, -1):
        for subset in combinations(order, size):
            if is_convex_position(subset):
                return StructureWitness(StructureKind.CONVEX, PointSet(subset))
    return StructureWitness(StructureKind.CONVEX, PointSet(order[:2]))


def brute_force_longest_chain(points, kind):
    """Exhaustive cup or cap search; lexicographically first of maximum size."""
    ps = as_point_set(points)
    if len(ps) > ORACLE_CAP:
        raise CapacityError(f'Exhaustive search is capped at {ORACLE_CAP} points.')
    order = list(ps.require_distinct_x().sorted_by_x())
    for size in range(len(order), 0, -1):
        for subset in combinations(order, size):
            witness = StructureWitness(kind, PointSet(subset))
            if witness.verify():
                return witness
    raise PreconditionError('brute_force_longest_chain needs at least one point.')


def find_structure(points, ell, m, n):
    """
    Look for ell collinear points, an m-cup or an n-cap, in that order.
    Returns the first witness found, trimmed to the requested size, or None.
    Raises DistinctXRequired if two points share an x-coordinate.
    """
    if min(ell, m, n) < 3:
        raise PreconditionError(f'find_structure needs ell, m, n >= 3, got ({ell}, {m}, {n}).')
    ps = as_point_set(points).require_distinct_x()
    if len(ps) < 2:
        return None

    collinear = max_collinear(ps)
    if collinear.size >= ell:
        return collinear.prefix(ell)
    cup = longest_cup(ps)
    if cup.size >= m:
        return cup.prefix(m)
    cap = longest_cap(ps)
    if cap.size >= n:
        return cap.prefix(n)
    return None
