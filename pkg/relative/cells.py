"""
Statistics of one support cell.

For a cup or cap X and a cell r (1 <= r <= k-3) the bodies are the segment
B = x_{r-1} x_{r+2} and the two edge endpoints left = x_r, right = x_{r+1}.
The points of the cell carry the containment order with respect to B.

    h, v   largest antichain and longest chain (Dilworth)
    a      largest inner-cap w.r.t. right that is a chain
    b      largest inner-cap w.r.t. left that is a chain
    w      largest inner-cap w.r.t. B that is an antichain
    z      largest outer-cup w.r.t. B that is an antichain
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache

from core.exceptions import PreconditionError
from extremal.engine import StructureKind, StructureWitness, max_convex_subset
from geometry.kernel import PointSet, as_point_set
from .bodies import (
    ConvexBody, _best_chain, anchored_order, as_body, check_avoidance,
    is_inner_cap, is_outer_cup,
)
from .order import dilworth, prec_order
from .support import _support_order

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CellProfile:
    h: int
    v: int
    a: int
    b: int
    w: int
    z: int
    witnesses: dict = field(default_factory=dict, compare=False)

    def z_below(self, n, ambient):
        """
        z < n, checked only once ambient is verified to hold no n points in
        convex position. None when that premise fails.
        """
        ambient = as_point_set(ambient)
        largest = max_convex_subset(ambient).size if len(ambient) >= 3 else len(ambient)
        if largest >= n:
            return None
        return self.z < n

    def to_dict(self):
        return {
            'h': self.h, 'v': self.v, 'a': self.a, 'b': self.b, 'w': self.w, 'z': self.z,
            'witnesses': {name: w.to_dict() for name, w in sorted(self.witnesses.items())},
        }


def cell_bodies(cap, r):
    """(left, right, B) for cell r of a cup or cap of k points, 1 <= r <= k-3."""
    order, _ = _support_order(cap)
    if not 1 <= r <= len(order) - 3:
        raise PreconditionError(f'Cell index must be in 1..{len(order) - 3}, got {r}.')
    return order[r], order[r + 1], ConvexBody.segment(order[r - 1], order[r + 2])


def _exact_chain(n, triple_ok, compatible, start):
    """Branch and bound over index sequences that are pairwise compatible."""
    best = [0] if n else []

    def extend(seq):
        nonlocal best
        if len(seq) > len(best):
            best = list(seq)
        cur = seq[-1]
        for k in range(cur + 1, n):
            if len(seq) - 1 + start.get((cur, k), 0) <= len(best):
                continue
            if not all(compatible(i, k) for i in seq):
                continue
            if len(seq) >= 2 and not triple_ok(seq[-2], cur, k):
                continue
            seq.append(k)
            extend(seq)
            seq.pop()

    for i in range(n):
        extend([i])
    return best


def _restricted(ps, instance, body, kind, want_chain):
    """
    Largest inner-cap/outer-cup w.r.t. body that is a chain (or antichain)
    of instance. Antichains avoid B on their own, so only separation is
    required of the whole cell.
    """
    order = anchored_order(ps, body)
    body = as_body(body)
    vertices = list(body.vertices)
    fits = is_inner_cap if kind == StructureKind.INNER_CAP else is_outer_cup
    index = {p: i for i, p in enumerate(instance.ground)}
    ids = [index[p] for p in order]

    @lru_cache(maxsize=None)
    def compatible(i, j):
        return (
            instance.comparable(ids[i], ids[j]) == want_chain
            and fits([order[i], order[j]], vertices)
        )

    @lru_cache(maxsize=None)
    def triple_ok(i, j, k):
        return compatible(i, k) and fits([order[i], order[j], order[k]], vertices)

    chain, start = _best_chain(len(order), triple_ok, compatible)
    if not all(compatible(i, j) for i in chain for j in chain if i < j):
        chain = _exact_chain(len(order), triple_ok, compatible, start)
    return StructureWitness(kind, PointSet(order[i] for i in chain), body.vertices)


def cell_profile(points, left, right, body):
    """
    All six statistics of one cell. Raises PreconditionError when P is not
    separated from one of the three bodies or a line through two points of
    P passes through left or right.
    """
    ps = as_point_set(points)
    body = as_body(body)
    left_body, right_body = ConvexBody.point(left), ConvexBody.point(right)
    check_avoidance(ps, left_body)
    check_avoidance(ps, right_body)

    instance = prec_order(ps, body)
    decomposition = dilworth(instance)
    witnesses = {
        'a': _restricted(ps, instance, right_body, StructureKind.INNER_CAP, True),
        'b': _restricted(ps, instance, left_body, StructureKind.INNER_CAP, True),
        'w': _restricted(ps, instance, body, StructureKind.INNER_CAP, False),
        'z': _restricted(ps, instance, body, StructureKind.OUTER_CUP, False),
    }
    profile = CellProfile(
        h=decomposition.h,
        v=decomposition.v,
        witnesses=witnesses,
        **{name: w.size for name, w in witnesses.items()},
    )
    logger.debug('cell_profile: %d points, h=%d v=%d a=%d b=%d w=%d z=%d',
                 len(ps), profile.h, profile.v, profile.a, profile.b, profile.w, profile.z)
    return profile
