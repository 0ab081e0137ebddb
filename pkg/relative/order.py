"""
The containment order p < q iff p != q and p lies in conv(B + q), boundary
included, and its Dilworth decomposition.
"""

import logging
from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from core.exceptions import CapacityError, OrderViolation
from core.utils import coord_pairs
from geometry.kernel import PointSet, as_point_set, in_convex_hull
from .bodies import as_body

logger = logging.getLogger(__name__)

ANTICHAIN_ORACLE_CAP = 15


@dataclass(frozen=True)
class PartialOrderInstance:
    """rows[i] has bit j set iff ground[i] < ground[j]."""
    ground: PointSet
    body: object
    rows: tuple

    def __len__(self):
        return len(self.ground)

    def less(self, i, j):
        return bool(self.rows[i] >> j & 1)

    def comparable(self, i, j):
        return self.less(i, j) or self.less(j, i)

    def is_chain(self, indices):
        return all(self.comparable(i, j) for i, j in combinations(indices, 2))

    def is_antichain(self, indices):
        return not any(self.comparable(i, j) for i, j in combinations(indices, 2))

    def pairs(self):
        return [(i, j) for i in range(len(self)) for j in range(len(self)) if self.less(i, j)]


def prec_order(points, body):
    """
    Materialise every comparison exactly. Raises OrderViolation with a
    witness if the relation is not antisymmetric and transitive.
    """
    ps = as_point_set(points)
    body = as_body(body)
    vertices = list(body.vertices)
    rows = []
    for i, p in enumerate(ps):
        row = 0
        for j, q in enumerate(ps):
            if i != j and in_convex_hull(p, vertices + [q], closed=True):
                row |= 1 << j
        rows.append(row)

    for i in range(len(ps)):
        for j in range(len(ps)):
            if not rows[i] >> j & 1:
                continue
            if rows[j] >> i & 1:
                raise OrderViolation(f'{ps[i]} and {ps[j]} precede each other.', (ps[i], ps[j]))
            missing = rows[j] & ~rows[i]
            if missing:
                k = (missing & -missing).bit_length() - 1
                raise OrderViolation(
                    f'{ps[i]} < {ps[j]} < {ps[k]} but not {ps[i]} < {ps[k]}.',
                    (ps[i], ps[j], ps[k]),
                )
    instance = PartialOrderInstance(ps, body, tuple(rows))
    logger.debug('prec_order: %d points, %d comparable pairs', len(ps), len(instance.pairs()))
    return instance


@dataclass(frozen=True)
class DilworthResult:
    chain: PointSet
    antichain: PointSet
    cover: tuple

    @property
    def v(self):
        return len(self.chain)

    @property
    def h(self):
        return len(self.antichain)

    def to_dict(self):
        return {
            'v': self.v,
            'h': self.h,
            'chain': coord_pairs(self.chain),
            'antichain': coord_pairs(self.antichain),
            'cover': [coord_pairs(c) for c in self.cover],
        }


def _cover_from_matching(matching, n):
    successor = {}
    for u, w in matching.items():
        if u[0] == 'L':
            successor[u[1]] = w[1]
    heads = set(range(n)) - set(successor.values())
    cover = []
    for head in sorted(heads):
        chain = [head]
        while chain[-1] in successor:
            chain.append(successor[chain[-1]])
        cover.append(chain)
    return cover


def dilworth(instance):
    """
    Longest chain from the comparability DAG; maximum antichain and minimum
    chain cover from a maximum matching of the split graph (Konig cover).
    """
    n = len(instance)
    ground = instance.ground
    if n == 0:
        return DilworthResult(PointSet(), PointSet(), ())

    dag = nx.DiGraph()
    dag.add_nodes_from(range(n))
    dag.add_edges_from(instance.pairs())
    chain = nx.dag_longest_path(dag)

    split = nx.Graph()
    left = [('L', i) for i in range(n)]
    split.add_nodes_from(left, bipartite=0)
    split.add_nodes_from((('R', i) for i in range(n)), bipartite=1)
    split.add_edges_from((('L', i), ('R', j)) for i, j in instance.pairs())
    matching = nx.algorithms.bipartite.hopcroft_karp_matching(split, top_nodes=left)
    cover_nodes = nx.algorithms.bipartite.to_vertex_cover(split, matching, top_nodes=left)
    antichain = [i for i in range(n) if ('L', i) not in cover_nodes and ('R', i) not in cover_nodes]
    cover = _cover_from_matching(matching, n)

    if len(antichain) != len(cover) or not instance.is_antichain(antichain):
        raise OrderViolation('Matching certificate does not yield a maximum antichain.')

    result = DilworthResult(
        PointSet(ground[i] for i in chain),
        PointSet(ground[i] for i in antichain),
        tuple(PointSet(ground[i] for i in c) for c in cover),
    )
    logger.debug('dilworth: n=%d v=%d h=%d', n, result.v, result.h)
    return result


def brute_force_antichain(instance):
    """Size of the largest antichain by exhaustive search."""
    n = len(instance)
    if n > ANTICHAIN_ORACLE_CAP:
        raise CapacityError(f'Exhaustive antichain search is capped at {ANTICHAIN_ORACLE_CAP} points.')
    for size in range(n, 0, -1):
        if any(instance.is_antichain(c) for c in combinations(range(n), size)):
            return size
    return 0
