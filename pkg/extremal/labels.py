"""
Pair labels and down-set fingerprints.

Every pair p, q (p left of q) is labelled with the lengths, in edges, of the
longest cup and the longest cap ending at pq. The labels of all pairs ending
at q generate a down-set D(q) of the grid poset L(a, b); sets without long
cups and caps have few distinct fingerprints, which is the pigeonhole step
of the cups-caps bound.
"""

import math
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations_with_replacement

from core.exceptions import CapacityError, PreconditionError
from geometry.kernel import as_point_set
from .engine import chain_tables

ENUMERATION_CAP = 10 ** 6


@dataclass(frozen=True)
class PairLabel:
    x_label: int
    y_label: int

    def as_tuple(self):
        return (self.x_label, self.y_label)


def pair_labels(points):
    """
    Map (p, q), p before q in x-order, to its PairLabel.
    A lone pair is a cup and a cap of length 1.
    """
    order, cups, caps = chain_tables(points)
    labels = {}
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            labels[(order[i], order[j])] = PairLabel(cups[i][j] - 1, caps[i][j] - 1)
    return labels


@dataclass(frozen=True)
class DownSet:
    """
    A down-set of L(a, b) on [a] x [b], stored as column heights.
    profile[x - 1] is the largest y with (x, y) in the set, 0 when empty.
    """
    a: int
    b: int
    profile: tuple

    def __post_init__(self):
        object.__setattr__(self, 'profile', tuple(self.profile))
        if len(self.profile) != self.a:
            raise PreconditionError(f'Profile length {len(self.profile)} does not match a={self.a}.')
        if any(h < 0 or h > self.b for h in self.profile):
            raise PreconditionError(f'Column heights must lie in 0..{self.b}.')
        if any(h1 < h2 for h1, h2 in zip(self.profile, self.profile[1:])):
            raise PreconditionError('Column heights of a down-set are non-increasing.')

    @classmethod
    def empty(cls, a, b):
        return cls(a, b, (0,) * a)

    @classmethod
    def generated_by(cls, a, b, generators):
        """Downward closure of generators, a set of (s, t) grid elements."""
        heights = [0] * a
        for s, t in generators:
            if not (1 <= s <= a and 1 <= t <= b):
                raise PreconditionError(f'Label ({s}, {t}) lies outside L({a}, {b}).', ((s, t),))
            for x in range(s):
                heights[x] = max(heights[x], t)
        return cls(a, b, tuple(heights))

    def __contains__(self, element):
        x, y = element
        return 1 <= x <= self.a and 1 <= y <= self.profile[x - 1]

    def __len__(self):
        return sum(self.profile)

    def elements(self):
        return [(x, y) for x in range(1, self.a + 1) for y in range(1, self.profile[x - 1] + 1)]

    def to_dict(self):
        return {'a': self.a, 'b': self.b, 'profile': list(self.profile)}


def _fingerprint(order, labels, q, a, b):
    generators = {labels[(p, q)].as_tuple() for p in order if p < q}
    return DownSet.generated_by(a, b, generators)


def downset_of(points, q, a, b):
    """D(q): the down-set of L(a, b) generated by the labels of pairs ending at q."""
    ps = as_point_set(points)
    if q not in ps:
        raise PreconditionError(f'{q} is not a point of the set.', (q,))
    return _fingerprint(sorted(ps), pair_labels(ps), q, a, b)


def fingerprint_classes(points, a, b):
    """Group the points by fingerprint; returns {DownSet: [points, ...]}."""
    labels = pair_labels(points)
    order = sorted(points)
    classes = defaultdict(list)
    for q in order:
        classes[_fingerprint(order, labels, q, a, b)].append(q)
    return dict(classes)


def count_downsets(a, b):
    if a < 0 or b < 0:
        raise PreconditionError(f'Grid dimensions must be non-negative, got ({a}, {b}).')
    return math.comb(a + b, a)


def enumerate_downsets(a, b):
    """All down-sets of L(a, b), each once. Refuses more than a million."""
    total = count_downsets(a, b)
    if total > ENUMERATION_CAP:
        raise CapacityError(f'L({a}, {b}) has {total} down-sets; the cap is {ENUMERATION_CAP}.')
    return [
        DownSet(a, b, tuple(reversed(heights)))
        for heights in combinations_with_replacement(range(b + 1), a)
    ]


def grid_antichain_width(a, b):
    """Size of the largest antichain of L(a, b)."""
    return min(a, b)
