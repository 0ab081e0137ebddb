"""
Construction certificates.

A certificate is filled in by running the extremal analyzers on the final
coordinates of a point set; nothing is carried over from how it was built.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction

from core.exceptions import PreconditionError
from extremal.bounds import es_lower, h_ell
from extremal.engine import longest_cap, longest_cup, max_collinear, max_convex_subset
from geometry.kernel import as_point_set

logger = logging.getLogger(__name__)

_CLAIM = re.compile(r'(x|es):(\d+(?:,\d+)*)\Z')


@dataclass(frozen=True)
class ConstructionClaim:
    """x:ell,m,n claims no ell on a line, no m-cup, no n-cap; es:ell,n claims no n in convex position."""
    kind: str
    params: tuple

    def __post_init__(self):
        object.__setattr__(self, 'params', tuple(int(v) for v in self.params))
        arity = {'x': 3, 'es': 2}.get(self.kind)
        if arity is None:
            raise PreconditionError(f'Unknown claim kind {self.kind!r}; use x or es.')
        if len(self.params) != arity:
            raise PreconditionError(f'A {self.kind} claim takes {arity} parameters, got {len(self.params)}.')
        if min(self.params) < 3:
            raise PreconditionError(f'Claim parameters must be at least 3, got {self.params}.')

    @classmethod
    def parse(cls, text):
        match = _CLAIM.match(text.strip())
        if not match:
            raise PreconditionError(f'Malformed claim {text!r}; expected x:L,M,N or es:L,N.')
        return cls(match.group(1), tuple(int(v) for v in match.group(2).split(',')))

    @classmethod
    def x(cls, ell, m, n):
        return cls('x', (ell, m, n))

    @classmethod
    def es(cls, ell, n):
        return cls('es', (ell, n))

    @property
    def ell(self):
        return self.params[0]

    @property
    def target_size(self):
        """Smallest size the construction has to reach."""
        if self.kind == 'x':
            return h_ell(*self.params)
        return es_lower(*self.params) - 1

    def __str__(self):
        return f'{self.kind}:' + ','.join(str(v) for v in self.params)


@dataclass(frozen=True)
class ConstructionCertificate:
    claim: ConstructionClaim
    size: int
    distinct_x: bool
    max_collinear_points: int
    no_collinear_ell: bool
    longest_cup_points: int = None
    longest_cap_points: int = None
    max_convex_points: int = None

    @property
    def target(self):
        return self.claim.params

    @property
    def size_ok(self):
        return self.size >= self.claim.target_size

    @property
    def passes(self):
        if not (self.no_collinear_ell and self.size_ok):
            return False
        if self.claim.kind == 'x':
            _, m, n = self.claim.params
            return (
                self.distinct_x
                and self.longest_cup_points is not None and self.longest_cup_points <= m - 1
                and self.longest_cap_points is not None and self.longest_cap_points <= n - 1
            )
        _, n = self.claim.params
        return self.max_convex_points is not None and self.max_convex_points <= n - 1

    def bounds(self):
        limits = {
            'size_at_least': str(Fraction(self.claim.target_size)),
            'collinear_below': self.claim.ell,
        }
        if self.claim.kind == 'x':
            _, m, n = self.claim.params
            limits.update(cup_below=m, cap_below=n)
        else:
            limits['convex_below'] = self.claim.params[1]
        return limits

    def to_dict(self):
        return {
            'claim': str(self.claim),
            'size': self.size,
            'bounds': self.bounds(),
            'passes': self.passes,
            'measured': {
                'distinct_x': self.distinct_x,
                'max_collinear_points': self.max_collinear_points,
                'no_collinear_ell': self.no_collinear_ell,
                'longest_cup_points': self.longest_cup_points,
                'longest_cap_points': self.longest_cap_points,
                'max_convex_points': self.max_convex_points,
            },
        }


def verify_construction(points, claim):
    """Measure points against claim. Failures show up in the certificate, never as errors."""
    if isinstance(claim, str):
        claim = ConstructionClaim.parse(claim)
    ps = as_point_set(points)
    size = len(ps)
    distinct_x = ps.has_distinct_x()

    collinear = max_collinear(ps).size if size >= 2 else size
    cup = cap = convex = None
    if distinct_x:
        cup = longest_cup(ps).size if size >= 2 else size
        cap = longest_cap(ps).size if size >= 2 else size
    if claim.kind == 'es':
        convex = max_convex_subset(ps).size if size >= 3 else size

    certificate = ConstructionCertificate(
        claim=claim,
        size=size,
        distinct_x=distinct_x,
        max_collinear_points=collinear,
        no_collinear_ell=collinear < claim.ell,
        longest_cup_points=cup,
        longest_cap_points=cap,
        max_convex_points=convex,
    )
    logger.info('verify %s: size=%d passes=%s', claim, size, certificate.passes)
    return certificate
