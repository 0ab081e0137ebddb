"""
Closed-form bounds, evaluated exactly.

The absolute constants of the upper bounds are never fixed numbers: they
come from BoundsConfig, and rows that depend on them say so.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from core.exceptions import ConfigError, PreconditionError


@dataclass(frozen=True)
class BoundsConfig:
    epsilon: Fraction = Fraction(1, 10)
    c: Fraction = Fraction(100)
    c1: Fraction = Fraction(1)
    big_c: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ('epsilon', 'c', 'c1', 'big_c'):
            value = Fraction(getattr(self, name))
            if value <= 0:
                raise ConfigError(f'{name} must be positive, got {value}.')
            object.__setattr__(self, name, value)
        if self.epsilon >= 1:
            raise ConfigError(f'epsilon must be below 1, got {self.epsilon}.')

    @classmethod
    def from_epsilon(cls, epsilon, **kwargs):
        """c = 10 / epsilon, as the cups-caps upper bound sets it."""
        epsilon = Fraction(epsilon)
        return cls(epsilon=epsilon, c=10 / epsilon, **kwargs)

    def to_dict(self):
        return {
            'epsilon': str(self.epsilon),
            'c': str(self.c),
            'c1': str(self.c1),
            'big_c': str(self.big_c),
        }


def _require(condition, message):
    if not condition:
        raise PreconditionError(message)


def f3(m, n):
    """Smallest N forcing an m-cup or an n-cap among N points in general position."""
    _require(m >= 3 and n >= 3, f'f3 needs m, n >= 3, got ({m}, {n}).')
    return math.comb(m + n - 4, n - 2) + 1


def h_ell(ell, m, n):
    """Size of the lower-bound construction with no ell on a line, m-cup or n-cap."""
    _require(min(ell, m, n) >= 3, f'h_ell needs ell, m, n >= 3, got ({ell}, {m}, {n}).')
    return (
        Fraction(ell - 1, 2) * math.comb(m + n - 4, n - 2)
        - Fraction(ell - 3, 2) * math.comb(m + n - 6, n - 3)
    )


def f_ell_upper(ell, m, n, cfg):
    """c * (min(m-1, n-1) + ell) * C(m+n-4, n-2); conditional on cfg.c."""
    _require(min(ell, m, n) >= 3, f'f_ell_upper needs ell, m, n >= 3, got ({ell}, {m}, {n}).')
    return cfg.c * (min(m - 1, n - 1) + ell) * math.comb(m + n - 4, n - 2)


def relative_upper(ell, m, n, cfg):
    """
    Points forcing ell on a line, an m outer-cup or an n inner-cap with
    respect to a separated convex body. Same shape as f_ell_upper.
    """
    return f_ell_upper(ell, m, n, cfg)


def es_lower(ell, n):
    """(3*ell - 1) * 2^(n-5) + 1; fractional below n = 5."""
    _require(ell >= 3 and n >= 3, f'es_lower needs ell, n >= 3, got ({ell}, {n}).')
    return (3 * ell - 1) * Fraction(2) ** (n - 5) + 1


def es_upper_exponent(n, cfg):
    """ceil(n + C * sqrt(n * log2 n)); the irrational part is evaluated in floating point."""
    _require(n >= 3, f'es_upper_exponent needs n >= 3, got {n}.')
    return math.ceil(n + float(cfg.big_c) * math.sqrt(n * math.log2(n)))


def es_upper(ell, n, cfg):
    """ell^2 * 2^exponent with the exponent rounded up."""
    return Fraction(ell * ell * 2 ** es_upper_exponent(n, cfg))


def cell_count(n):
    """The even number of cells 2 * ceil(sqrt(n log2 n)) used by the big-line-or-polygon argument."""
    _require(n >= 2, f'cell_count needs n >= 2, got {n}.')
    return 2 * math.ceil(math.sqrt(n * math.log2(n)))


def supersaturation_threshold(ell, k, cfg):
    """c1 * ell * 2^(32k): set size that guarantees a fat k-cup or k-cap."""
    _require(ell >= 3 and k >= 2, f'supersaturation_threshold needs ell >= 3, k >= 2, got ({ell}, {k}).')
    return cfg.c1 * ell * 2 ** (32 * k)


@dataclass(frozen=True)
class PairBounds:
    m: int
    n: int
    f3: int
    h_ell: Fraction
    f_ell_upper: Fraction
    relative_upper: Fraction

    def to_dict(self):
        return {
            'm': self.m,
            'n': self.n,
            'f3': self.f3,
            'h_ell': str(self.h_ell),
            'f_ell_upper': str(self.f_ell_upper),
            'relative_upper': str(self.relative_upper),
        }


@dataclass(frozen=True)
class EsBounds:
    n: int
    es_lower: Fraction
    es_upper_exponent: int
    es_upper: Fraction
    cell_count: int

    def to_dict(self):
        return {
            'n': self.n,
            'es_lower': str(self.es_lower),
            'es_upper_exponent': self.es_upper_exponent,
            'es_upper': str(self.es_upper),
            'cell_count': self.cell_count,
        }


@dataclass(frozen=True)
class BoundTable:
    ell: int
    maxmn: int
    cfg: BoundsConfig
    pairs: list = field(default_factory=list)
    es: list = field(default_factory=list)

    def pair(self, m, n):
        return next(row for row in self.pairs if (row.m, row.n) == (m, n))

    def es_row(self, n):
        return next(row for row in self.es if row.n == n)

    def to_dict(self):
        return {
            'ell': self.ell,
            'maxmn': self.maxmn,
            'config': self.cfg.to_dict(),
            'conditional_on_config': ['f_ell_upper', 'relative_upper', 'es_upper', 'es_upper_exponent'],
            'pairs': [row.to_dict() for row in self.pairs],
            'es': [row.to_dict() for row in self.es],
        }


def bound_table(ell, maxmn, cfg=None):
    """Every bound for 3 <= m, n <= maxmn."""
    _require(ell >= 3 and maxmn >= 3, f'bound_table needs ell, maxmn >= 3, got ({ell}, {maxmn}).')
    cfg = cfg or BoundsConfig()
    sizes = range(3, maxmn + 1)
    pairs = [
        PairBounds(
            m=m,
            n=n,
            f3=f3(m, n),
            h_ell=h_ell(ell, m, n),
            f_ell_upper=f_ell_upper(ell, m, n, cfg),
            relative_upper=relative_upper(ell, m, n, cfg),
        )
        for m in sizes for n in sizes
    ]
    es = [
        EsBounds(
            n=n,
            es_lower=es_lower(ell, n),
            es_upper_exponent=es_upper_exponent(n, cfg),
            es_upper=es_upper(ell, n, cfg),
            cell_count=cell_count(n),
        )
        for n in sizes
    ]
    return BoundTable(ell=ell, maxmn=maxmn, cfg=cfg, pairs=pairs, es=es)
