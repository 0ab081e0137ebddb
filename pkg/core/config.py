"""
Run configuration: settings.CUPCAP defaults, then a flat KEY=value file,
then command-line flags.
"""

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from django.conf import settings
from dotenv import dotenv_values

from extremal.bounds import BoundsConfig
from .exceptions import ConfigError

FRACTION_KEYS = ('BOUNDS_EPSILON', 'BOUNDS_C', 'BOUNDS_C1', 'BOUNDS_BIG_C')
INT_KEYS = (
    'TRANSVERSAL_SAMPLES', 'FAT_CAP_BUDGET', 'FAT_CAP_SAMPLE_SIZE',
    'FAT_CAP_PROBE_SIZE', 'ORACLE_THRESHOLD', 'SEED',
)


@dataclass(frozen=True)
class RunConfig:
    bounds: BoundsConfig
    transversal_samples: int
    fat_cap_budget: int
    fat_cap_sample_size: int
    fat_cap_probe_size: int
    oracle_threshold: int
    seed: int

    def to_dict(self):
        return {
            'bounds': self.bounds.to_dict(),
            'transversal_samples': self.transversal_samples,
            'fat_cap_budget': self.fat_cap_budget,
            'fat_cap_sample_size': self.fat_cap_sample_size,
            'fat_cap_probe_size': self.fat_cap_probe_size,
            'oracle_threshold': self.oracle_threshold,
            'seed': self.seed,
        }


def _parse(key, raw):
    if raw is None:
        raise ConfigError(f'{key} has no value.')
    try:
        value = Fraction(raw.strip()) if key in FRACTION_KEYS else int(raw.strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f'{key}: cannot parse {raw!r}.')
    if key in INT_KEYS and key != 'SEED' and value < 1:
        raise ConfigError(f'{key} must be positive, got {value}.')
    return value


def read_config_file(path):
    """KEY=value pairs from path, keys upper-cased. Unknown keys raise ConfigError."""
    if not Path(path).is_file():
        raise ConfigError(f'Config file {path} does not exist.')
    values = {}
    for key, raw in dotenv_values(path).items():
        name = key.upper()
        if name not in FRACTION_KEYS + INT_KEYS:
            raise ConfigError(f'Unknown config key {key!r}.')
        values[name] = _parse(name, raw)
    return values


def load_run_config(path=None, **overrides):
    """
    Layer settings.CUPCAP, the optional config file and non-None overrides
    (keyword names are case-insensitive keys). Setting BOUNDS_EPSILON
    without BOUNDS_C gives c = 10 / epsilon.
    """
    values = dict(settings.CUPCAP)
    layered = read_config_file(path) if path else {}
    for key, value in overrides.items():
        if value is None:
            continue
        name = key.upper()
        if name not in FRACTION_KEYS + INT_KEYS:
            raise ConfigError(f'Unknown config key {key!r}.')
        layered[name] = _parse(name, str(value))
    if 'BOUNDS_EPSILON' in layered and 'BOUNDS_C' not in layered:
        layered['BOUNDS_C'] = 10 / layered['BOUNDS_EPSILON']
    values.update(layered)

    bounds = BoundsConfig(
        epsilon=values['BOUNDS_EPSILON'],
        c=values['BOUNDS_C'],
        c1=values['BOUNDS_C1'],
        big_c=values['BOUNDS_BIG_C'],
    )
    return RunConfig(
        bounds=bounds,
        transversal_samples=int(values['TRANSVERSAL_SAMPLES']),
        fat_cap_budget=int(values['FAT_CAP_BUDGET']),
        fat_cap_sample_size=int(values['FAT_CAP_SAMPLE_SIZE']),
        fat_cap_probe_size=int(values['FAT_CAP_PROBE_SIZE']),
        oracle_threshold=int(values['ORACLE_THRESHOLD']),
        seed=int(values['SEED']),
    )
