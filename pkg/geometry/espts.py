"""
The "espts v1" point-set text format.

    espts v1
    # comment lines start with '#'
    0 0
    1/2 -3

Each coordinate is an optionally signed integer or a p/q rational in
lowest terms. Errors cite the offending line number.
"""

import math
import re
from fractions import Fraction
from pathlib import Path

from core.exceptions import EsptsParseError
from core.utils import atomic_write_text
from .kernel import Point, PointSet

HEADER = 'espts v1'

_TOKEN = re.compile(r'[+-]?[0-9]+(?:/[0-9]+)?\Z')


def parse_coord(token, lineno):
    if not _TOKEN.match(token):
        raise EsptsParseError(lineno, f'malformed coordinate {token!r}')
    if '/' in token:
        numerator, denominator = (int(part) for part in token.split('/'))
        if denominator == 0:
            raise EsptsParseError(lineno, f'zero denominator in {token!r}')
        if math.gcd(numerator, denominator) != 1:
            raise EsptsParseError(lineno, f'{token!r} is not in lowest terms')
    return Fraction(token)


def parse_espts(text):
    lines = text.split('\n')
    if not lines or lines[0].strip() != HEADER:
        raise EsptsParseError(1, f'expected header {HEADER!r}')

    points = []
    seen = set()
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EsptsParseError(lineno, f'expected "X Y", got {len(tokens)} tokens')
        point = Point(parse_coord(tokens[0], lineno), parse_coord(tokens[1], lineno))
        if point in seen:
            raise EsptsParseError(lineno, f'duplicate point {point}')
        seen.add(point)
        points.append(point)
    return PointSet(points)


def format_espts(points, comment=None):
    lines = [HEADER]
    if comment:
        lines.extend(f'# {line}' for line in comment.splitlines())
    lines.extend(f'{p.x} {p.y}' for p in points)
    return '\n'.join(lines) + '\n'


def decode_lines(data):
    decoded = []
    for lineno, raw in enumerate(data.split(b'\n'), start=1):
        try:
            decoded.append(raw.decode('utf-8'))
        except UnicodeDecodeError:
            raise EsptsParseError(lineno, 'invalid UTF-8') from None
    return '\n'.join(decoded)


def read_espts(path):
    return parse_espts(decode_lines(Path(path).read_bytes()))


def write_espts(path, points, comment=None):
    return atomic_write_text(path, format_espts(points, comment=comment))
