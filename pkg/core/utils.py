"""
Shared utility functions.
"""

import json
import os
import tempfile
from pathlib import Path


def atomic_write_text(path, text):
    """
    Write text to path atomically: a temp file in the same directory is
    renamed over the target, so readers never see a half-written file.
    """
    target = Path(path)
    directory = target.parent if str(target.parent) else Path('.')
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=directory, prefix=f'.{target.name}.', suffix='.tmp')
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='\n') as handle:
            handle.write(text)
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return target


def dump_json(payload):
    """Deterministic JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(payload, indent=2, sort_keys=True) + '\n'


def write_json(path, payload):
    return atomic_write_text(path, dump_json(payload))


def coord_pairs(points):
    """Points as [[x, y], ...] with exact string coordinates."""
    return [p.as_pair() for p in points]
