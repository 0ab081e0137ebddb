"""
Standalone SVG figures of point sets, rendered from plots/pointset.svg.
"""

from django.template.loader import render_to_string

from extremal.engine import (
    StructureKind, longest_cap, longest_cup, max_collinear, max_convex_subset,
)
from geometry.kernel import as_point_set

SIZE = 480
MARGIN = 24
RADIUS = 4

HIGHLIGHTS = {
    StructureKind.CUP.value: longest_cup,
    StructureKind.CAP.value: longest_cap,
    StructureKind.COLLINEAR.value: max_collinear,
    StructureKind.CONVEX.value: max_convex_subset,
}


def _fmt(value):
    return f'{float(value):.3f}'


def highlight_witness(points, highlight):
    """The witness drawn for a --highlight choice, or None."""
    if not highlight:
        return None
    return HIGHLIGHTS[highlight](points)


def render_pointset_svg(points, witness=None):
    """Points as circles; witness members joined by a polyline (closed for convex witnesses)."""
    ps = as_point_set(points)
    xs = [p.x for p in ps] or [0]
    ys = [p.y for p in ps] or [0]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1
    scale = (SIZE - 2 * MARGIN) / span

    def place(p):
        return _fmt(MARGIN + (p.x - min(xs)) * scale), _fmt(SIZE - MARGIN - (p.y - min(ys)) * scale)

    members = set(witness.members) if witness else set()
    circles = [(*place(p), p in members) for p in ps]
    polyline = ''
    if witness and witness.size >= 2:
        path = list(witness.members)
        if witness.kind == StructureKind.CONVEX:
            path.append(path[0])
        polyline = ' '.join(','.join(place(p)) for p in path)

    return render_to_string('plots/pointset.svg', {
        'size': SIZE,
        'radius': RADIUS,
        'circles': circles,
        'polyline': polyline,
        'title': f'{len(ps)} points' + (f', {witness.kind.value} of {witness.size}' if witness else ''),
    })
