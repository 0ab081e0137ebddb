from core.commands import CupCapCommand
from core.utils import coord_pairs
from extremal.engine import (
    ORACLE_CAP, StructureKind, brute_force_convex_subset, brute_force_longest_chain,
    find_structure, longest_cap, longest_cup, max_collinear, max_convex_subset,
)
from geometry.espts import read_espts
from geometry.kernel import shear_distinct_x


def _size(witness):
    return witness.size if witness else None


class Command(CupCapCommand):
    help = 'Report collinear runs, cups, caps and convex subsets of a point file.'

    def add_command_arguments(self, parser):
        parser.add_argument('input')
        parser.add_argument('ell', type=int)
        parser.add_argument('m', type=int)
        parser.add_argument('n', type=int)
        parser.add_argument('--report', help='JSON report path (default: stdout)')

    def oracle_check(self, points, cup, cap, convex):
        """Exhaustive cross-check, run only on small inputs."""
        return (
            brute_force_longest_chain(points, StructureKind.CUP).size == cup.size
            and brute_force_longest_chain(points, StructureKind.CAP).size == cap.size
            and brute_force_convex_subset(points).size == convex.size
        )

    def run(self, config, input, ell, m, n, report=None, **options):
        points = read_espts(input)
        sheared = not points.has_distinct_x()
        if sheared:
            points = shear_distinct_x(points)

        structure = find_structure(points, ell, m, n)
        collinear = cup = cap = convex = None
        if len(points) >= 2:
            collinear, cup, cap = max_collinear(points), longest_cup(points), longest_cap(points)
        if len(points) >= 3:
            convex = max_convex_subset(points)

        payload = {
            'input_file': input,
            'params': {'ell': ell, 'm': m, 'n': n},
            'n_points': len(points),
            'sheared': sheared,
            'max_collinear': _size(collinear),
            'longest_cup': _size(cup),
            'longest_cap': _size(cap),
            'max_convex_subset': _size(convex),
            'found': structure.kind.value if structure else None,
            'witnesses': coord_pairs(structure.members) if structure else [],
            'details': {
                w.kind.value: w.to_dict()
                for w in (collinear, cup, cap, convex) if w is not None
            },
        }
        if convex is not None and len(points) <= min(config.oracle_threshold, ORACLE_CAP):
            payload['oracle_agrees'] = self.oracle_check(points, cup, cap, convex)
        self.emit(payload, report)
        return True, {'n_points': len(points), 'found': payload['found']}
