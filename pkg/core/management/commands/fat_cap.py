from core.commands import CupCapCommand
from geometry.espts import read_espts
from geometry.kernel import shear_distinct_x
from relative.support import find_fat_cap, transversal_check


class Command(CupCapCommand):
    help = 'Search a k-cup or k-cap with populated support regions and check its transversals.'

    def add_command_arguments(self, parser):
        parser.add_argument('input')
        parser.add_argument('k', type=int)
        parser.add_argument('--budget', type=int, help='search rounds (default FAT_CAP_BUDGET)')
        parser.add_argument('--report', help='JSON report path (default: stdout)')

    def run(self, config, input, k, budget=None, report=None, **options):
        points = read_espts(input)
        sheared = not points.has_distinct_x()
        if sheared:
            points = shear_distinct_x(points)

        fat = find_fat_cap(
            points, k,
            seed=config.seed,
            budget=budget or config.fat_cap_budget,
            sample_size=config.fat_cap_sample_size,
            probe_size=config.fat_cap_probe_size,
        )
        payload = fat.to_dict()
        payload['sheared'] = sheared
        payload['transversal'] = None
        passed = fat.min_occupancy > 0
        if passed:
            result = transversal_check(points, fat.cap, config.transversal_samples, seed=config.seed)
            payload['transversal'] = result.to_dict()
            passed = result.ok
        self.emit(payload, report)
        return passed, {'k': k, 'min_occupancy': fat.min_occupancy, 'sheared': sheared}
