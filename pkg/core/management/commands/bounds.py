from core.commands import CupCapCommand
from extremal.bounds import bound_table


class Command(CupCapCommand):
    help = 'Print the bound table for 3 <= m, n <= MAXMN as JSON.'

    def add_command_arguments(self, parser):
        parser.add_argument('ell', type=int)
        parser.add_argument('maxmn', type=int)
        parser.add_argument('--report', help='JSON output path (default: stdout)')

    def run(self, config, ell, maxmn, report=None, **options):
        table = bound_table(ell, maxmn, config.bounds)
        self.emit(table.to_dict(), report)
        return True, {'ell': ell, 'maxmn': maxmn}
