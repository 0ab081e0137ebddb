from constructions.verifier import verify_construction
from core.commands import CupCapCommand
from geometry.espts import read_espts


class Command(CupCapCommand):
    help = 'Check a point file against a claim such as x:3,5,5 or es:3,6. Exits 1 if the claim fails.'

    def add_command_arguments(self, parser):
        parser.add_argument('input')
        parser.add_argument('--claim', required=True)
        parser.add_argument('--report', help='certificate JSON path (default: stdout)')

    def run(self, config, input, claim, report=None, **options):
        certificate = verify_construction(read_espts(input), claim)
        self.emit(certificate.to_dict(), report)
        return certificate.passes, {'claim': str(certificate.claim), 'size': certificate.size}
