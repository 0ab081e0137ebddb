from constructions.builders import build_X
from constructions.verifier import ConstructionClaim, verify_construction
from core.commands import CupCapCommand
from core.utils import write_json
from geometry.espts import write_espts


class Command(CupCapCommand):
    help = 'Build X(ell, m, n): no ell on a line, no m-cup, no n-cap. Writes OUT and OUT.cert.json.'

    def add_command_arguments(self, parser):
        parser.add_argument('ell', type=int)
        parser.add_argument('m', type=int)
        parser.add_argument('n', type=int)
        parser.add_argument('out')

    def run(self, config, ell, m, n, out, **options):
        claim = ConstructionClaim.x(ell, m, n)
        points = build_X(ell, m, n)
        write_espts(out, points, comment=f'X({ell},{m},{n}), {len(points)} points')
        certificate = verify_construction(points, claim)
        write_json(f'{out}.cert.json', certificate.to_dict())
        self.stdout.write(self.style.SUCCESS(f'{out}: {len(points)} points, {claim} passes={certificate.passes}'))
        return certificate.passes, {'size': len(points), 'claim': str(claim)}
