from constructions.builders import build_ES_lower
from constructions.verifier import ConstructionClaim, verify_construction
from core.commands import CupCapCommand
from core.utils import write_json
from geometry.espts import write_espts


class Command(CupCapCommand):
    help = 'Build the (3 ell - 1) 2^(n-5) point set with no n in convex position. Writes OUT and OUT.cert.json.'

    def add_command_arguments(self, parser):
        parser.add_argument('ell', type=int)
        parser.add_argument('n', type=int)
        parser.add_argument('out')

    def run(self, config, ell, n, out, **options):
        claim = ConstructionClaim.es(ell, n)
        points = build_ES_lower(ell, n)
        write_espts(out, points, comment=f'ES lower bound ({ell},{n}), {len(points)} points')
        certificate = verify_construction(points, claim)
        write_json(f'{out}.cert.json', certificate.to_dict())
        self.stdout.write(self.style.SUCCESS(f'{out}: {len(points)} points, {claim} passes={certificate.passes}'))
        return certificate.passes, {'size': len(points), 'claim': str(claim)}
