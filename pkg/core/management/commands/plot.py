from core.commands import CupCapCommand
from core.plotting import HIGHLIGHTS, highlight_witness, render_pointset_svg
from core.utils import atomic_write_text
from geometry.espts import read_espts


class Command(CupCapCommand):
    help = 'Draw a point file as a standalone SVG, optionally highlighting a witness.'

    def add_command_arguments(self, parser):
        parser.add_argument('input')
        parser.add_argument('svg_out')
        parser.add_argument('--highlight', choices=sorted(HIGHLIGHTS))

    def run(self, config, input, svg_out, highlight=None, **options):
        points = read_espts(input)
        witness = highlight_witness(points, highlight)
        atomic_write_text(svg_out, render_pointset_svg(points, witness))
        return True, {'size': len(points), 'highlight': highlight}
