import json
import tempfile
from fractions import Fraction
from io import StringIO
from pathlib import Path
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.db import DatabaseError
from django.test import TestCase, override_settings

from constructions.builders import build_X
from geometry.espts import read_espts, write_espts
from geometry.kernel import Point, PointSet
from .config import load_run_config, read_config_file
from .exceptions import ConfigError
from .models import RunLog
from .services import record_run
from .utils import atomic_write_text


def parabola(count):
    return PointSet(Point(x, x * x) for x in range(count))


class CommandTestCase(TestCase):

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def path(self, name):
        return str(self.tmp / name)

    def call(self, *args, **options):
        out = StringIO()
        call_command(*args, stdout=out, stderr=StringIO(), **options)
        return out.getvalue()

    def exit_code(self, *args, **options):
        with self.assertRaises(CommandError) as ctx:
            self.call(*args, **options)
        return ctx.exception.returncode, str(ctx.exception)


class GenerateCommandTests(CommandTestCase):

    def test_gen_x_writes_points_and_certificate(self):
        out = self.path('x355.pts')
        self.call('gen_x', '3', '5', '5', out)

        points = read_espts(out)
        self.assertEqual(len(points), 20)
        self.assertEqual(points, build_X(3, 5, 5))
        certificate = json.loads(Path(f'{out}.cert.json').read_text())
        self.assertEqual(certificate['claim'], 'x:3,5,5')
        self.assertTrue(certificate['passes'])

    def test_gen_es_size(self):
        out = self.path('es36.pts')
        self.call('gen_es', '3', '6', out)
        self.assertEqual(len(read_espts(out)), 16)
        self.assertTrue(json.loads(Path(f'{out}.cert.json').read_text())['passes'])

    def test_bad_parameters_exit_2(self):
        code, _ = self.exit_code('gen_x', '2', '5', '5', self.path('bad.pts'))
        self.assertEqual(code, 2)
        self.assertFalse(Path(self.path('bad.pts')).exists())


class VerifyCommandTests(CommandTestCase):

    def setUp(self):
        super().setUp()
        self.points = self.path('x355.pts')
        write_espts(self.points, build_X(3, 5, 5))

    def test_passing_claim(self):
        report = self.path('cert.json')
        self.call('verify', self.points, '--claim', 'x:3,5,5', '--report', report)
        self.assertTrue(json.loads(Path(report).read_text())['passes'])

    def test_failing_claim_exit_1(self):
        report = self.path('cert.json')
        code, _ = self.exit_code('verify', self.points, '--claim', 'x:3,4,5', '--report', report)
        self.assertEqual(code, 1)
        # the certificate is still written
        self.assertFalse(json.loads(Path(report).read_text())['passes'])

    def test_malformed_claim_exit_2(self):
        code, _ = self.exit_code('verify', self.points, '--claim', 'y:1')
        self.assertEqual(code, 2)

    def test_certificate_to_stdout(self):
        payload = json.loads(self.call('verify', self.points, '--claim', 'x:3,5,5'))
        self.assertEqual(payload['size'], 20)


class AnalyzeCommandTests(CommandTestCase):

    def test_report(self):
        src = self.path('cup.pts')
        write_espts(src, parabola(7))
        report = json.loads(self.call('analyze', src, '3', '5', '5'))

        self.assertEqual(report['n_points'], 7)
        self.assertFalse(report['sheared'])
        self.assertEqual(report['longest_cup'], 7)
        self.assertEqual(report['longest_cap'], 2)
        self.assertEqual(report['max_collinear'], 2)
        self.assertEqual(report['max_convex_subset'], 7)
        self.assertEqual(report['found'], 'cup')
        self.assertEqual(len(report['witnesses']), 5)
        self.assertTrue(report['oracle_agrees'])

    def test_nothing_found(self):
        src = self.path('x.pts')
        write_espts(src, build_X(3, 4, 4))
        report = json.loads(self.call('analyze', src, '3', '4', '4'))
        self.assertIsNone(report['found'])
        self.assertEqual(report['witnesses'], [])

    def test_shears_repeated_x(self):
        src = self.path('grid.pts')
        atomic_write_text(src, 'espts v1\n0 0\n0 1\n1 0\n1 1\n')
        report = json.loads(self.call('analyze', src, '3', '4', '4'))
        self.assertTrue(report['sheared'])
        self.assertEqual(report['n_points'], 4)
        self.assertEqual(report['max_convex_subset'], 4)

    def test_malformed_coordinate_exit_2(self):
        src = self.path('broken.pts')
        atomic_write_text(src, 'espts v1\n0 0\n1 x\n')
        code, message = self.exit_code('analyze', src, '3', '4', '4')
        self.assertEqual(code, 2)
        self.assertIn('line 3', message)

    def test_invalid_utf8_exit_2(self):
        src = self.path('binary.pts')
        Path(src).write_bytes(b'espts v1\n0 0\n1 \xff\n')
        code, message = self.exit_code('analyze', src, '3', '4', '4')
        self.assertEqual(code, 2)
        self.assertIn('line 3', message)

    def test_missing_file_exit_2(self):
        code, _ = self.exit_code('analyze', self.path('nope.pts'), '3', '4', '4')
        self.assertEqual(code, 2)

    def test_report_is_deterministic(self):
        src = self.path('x.pts')
        write_espts(src, build_X(3, 5, 4))
        first, second = self.path('a.json'), self.path('b.json')
        self.call('analyze', src, '3', '5', '4', '--report', first)
        self.call('analyze', src, '3', '5', '4', '--report', second)
        self.assertEqual(Path(first).read_bytes(), Path(second).read_bytes())


class BoundsCommandTests(CommandTestCase):

    def test_table(self):
        table = json.loads(self.call('bounds', '3', '5'))
        self.assertEqual(table, json.loads(self.call('bounds', '3', '5')))

    def test_config_file_changes_the_table(self):
        config = self.path('run.env')
        atomic_write_text(config, 'BOUNDS_EPSILON=1/5\n')
        default = self.call('bounds', '3', '5')
        tuned = self.call('bounds', '3', '5', '--config', config)
        self.assertNotEqual(default, tuned)

    def test_unknown_config_key_exit_2(self):
        config = self.path('run.env')
        atomic_write_text(config, 'WIDTH=3\n')
        code, message = self.exit_code('bounds', '3', '5', '--config', config)
        self.assertEqual(code, 2)
        self.assertIn('WIDTH', message)


class FatCapCommandTests(CommandTestCase):

    def test_parabola(self):
        src = self.path('cup.pts')
        write_espts(src, parabola(100))
        report = json.loads(self.call('fat_cap', src, '4', '--seed', '3'))

        self.assertEqual(report['k'], 4)
        self.assertEqual(len(report['cap']), 4)
        self.assertEqual(len(report['occupancies']), 4)
        self.assertGreaterEqual(report['min_occupancy'], 1)
        self.assertTrue(report['transversal']['ok'])
        self.assertEqual(report['transversal']['violations'], 0)

    def test_same_seed_same_report(self):
        src = self.path('cup.pts')
        write_espts(src, parabola(60))
        first = self.call('fat_cap', src, '5', '--seed', '9', '--budget', '2')
        self.assertEqual(first, self.call('fat_cap', src, '5', '--seed', '9', '--budget', '2'))

    def test_collinear_input_exit_1(self):
        src = self.path('line.pts')
        write_espts(src, PointSet(Point(x, 2 * x) for x in range(12)))
        code, _ = self.exit_code('fat_cap', src, '4')
        self.assertEqual(code, 1)

    def test_small_k_exit_2(self):
        src = self.path('cup.pts')
        write_espts(src, parabola(10))
        code, _ = self.exit_code('fat_cap', src, '3')
        self.assertEqual(code, 2)

    def test_shears_repeated_x(self):
        src = self.path('cup.pts')
        write_espts(src, PointSet(list(parabola(40)) + [Point(0, 5)]))
        report = json.loads(self.call('fat_cap', src, '4', '--seed', '3'))

        self.assertTrue(report['sheared'])
        self.assertEqual(len(report['cap']), 4)
        self.assertGreaterEqual(report['min_occupancy'], 1)


class PlotCommandTests(CommandTestCase):

    def setUp(self):
        super().setUp()
        self.src = self.path('cup.pts')
        write_espts(self.src, parabola(6))

    def test_plain_plot(self):
        svg = self.path('plain.svg')
        self.call('plot', self.src, svg)
        text = Path(svg).read_text()
        self.assertTrue(text.startswith('<?xml'))
        self.assertEqual(text.count('<circle'), 6)
        self.assertNotIn('<polyline', text)

    def test_highlighted_cup(self):
        svg = self.path('cup.svg')
        self.call('plot', self.src, svg, '--highlight', 'cup')
        text = Path(svg).read_text()
        self.assertEqual(text.count('<circle'), 6)
        self.assertIn('<polyline', text)
        self.assertIn('cup of 6', text)

    def test_byte_identical(self):
        first, second = self.path('a.svg'), self.path('b.svg')
        self.call('plot', self.src, first, '--highlight', 'convex')
        self.call('plot', self.src, second, '--highlight', 'convex')
        self.assertEqual(Path(first).read_bytes(), Path(second).read_bytes())


class RunLedgerTests(CommandTestCase):

    def test_successful_run_is_recorded(self):
        self.call('gen_x', '3', '4', '4', self.path('x.pts'))
        run = RunLog.objects.get()
        self.assertEqual(run.command, 'gen_x')
        self.assertEqual(run.status, RunLog.STATUS_OK)
        self.assertEqual(run.arguments['ell'], 3)
        self.assertEqual(run.summary['size'], 6)

    def test_errors_and_failures_are_recorded(self):
        src = self.path('broken.pts')
        atomic_write_text(src, 'espts v1\n0\n')
        self.exit_code('analyze', src, '3', '4', '4')
        write_espts(src, build_X(3, 5, 5))
        self.exit_code('verify', src, '--claim', 'x:3,4,4')
        self.assertEqual(
            list(RunLog.objects.order_by('created_at', 'id').values_list('command', 'status')),
            [('analyze', RunLog.STATUS_ERROR), ('verify', RunLog.STATUS_FAILED)],
        )

    def test_database_errors_do_not_escape(self):
        with mock.patch.object(RunLog.objects, 'create', side_effect=DatabaseError('locked')):
            self.assertIsNone(record_run('bounds', {}, RunLog.STATUS_OK))
            self.call('bounds', '3', '4')


class RunConfigTests(CommandTestCase):

    def test_defaults(self):
        config = load_run_config()
        self.assertEqual(config.bounds.epsilon, Fraction(1, 10))
        self.assertEqual(config.bounds.c, 100)
        self.assertEqual(config.seed, 0)
        self.assertEqual(config.transversal_samples, 10_000)

    @override_settings(CUPCAP={
        'BOUNDS_EPSILON': Fraction(1, 2), 'BOUNDS_C': Fraction(20), 'BOUNDS_C1': Fraction(1),
        'BOUNDS_BIG_C': Fraction(1), 'TRANSVERSAL_SAMPLES': 50, 'FAT_CAP_BUDGET': 1,
        'FAT_CAP_SAMPLE_SIZE': 6, 'FAT_CAP_PROBE_SIZE': 16, 'ORACLE_THRESHOLD': 8, 'SEED': 4,
    })
    def test_file_then_flags(self):
        config_path = self.path('run.env')
        atomic_write_text(config_path, '# tuned\nseed=7\nfat_cap_budget=3\n')
        self.assertEqual(load_run_config().seed, 4)

        config = load_run_config(config_path)
        self.assertEqual((config.seed, config.fat_cap_budget), (7, 3))
        self.assertEqual(config.transversal_samples, 50)

        self.assertEqual(load_run_config(config_path, seed=11).seed, 11)
        self.assertEqual(load_run_config(config_path, seed=None).seed, 7)

    def test_epsilon_sets_c(self):
        config_path = self.path('run.env')
        atomic_write_text(config_path, 'BOUNDS_EPSILON=1/4\n')
        self.assertEqual(load_run_config(config_path).bounds.c, 40)

        atomic_write_text(config_path, 'BOUNDS_EPSILON=1/4\nBOUNDS_C=3\n')
        self.assertEqual(load_run_config(config_path).bounds.c, 3)

    def test_rejects_bad_files(self):
        config_path = self.path('run.env')
        for text in ('COLOUR=red\n', 'SEED=abc\n', 'FAT_CAP_BUDGET=0\n', 'BOUNDS_C=1/0\n'):
            atomic_write_text(config_path, text)
            with self.assertRaises(ConfigError):
                read_config_file(config_path)
        with self.assertRaises(ConfigError):
            read_config_file(self.path('missing.env'))
