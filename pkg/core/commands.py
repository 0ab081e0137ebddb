"""
Shared base for the cupcap management commands.

Exit codes: 0 success, 1 a check failed (certificate, transversal, no
structure found), 2 bad input (parse, config or precondition errors).
"""

import logging

from django.core.management.base import BaseCommand, CommandError

from .config import load_run_config
from .exceptions import CupCapError, NoStructureFound
from .models import RunLog
from .services import record_run
from .utils import dump_json, write_json

logger = logging.getLogger(__name__)

DJANGO_OPTIONS = {
    'verbosity', 'settings', 'pythonpath', 'traceback', 'no_color',
    'force_color', 'skip_checks',
}


def _plain(value):
    return value if isinstance(value, (bool, int, float, str)) else str(value)


class CupCapCommand(BaseCommand):
    """
    Subclasses add their own arguments in add_command_arguments and implement
    run(config, **options), returning (passed, summary).
    """

    def add_arguments(self, parser):
        self.add_command_arguments(parser)
        parser.add_argument('--config', help='KEY=value run configuration file')
        parser.add_argument('--seed', type=int, help='random seed (default from configuration)')

    def add_command_arguments(self, parser):
        pass

    def run(self, config, **options):
        raise NotImplementedError

    def emit(self, payload, path=None):
        """Write payload as JSON to path, or to stdout when no path is given."""
        if path:
            write_json(path, payload)
        else:
            self.stdout.write(dump_json(payload), ending='')

    def handle(self, *args, **options):
        name = self.__module__.rsplit('.', 1)[-1]
        arguments = {
            key: _plain(value) for key, value in options.items()
            if key not in DJANGO_OPTIONS and value is not None
        }
        logger.info('%s started', name)
        try:
            config = load_run_config(options.get('config'), seed=options.get('seed'))
            run_options = {key: value for key, value in options.items() if key != 'config'}
            passed, summary = self.run(config, **run_options)
        except NoStructureFound as exc:
            record_run(name, arguments, RunLog.STATUS_FAILED, {'error': str(exc)})
            raise CommandError(str(exc), returncode=1)
        except (CupCapError, OSError) as exc:
            record_run(name, arguments, RunLog.STATUS_ERROR, {'error': str(exc)})
            raise CommandError(str(exc), returncode=2)

        status = RunLog.STATUS_OK if passed else RunLog.STATUS_FAILED
        record_run(name, arguments, status, summary)
        logger.info('%s finished: %s', name, status)
        if not passed:
            raise CommandError(f'{name}: check failed', returncode=1)
