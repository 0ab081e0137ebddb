"""
Run ledger services. Recording is best effort: a missing or broken database
never changes a command's outcome.
"""

import logging

from django.db import DatabaseError

from .models import RunLog

logger = logging.getLogger(__name__)


def record_run(command, arguments, status, summary=None):
    """Store one RunLog row; returns it, or None if the database refused."""
    try:
        return RunLog.objects.create(
            command=command,
            arguments=arguments,
            status=status,
            summary=summary or {},
        )
    except DatabaseError as exc:
        logger.warning('Could not record %s run: %s', command, exc)
        return None
