"""
RunLog model: one row per management command run.
"""

from django.db import models


class RunLog(models.Model):
    STATUS_OK = 'ok'
    STATUS_FAILED = 'failed'
    STATUS_ERROR = 'error'

    STATUS_CHOICES = [
        (STATUS_OK, 'OK'),
        (STATUS_FAILED, 'Failed'),
        (STATUS_ERROR, 'Error'),
    ]

    command = models.CharField(max_length=32)
    arguments = models.JSONField(default=dict)
    status = models.CharField(max_length=10, choices=STATUS_CHOICES, default=STATUS_OK)
    summary = models.JSONField(default=dict, blank=True)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        db_table = 'cupcap_run_log'
        ordering = ['-created_at']
        indexes = [
            models.Index(fields=['command', 'status'], name='run_log_command_status_idx'),
        ]

    def __str__(self):
        return f"{self.command} ({self.status})"
