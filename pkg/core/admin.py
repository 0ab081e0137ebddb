from django.contrib import admin
from .models import RunLog


@admin.register(RunLog)
class RunLogAdmin(admin.ModelAdmin):
    list_display = ('command', 'status', 'created_at')
    list_filter = ('command', 'status')
    search_fields = ('command',)
    readonly_fields = ('command', 'arguments', 'status', 'summary', 'created_at')
