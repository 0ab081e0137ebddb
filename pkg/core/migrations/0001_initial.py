# Generated by Django 4.2.9 on 2026-10-18 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='RunLog',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('command', models.CharField(max_length=32)),
                ('arguments', models.JSONField(default=dict)),
                ('status', models.CharField(choices=[('ok', 'OK'), ('failed', 'Failed'), ('error', 'Error')], default='ok', max_length=10)),
                ('summary', models.JSONField(blank=True, default=dict)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'db_table': 'cupcap_run_log',
                'ordering': ['-created_at'],
                'indexes': [models.Index(fields=['command', 'status'], name='run_log_command_status_idx')],
            },
        ),
    ]
