from django.apps import AppConfig


class RelativeConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'relative'
    verbose_name = 'Structures relative to a convex body'
