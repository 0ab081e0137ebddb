from django.apps import AppConfig


class ExtremalConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'extremal'
    verbose_name = 'Cups, caps and convex subsets'
