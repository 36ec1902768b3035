from django.apps import AppConfig


class BoundEngineConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.bound_engine'
    verbose_name = 'Cascade bounds and exponents'
