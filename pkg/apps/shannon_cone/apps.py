from django.apps import AppConfig


class ShannonConeConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.shannon_cone'
    verbose_name = 'Shannon cone geometry'
