from django.apps import AppConfig


class InfoMatrixConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.info_matrix'
    verbose_name = 'Transition matrices and information contraction'
