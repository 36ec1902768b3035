from django.apps import AppConfig


class CodebookSimConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.codebook_sim'
    verbose_name = 'Codebook and relay cascade simulation'
