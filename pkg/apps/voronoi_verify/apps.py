from django.apps import AppConfig


class VoronoiVerifyConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.voronoi_verify'
    verbose_name = 'Farthest-point Voronoi verification'
