"""
Django settings for the cone-bound project.

The project has no HTTP surface and no database: it is driven through
management commands (`python manage.py bound|exponents|simulate|verify`).
"""
from pathlib import Path

from core import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = config.SECRET_KEY

DEBUG = config.DEBUG

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'rest_framework',

    'apps.shared',
    'apps.shannon_cone',
    'apps.info_matrix',
    'apps.bound_engine',
    'apps.codebook_sim',
    'apps.voronoi_verify',
    'apps.cli',
]

# No persistence; every artifact goes to stdout or to files named by --out
DATABASES = {}

LANGUAGE_CODE = 'en'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# -------------------------------------------------------------------
# DJANGO REST FRAMEWORK CONFIG
# -------------------------------------------------------------------

REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'COERCE_DECIMAL_TO_STRING': False,
    'UNAUTHENTICATED_USER': None,
}

# -------------------------------------------------------------------
# LOGGING CONFIG
# -------------------------------------------------------------------

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'json': {
            '()': 'pythonjsonlogger.json.JsonFormatter',
            'fmt': '%(asctime)s %(levelname)s %(name)s %(message)s',
            'rename_fields': {'asctime': 'time', 'levelname': 'level', 'name': 'logger'},
        },
        'plain': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'stderr': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain' if config.LOG_FORMAT == 'plain' else 'json',
        },
    },
    'loggers': {
        'apps': {
            'handlers': ['stderr'],
            'level': config.LOG_LEVEL,
            'propagate': False,
        },
        'core': {
            'handlers': ['stderr'],
            'level': config.LOG_LEVEL,
            'propagate': False,
        },
    },
}

# -------------------------------------------------------------------
# NUMERICS CONFIG
# -------------------------------------------------------------------

CONE_BOUND = {
    'DEFAULT_SEED': config.DEFAULT_SEED,
    'DEFAULT_THREADS': config.DEFAULT_THREADS,
    'VERIFY_SAMPLES': config.VERIFY_SAMPLES,
    'QUAD_TOL': config.QUAD_TOL,
    'TOOL_VERSION': config.TOOL_VERSION,
}
