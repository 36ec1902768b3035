import logging
import os
from pathlib import Path

import environ

BASE_DIR = Path(__file__).resolve().parent.parent

logger = logging.getLogger(__name__)

# Initialize environment manager
env = environ.Env()

# Try to find .env file in multiple possible locations
env_path = os.path.join(BASE_DIR, '.env')
if not os.path.exists(env_path):
    env_path = os.path.join(BASE_DIR.parent, '.env')

# Read the .env file from the found location; the environment alone is enough
if os.path.exists(env_path):
    environ.Env.read_env(env_path)
else:
    logger.debug(".env file not found, using process environment only")

# DJANGO CORE SETTINGS
SECRET_KEY = env('SECRET_KEY', default='unsafe-secret-key')
DEBUG = env.bool('DEBUG', default=False)

# LOGGING
LOG_LEVEL = env('LOG_LEVEL', default='INFO')
LOG_FORMAT = env('LOG_FORMAT', default='json')

# NUMERICS
DEFAULT_SEED = env.int('CONE_BOUND_SEED', default=20130701)
DEFAULT_THREADS = env.int('CONE_BOUND_THREADS', default=4)
VERIFY_SAMPLES = env.int('CONE_BOUND_VERIFY_SAMPLES', default=200_000)
QUAD_TOL = env.float('CONE_BOUND_QUAD_TOL', default=1e-10)

TOOL_VERSION = '1.0.0'
