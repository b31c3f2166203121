"""
Django settings for the dgldpc project.

The project has no web surface: Django provides settings, logging and the
management-command CLI, and Django REST framework provides the config
serializers and the JSON renderer for reports.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

from pathlib import Path
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Not used for signing anything; Django refuses to start without one.
SECRET_KEY = os.getenv('DJANGO_SECRET_KEY', 'dgldpc-local-analysis-key')

DEBUG = os.getenv('DJANGO_DEBUG', 'False') == 'True'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'gldpc',
]

# Analyses are pure computations; nothing is persisted.
DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/4.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Django REST Framework settings
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'DEFAULT_PARSER_CLASSES': [
        'rest_framework.parsers.JSONParser',
    ],
    'COERCE_DECIMAL_TO_STRING': True,
    'UNICODE_JSON': True,
    'COMPACT_JSON': False,
}


# Ensemble analysis settings
DGLDPC = {
    # Largest component-code dimension enumerated exhaustively (2^k words).
    'ENUMERATION_GUARD': int(os.getenv('DGLDPC_ENUMERATION_GUARD', 24)),
    # Largest ell * degree handled by the exact power oracle.
    'POWER_DEGREE_LIMIT': int(os.getenv('DGLDPC_POWER_DEGREE_LIMIT', 100000)),
    # All-permutations brute force is limited to E! with E <= this.
    'BRUTE_FORCE_MAX_EDGES': int(os.getenv('DGLDPC_BRUTE_FORCE_MAX_EDGES', 8)),
    # Monte Carlo: information-word length and candidate-word limits.
    'SAMPLE_MAX_INFO_BITS': int(os.getenv('DGLDPC_SAMPLE_MAX_INFO_BITS', 30)),
    'SAMPLE_MAX_CANDIDATES': int(os.getenv('DGLDPC_SAMPLE_MAX_CANDIDATES', 1 << 22)),
    'SAMPLE_WORKERS': int(os.getenv('DGLDPC_SAMPLE_WORKERS', 1)),
    # Exact expected spectrum: cells of the truncated bivariate product;
    # past the exact limit the spectrum is evaluated in log domain.
    'EXACT_SPECTRUM_MAX_CELLS': int(os.getenv('DGLDPC_EXACT_SPECTRUM_MAX_CELLS', 4000000)),
    'LOG_SPECTRUM_MAX_CELLS': int(os.getenv('DGLDPC_LOG_SPECTRUM_MAX_CELLS', 16000000)),
    'SPECTRUM_WORKERS': int(os.getenv('DGLDPC_SPECTRUM_WORKERS', 1)),
}


# Logging
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'gldpc': {
            'handlers': ['console'],
            'level': os.getenv('DGLDPC_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
    },
}
