import os
import sys
from fractions import Fraction
from pathlib import Path

from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / '.env')

SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'django-insecure-cupcap-local-only')

DEBUG = os.environ.get('DJANGO_DEBUG', '1') == '1'

ALLOWED_HOSTS = ['localhost', '127.0.0.1']

INSTALLED_APPS = [
    'django.contrib.admin',
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.sessions',
    'django.contrib.messages',
    'django.contrib.staticfiles',
    # Project apps
    'core',
    'geometry',
    'extremal',
    'constructions',
    'relative',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.contrib.sessions.middleware.SessionMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.csrf.CsrfViewMiddleware',
    'django.contrib.auth.middleware.AuthenticationMiddleware',
    'django.contrib.messages.middleware.MessageMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'cupcap.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.debug',
                'django.template.context_processors.request',
                'django.contrib.auth.context_processors.auth',
                'django.contrib.messages.context_processors.messages',
            ],
        },
    },
]


# The run ledger lives in SQLite; point CUPCAP_DB_PATH elsewhere to share it.
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.environ.get('CUPCAP_DB_PATH', BASE_DIR / 'db.sqlite3'),
    }
}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True

STATIC_URL = '/static/'

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# ============ Logging ============
LOG_LEVEL = os.environ.get('CUPCAP_LOG_LEVEL', 'INFO')

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
        app: {'handlers': ['console'], 'level': LOG_LEVEL, 'propagate': False}
        for app in ('core', 'geometry', 'extremal', 'constructions', 'relative')
    },
}

# ============ Run configuration defaults ============
# Overridable per run with a KEY=value file (--config) and command flags.
CUPCAP = {
    'BOUNDS_EPSILON': Fraction(1, 10),
    'BOUNDS_C': Fraction(100),  # 10 / epsilon
    'BOUNDS_C1': Fraction(1),
    'BOUNDS_BIG_C': Fraction(1),
    'TRANSVERSAL_SAMPLES': 10_000,
    'FAT_CAP_BUDGET': 8,
    'FAT_CAP_SAMPLE_SIZE': 10,
    'FAT_CAP_PROBE_SIZE': 256,
    'ORACLE_THRESHOLD': 12,
    'SEED': 0,
}

# ============ Test Overrides ============
if 'test' in sys.argv:
    DATABASES['default'] = {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': ':memory:',
    }
    LOGGING['loggers'] = {
        app: {'handlers': ['console'], 'level': 'WARNING', 'propagate': False}
        for app in ('core', 'geometry', 'extremal', 'constructions', 'relative')
    }
