"""
Django settings for the gelfand-spectra project.

Only what the command and the JSON router need: no database, no admin,
no sessions. Numerical defaults are read from the environment (``.env`` is
loaded first) into the ``GELFAND`` dict consumed by ``spectra.services``.
"""

from dotenv import load_dotenv

load_dotenv()
import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv("DJANGO_SECRET_KEY", "django-insecure-gelfand-spectra-local-only")

DEBUG = os.getenv("DJANGO_DEBUG", "1") == "1"

LOG_LEVEL = os.getenv("GELFAND_LOG_LEVEL", "INFO").upper()
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "%(levelname)s %(name)s: %(message)s",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "plain",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": LOG_LEVEL,
    },
}

ALLOWED_HOSTS = ["localhost", "127.0.0.1", "testserver"]


# Application definition

INSTALLED_APPS = [
    "spectra",
]

MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.middleware.common.CommonMiddleware",
]

ROOT_URLCONF = "config.urls"

WSGI_APPLICATION = "config.wsgi.application"

# Everything is computed on demand; nothing is persisted.
DATABASES = {}

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True


# Numerical defaults (overridable per run from the command line)
GELFAND = {
    "ORACLE_N": int(os.getenv("GELFAND_ORACLE_N", "4000")),
    "ROOT_ABS_TOL": float(os.getenv("GELFAND_ROOT_ABS_TOL", "1e-13")),
    "QUAD_TOL": float(os.getenv("GELFAND_QUAD_TOL", "1e-10")),
    "VERIFY_TOL": float(os.getenv("GELFAND_VERIFY_TOL", "1e-5")),
}
