#!/usr/bin/env python
"""Command-line entry point: ``python manage.py gelfand ...`` and ``python manage.py test spectra``."""
import os
import sys


def main(argv=None):
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings")
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Django is required to run the gelfand commands; install the project "
            "dependencies (pip install -e .) and retry."
        ) from exc
    execute_from_command_line(argv if argv is not None else sys.argv)


if __name__ == "__main__":
    main()
