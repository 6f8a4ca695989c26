# Test collection wiring: run the Django test suite under pytest
# (equivalent to `cd backend && python manage.py test spectra`).
import os
import sys
from pathlib import Path

import django

sys.path.insert(0, str(Path(__file__).resolve().parent / "backend"))
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings")
django.setup()
