"""
URL configuration for the gelfand-spectra project.

The JSON router lives in ``spectra.api``; everything is mounted under ``api/``.
"""

from django.urls import path
from django.shortcuts import redirect
from ninja import NinjaAPI
from spectra import api as api_module

api = NinjaAPI(title="Gel'fand spectra API", version="0.1.0")

api.add_router("", api_module.router)

urlpatterns = [
    path("api/", api.urls),
    path("", lambda request: redirect("api/docs")),
]
