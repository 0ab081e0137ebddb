"""
Root URL configuration for cupcap.

Only the admin is served; it browses the run ledger.
"""

from django.contrib import admin
from django.urls import path

urlpatterns = [
    path('admin/', admin.site.urls),
]
