#!/usr/bin/env python
"""
cupcap command line: generators, analyzers and verifiers for cups, caps and
convex position in point sets with bounded collinearity.

    python manage.py gen_x 3 5 5 out.pts
    python manage.py verify out.pts --claim x:3,5,5
"""
import os
import sys


def main():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'cupcap.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
