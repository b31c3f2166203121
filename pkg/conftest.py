import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'dgldpc.settings')
django.setup()
