from django.apps import AppConfig


class GldpcConfig(AppConfig):
    name = 'gldpc'
    verbose_name = 'D-GLDPC ensemble weight spectrum analysis'
