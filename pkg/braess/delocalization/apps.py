from django.apps import AppConfig


class DelocalizationConfig(AppConfig):
    name = 'delocalization'
