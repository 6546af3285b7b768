from django.apps import AppConfig


class ParadoxConfig(AppConfig):
    name = 'paradox'
