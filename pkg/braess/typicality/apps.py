from django.apps import AppConfig


class TypicalityConfig(AppConfig):
    name = 'typicality'
