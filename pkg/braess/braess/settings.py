"""
Django settings for braess project.

Проект не обслуживает HTTP-запросы и не использует базу данных:
Django даёт ему настройки, логирование и management-команды.
"""

import os

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

SECRET_KEY = os.getenv('BRAESS_SECRET_KEY', 'braess-local-experiments')

# Application definition

INSTALLED_APPS = [
    'core.apps.CoreConfig',
    'graphs.apps.GraphsConfig',
    'spectral.apps.SpectralConfig',
    'paradox.apps.ParadoxConfig',
    'typicality.apps.TypicalityConfig',
    'delocalization.apps.DelocalizationConfig',
]

# Результаты пишутся только в плоские файлы
DATABASES = {}

LANGUAGE_CODE = 'ru'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Логирование

LOG_LEVEL = os.getenv('BRAESS_LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        }
        for app in (
            'core', 'graphs', 'spectral',
            'paradox', 'typicality', 'delocalization',
        )
    },
}


# Параллелизм экспериментов
BRAESS_JOBS = int(os.getenv('BRAESS_JOBS', os.cpu_count() or 1))

# Версия схемы выходных файлов
SCHEMA_VERSION = 1

# Численные допуски, общие для всех модулей
RESIDUAL_TOLERANCE = 1e-9
ORTHONORMALITY_TOLERANCE = 1e-10
DEGENERACY_GAP = 1e-8
SIGN_TIE_TOLERANCE = 1e-12
UNIT_NORM_TOLERANCE = 1e-8

# Строгие неравенства лемм и классификация изменения щели
PREDICATE_MARGIN = 1e-12
SUFFICIENT_MARGIN = 1e-15
ZERO_TOLERANCE = 1e-10
MONOTONE_TOLERANCE = 1e-10

# Типичность: явные константы вместо (1 - o(1)) и «для больших n»
EV1_AHAT_TOLERANCE = 1e-9
EV2_LOWER_SLACK = 0.5
NORMALIZATION_CONSTANT = 1.0
NORMALIZATION_PROOF_CONSTANT = 6.0

# Делокализация
HISTOGRAM_BINS = 64
HISTOGRAM_RANGE = (1e-6, 1e2)
LO_REFERENCE_CONSTANT = 2.0
RV_REFERENCE_CONSTANT = 10.0
EXACT_SUPPORT_LIMIT = 10 ** 7
EXACT_WEIGHTS_LIMIT = 10 ** 4
MONTE_CARLO_CHUNK = 100_000
RV_CANDIDATE_CENTERS = 512
