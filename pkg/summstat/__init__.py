# stdlib
import os
import logging
import logging.config

# Local
from .utils import setup_utils

# Configure root logger
ROOT_LOGGER_NAME = 'summstat'
LOG_FORMAT = (
    "%(asctime)s.%(msecs)03d [%(levelname)s] %(filename)s:%(lineno)d: %(message)s"
)
SIMULATION_LOG_FORMAT = (
    "%(asctime)s.%(msecs)03d [%(levelname)s] SS_SIMULATION: %(message)s"
)

# Both handlers write to stderr; stdout is reserved for machine-readable output.
log_config = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'default': {
            'format': LOG_FORMAT
        },
        'simulation': {
            'format': SIMULATION_LOG_FORMAT
        }
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'default',
            'stream': 'ext://sys.stderr',
        },
        'simulation': {
            'class': 'logging.StreamHandler',
            'formatter': 'simulation',
            'stream': 'ext://sys.stderr',
        },
    },
    'loggers': {
        ROOT_LOGGER_NAME: {
            'level': 'INFO',
            'handlers': ['console'],
            'propagate': False
        },
        'SS_SIMULATION': {
            'level': 'INFO',
            'handlers': ['simulation'],
            'propagate': False
        },
    },
}

logging.config.dictConfig(log_config)
ROOT_LOG = logging.getLogger(ROOT_LOGGER_NAME)
SIMULATION_LOG = logging.getLogger('SS_SIMULATION')

ENV = os.environ.get('SUMMSTAT_ENV', 'DEFAULT')

# Setup util functions and such
setup_utils()
