# stdlib
import os
import logging
import configparser

# Local
from summstat import ENV
from summstat.core.errors import ConfigurationError

LOG = logging.getLogger(__name__)

DEFAULT_MASTER_SEED = 2014
DEFAULT_REPS = 1000
DEFAULT_THREADS = 1
DEFAULT_QUAD_TOLERANCE = 1e-8
DEFAULT_BLOM_ALPHA = 0.375


class SummStatConfig:
    """
    Loads summstat configs from a file. Every key is optional.

    Expected structure:

        [DEFAULT]
        master_seed = 2014          (simulation seed when --seed is absent)
        reps = 1000                 (replications per simulation cell)
        threads = 1                 (worker threads; SUMMSTAT_THREADS overrides)
        quad_tolerance = 1e-8       (absolute tolerance per order-statistic integral)
        blom_alpha = 0.375
        log_level = INFO

        [<env>]
        ...overrides for SUMMSTAT_ENV=<env>

    """
    def __init__(self, config_filename: str, env: str, threads_override: str = None):
        self.config_filename = config_filename
        self.env = env

        configs = configparser.ConfigParser()
        found = configs.read(config_filename)
        if len(found) == 0:
            LOG.debug(f"No config file at {config_filename}. Using defaults.")
        default_configs = configs["DEFAULT"]
        if env != "DEFAULT":
            if env not in configs:
                raise ConfigurationError(
                    f"Environment {env} not found in config file ({self.config_filename})."
                )
            default_configs.update(configs[env])
        self.combined_configs = default_configs

        self.master_seed = self._parse(int, "master_seed", DEFAULT_MASTER_SEED)
        self.reps = self._parse(int, "reps", DEFAULT_REPS)
        if self.reps < 1:
            raise ConfigurationError(f'reps must be at least 1 in {config_filename}.')

        self.quad_tolerance = self._parse(float, "quad_tolerance", DEFAULT_QUAD_TOLERANCE)
        if not self.quad_tolerance > 0:
            raise ConfigurationError(f'quad_tolerance must be positive in {config_filename}.')

        self.blom_alpha = self._parse(float, "blom_alpha", DEFAULT_BLOM_ALPHA)
        if not 0 <= self.blom_alpha < 0.5:
            raise ConfigurationError(f'blom_alpha must lie in [0, 0.5) in {config_filename}.')

        self.log_level = default_configs.get("log_level", "INFO").strip().upper()
        if not isinstance(logging.getLevelName(self.log_level), int):
            raise ConfigurationError(f'Unknown log_level {self.log_level!r} in {config_filename}.')

        # Parse worker threads; the environment variable wins over the file
        if threads_override is not None and threads_override.strip() != "":
            try:
                self.threads = int(threads_override)
            except ValueError:
                raise ConfigurationError(f"SUMMSTAT_THREADS must be an integer, got {threads_override!r}")
        else:
            self.threads = self._parse(int, "threads", DEFAULT_THREADS)
        if self.threads < 1:
            raise ConfigurationError(f"Worker thread count must be at least 1, got {self.threads}")

        # Set flag
        self.initialized = True

    def _parse(self, cast, name, default):
        raw = self.combined_configs.get(name, None)
        if raw is None or raw.strip() == "":
            return default
        try:
            return cast(raw)
        except ValueError:
            raise ConfigurationError(f"{name}={raw!r} in {self.config_filename} is not a valid {cast.__name__}")

    def __getattr__(self, name):
        if name not in self.combined_configs:
            raise ValueError(f"{name} not found in config file ")
        return self.combined_configs.get(name, None)


config_filename = os.environ.get('SUMMSTAT_CONFIG', '.summstatconfig')
SS_CONFIG = SummStatConfig(config_filename, ENV, os.environ.get('SUMMSTAT_THREADS'))
