import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv

from means_toolkit.errors import ConfigurationError

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9
DEFAULT_ORACLE_DIGITS = 50
MIN_ORACLE_DIGITS = 30
LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


@dataclass(frozen=True)
class Settings:
    workers: int = 1
    oracle_digits: int = DEFAULT_ORACLE_DIGITS
    tolerance: float = DEFAULT_TOLERANCE
    log_level: str = 'WARNING'
    seed: int = 42


def _env(name, cast, default):
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        return cast(raw.strip())
    except ValueError as e:
        raise ConfigurationError(f'{name}={raw!r} is not a valid {cast.__name__}') from e


def load_settings():
    """Read settings from the environment (and a .env file if present)"""
    load_dotenv()

    settings = Settings(
        workers=_env('MEANS_WORKERS', int, 1),
        oracle_digits=_env('MEANS_ORACLE_DIGITS', int, DEFAULT_ORACLE_DIGITS),
        tolerance=_env('MEANS_TOLERANCE', float, DEFAULT_TOLERANCE),
        log_level=_env('MEANS_LOG_LEVEL', str, 'WARNING').upper(),
        seed=_env('MEANS_SEED', int, 42),
    )

    if settings.workers < 1:
        raise ConfigurationError('MEANS_WORKERS must be at least 1')
    if settings.oracle_digits < MIN_ORACLE_DIGITS:
        raise ConfigurationError(f'MEANS_ORACLE_DIGITS must be at least {MIN_ORACLE_DIGITS}')
    if not settings.tolerance > 0:
        raise ConfigurationError('MEANS_TOLERANCE must be positive')
    if settings.log_level not in LOG_LEVELS:
        raise ConfigurationError(f'unknown MEANS_LOG_LEVEL {settings.log_level!r}')

    logger.debug('loaded settings %s', settings)
    return settings
