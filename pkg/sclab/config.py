"""
sclab Configuration Module

Environment-specific settings classes. Values come from SC_LAB_* environment
variables (or a .env file) through pydantic-settings, so the CLI, the Flask
app and the Celery worker read one source of truth.
"""

import os
from functools import lru_cache

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class BaseConfig(BaseSettings):
    """Base configuration with settings common to all environments."""

    model_config = SettingsConfigDict(
        env_prefix='SC_LAB_',
        env_file='.env',
        env_file_encoding='utf-8',
        extra='ignore',
    )

    # Exploration limits
    budget: int = Field(default=2 ** 22, description='Maximum states of D before minimization')
    enumeration_cell_limit: int = Field(default=25, description='Largest n*p for exhaustive tableau enumeration')

    # Logging
    log_level: str = 'INFO'

    # Celery settings
    celery_broker_url: str = 'redis://localhost:6379/0'
    celery_result_backend: str = 'redis://localhost:6379/0'
    celery_always_eager: bool = False

    debug: bool = False
    testing: bool = False

    @field_validator('budget', 'enumeration_cell_limit')
    @classmethod
    def must_be_positive(cls, v: int) -> int:
        if v <= 0:
            raise ValueError('must be positive')
        return v

    @field_validator('log_level')
    @classmethod
    def normalize_log_level(cls, v: str) -> str:
        return v.strip().upper()

    def flask_mapping(self) -> dict:
        """Upper-cased keys for app.config.from_mapping."""
        return {key.upper(): value for key, value in self.model_dump().items()}


class DevelopmentConfig(BaseConfig):
    """Development environment configuration."""

    debug: bool = True


class TestingConfig(BaseConfig):
    """Testing environment configuration: Celery tasks run in-process."""

    testing: bool = True
    celery_always_eager: bool = True
    celery_broker_url: str = 'memory://'
    celery_result_backend: str = 'cache+memory://'


class ProductionConfig(BaseConfig):
    """Production environment configuration."""

    debug: bool = False


_CONFIGS = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
}


def get_config(name: str = None) -> BaseConfig:
    """
    Instantiate the settings for an environment.

    Args:
        name: 'development', 'testing' or 'production'; defaults to SC_LAB_ENV
    """
    name = (name or os.getenv('SC_LAB_ENV', 'development')).lower()
    try:
        return _CONFIGS[name]()
    except KeyError:
        raise ValueError(f'Unknown environment {name!r}; expected one of {sorted(_CONFIGS)}') from None


@lru_cache(maxsize=None)
def get_settings(name: str = None) -> BaseConfig:
    """Cached settings for long-lived processes (worker, WSGI app)."""
    return get_config(name)
