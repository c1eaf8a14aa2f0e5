"""
Configuration module for the hazard knowledge pipeline.
Implements environment-based configuration.

This module provides different configuration classes for different environments:
- DevelopmentConfig: For local work on sample data
- TestingConfig: For running tests
- ProductionConfig: For scheduled ingest/index runs

PipelineConfig is the resolved view a command works with: class defaults,
then an optional ``--config`` file, then explicit command-line options.
"""

import os
from dataclasses import dataclass, fields, replace
from dotenv import load_dotenv, dotenv_values

from hazardkg.errors import ConfigError

# Load environment variables from .env file
basedir = os.path.abspath(os.path.dirname(__file__))
load_dotenv(os.path.join(basedir, '.env'))


class Config:
    """Base configuration class with common settings."""

    # Pipeline Artifacts
    RECORDS_PATH = os.environ.get('RECORDS_PATH') or 'records.jsonl'
    MODEL_PATH = os.environ.get('MODEL_PATH') or 'model.bin'
    INDEX_DIR = os.environ.get('INDEX_DIR') or 'idx'
    GRAPH_PATH = os.environ.get('GRAPH_PATH') or 'graph.json'
    HEADER_LEXICON_PATH = os.environ.get('HEADER_LEXICON_PATH') or None

    # Search Engine
    NUM_SHARDS = int(os.environ.get('NUM_SHARDS', 4))
    NUM_NODES = int(os.environ.get('NUM_NODES', 0))  # 0 means one node per shard
    SEGMENT_SEAL_THRESHOLD = int(os.environ.get('SEGMENT_SEAL_THRESHOLD', 1000))

    # Segmenter
    SMOOTHING_EPSILON = float(os.environ.get('SMOOTHING_EPSILON', 1e-6))

    # Analytics
    SEASONAL_FACTOR = float(os.environ.get('SEASONAL_FACTOR', 1.5))

    # Logging Configuration
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO')
    LOG_FILE = os.environ.get('LOG_FILE') or None

    TESTING = False

    @staticmethod
    def init_pipeline(pipeline):
        """Initialize pipeline with configuration-specific settings."""
        pass


class DevelopmentConfig(Config):
    """Development environment configuration."""

    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'DEBUG')


class TestingConfig(Config):
    """Testing environment configuration."""

    TESTING = True
    LOG_FILE = None
    NUM_SHARDS = 4
    SEGMENT_SEAL_THRESHOLD = 1000


class ProductionConfig(Config):
    """Production environment configuration."""

    @classmethod
    def init_pipeline(cls, pipeline):
        """Initialize production-specific settings."""
        Config.init_pipeline(pipeline)

        # Log to stderr in production
        import logging
        from logging import StreamHandler
        from hazardkg import attach_handler
        stream_handler = StreamHandler()
        stream_handler.setLevel(logging.INFO)
        attach_handler(pipeline.logger, stream_handler, 'production')


# Configuration dictionary for easy access
config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
    'default': DevelopmentConfig
}


@dataclass(frozen=True)
class PipelineConfig:
    """Resolved settings shared by every subcommand."""

    records_path: str = 'records.jsonl'
    model_path: str = 'model.bin'
    index_dir: str = 'idx'
    graph_path: str = 'graph.json'
    header_lexicon_path: str = None
    num_shards: int = 4
    num_nodes: int = 0
    segment_seal_threshold: int = 1000
    smoothing_epsilon: float = 1e-6
    seasonal_factor: float = 1.5
    log_level: str = 'INFO'
    log_file: str = None
    testing: bool = False

    @classmethod
    def from_object(cls, config_class):
        """Build settings from one of the configuration classes."""
        values = {}
        for f in fields(cls):
            key = f.name.upper()
            if hasattr(config_class, key):
                values[f.name] = getattr(config_class, key)
        return cls(**values)

    def with_file(self, path):
        """Override settings from a dotenv-style file keyed by upper-case field names."""
        if not os.path.exists(path):
            raise ConfigError(f'config file not found: {path}')
        raw = dotenv_values(path)
        known = {f.name.upper(): f for f in fields(self)}
        updates = {}
        for key, value in raw.items():
            f = known.get(key.upper())
            if f is None:
                raise ConfigError(f'unknown config key {key!r} in {path}')
            updates[f.name] = _coerce(f.type, value, key)
        return replace(self, **updates)

    def override(self, **options):
        """Return a copy with every non-None option applied."""
        updates = {k: v for k, v in options.items() if v is not None}
        return replace(self, **updates) if updates else self

    def validate(self):
        """Check numeric ranges; raises ConfigError."""
        if self.num_shards < 1:
            raise ConfigError(f'shard count must be >= 1, got {self.num_shards}')
        if self.num_nodes < 0:
            raise ConfigError(f'node count must be >= 0, got {self.num_nodes}')
        if self.segment_seal_threshold < 1:
            raise ConfigError('segment seal threshold must be >= 1')
        if not self.smoothing_epsilon > 0:
            raise ConfigError(f'smoothing epsilon must be > 0, got {self.smoothing_epsilon}')
        if not self.seasonal_factor > 0:
            raise ConfigError(f'seasonal factor must be > 0, got {self.seasonal_factor}')
        return self


def _coerce(type_name, value, key):
    kind = type_name if isinstance(type_name, str) else getattr(type_name, '__name__', 'str')
    if value is None or value == '':
        return None
    try:
        if kind == 'int':
            return int(value)
        if kind == 'float':
            return float(value)
        if kind == 'bool':
            return value.strip().lower() in ('true', 'on', '1', 'yes')
    except ValueError:
        raise ConfigError(f'invalid value {value!r} for {key}')
    return value
