"""Configuration package initialization."""
from .config import config, Config, DevelopmentConfig, TestingConfig, ProductionConfig, PipelineConfig

__all__ = ['config', 'Config', 'DevelopmentConfig', 'TestingConfig', 'ProductionConfig', 'PipelineConfig']
