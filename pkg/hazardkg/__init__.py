"""
Hazard knowledge pipeline factory.
Turns substation hidden-danger tables into records, a word segmentation
model, a sharded full-text index, a knowledge graph and hazard statistics.

The Pipeline object plays the role an application object plays in a web
app: it carries resolved configuration and the package logger, and every
subcommand receives it through the click context.
"""

import os
import logging
from logging.handlers import RotatingFileHandler

import click

__version__ = '1.0.0'

LOG_FORMAT = '%(asctime)s %(levelname)s: %(message)s [in %(pathname)s:%(lineno)d]'
VERBOSE_TAG = 'verbose'


class Pipeline:
    """Resolved configuration plus logger for one CLI invocation."""

    def __init__(self, settings, config_class, verbose=False):
        self.settings = settings
        self.config_class = config_class
        self.verbose = verbose
        self.logger = logging.getLogger('hazardkg')

    @property
    def testing(self):
        return self.settings.testing

    def __repr__(self):
        return f'<Pipeline {self.config_class.__name__}>'


def create_pipeline(config_name=None, config_file=None, verbose=False, **overrides):
    """
    Pipeline factory function.

    Args:
        config_name (str): Configuration name ('development', 'testing', 'production')
        config_file (str): Optional dotenv-style file overriding configuration values
        verbose (bool): Log DEBUG messages to stderr
        **overrides: Explicit settings that win over every other source

    Returns:
        Pipeline: Configured pipeline instance
    """
    from config import config, PipelineConfig

    # Determine configuration
    if config_name is None:
        config_name = os.environ.get('HAZARDKG_ENV', 'development')
    config_class = config.get(config_name, config['default'])

    settings = PipelineConfig.from_object(config_class)
    if config_file:
        settings = settings.with_file(config_file)
    settings = settings.override(**overrides).validate()

    pipeline = Pipeline(settings, config_class, verbose=verbose)

    # Initialize configuration
    config_class.init_pipeline(pipeline)

    # Setup Logging
    setup_logging(pipeline)

    return pipeline


def attach_handler(logger, handler, tag):
    """
    Add ``handler`` unless a handler with the same tag is already attached.

    Pipelines built repeatedly in one process share the 'hazardkg' logger,
    so each kind of handler is added at most once.

    Returns:
        bool: True when the handler was added
    """
    if any(getattr(h, '_hazardkg_tag', None) == tag for h in logger.handlers):
        handler.close()
        return False
    handler._hazardkg_tag = tag
    logger.addHandler(handler)
    return True


def setup_logging(pipeline):
    """Setup pipeline logging for monitoring and debugging."""
    logger = pipeline.logger
    level = getattr(logging, str(pipeline.settings.log_level).upper(), logging.INFO)
    logger.setLevel(logging.DEBUG if pipeline.verbose else level)

    if pipeline.verbose:
        stream_handler = logging.StreamHandler()
        stream_handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
        stream_handler.setLevel(logging.DEBUG)
        attach_handler(logger, stream_handler, VERBOSE_TAG)

    log_file = pipeline.settings.log_file
    if log_file and not pipeline.testing:
        # Create logs directory if it doesn't exist
        log_dir = os.path.dirname(log_file)
        if log_dir and not os.path.exists(log_dir):
            os.makedirs(log_dir)

        # Setup rotating file handler
        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=10240000,  # 10MB
            backupCount=10
        )
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        file_handler.setLevel(level)
        if attach_handler(logger, file_handler, f'file:{os.path.abspath(log_file)}'):
            logger.info('Hazard knowledge pipeline startup')


# Injects the Pipeline built by the top-level command group
pass_pipeline = click.make_pass_decorator(Pipeline)
