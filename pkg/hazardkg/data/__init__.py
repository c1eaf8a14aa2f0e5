"""Shipped default lexicons, keyword files, rules and sample data."""
import os

DATA_DIR = os.path.abspath(os.path.dirname(__file__))
SAMPLES_DIR = os.path.join(DATA_DIR, 'samples')


def data_path(name):
    """Absolute path of a shipped data file."""
    return os.path.join(DATA_DIR, name)


def sample_path(name):
    """Absolute path of a shipped sample file."""
    return os.path.join(SAMPLES_DIR, name)
