"""
Test Configuration and Fixtures.
Provides pipeline configuration, trained models and record factories shared
by the unit, integration and performance tests.
"""

from datetime import date

import factory
import factory.random
import numpy as np
import pytest
from click.testing import CliRunner

from hazardkg import create_pipeline
from hazardkg.data import sample_path
from hazardkg.models import HazardRecord, HmmModel, SeverityLevel
from hazardkg.models.hmm import ALLOWED_START, ALLOWED_TRANSITIONS
from hazardkg.segmenter import corpus_from_sentences, read_gold_corpus, save_model, train_hmm


# Pipeline Fixtures
@pytest.fixture
def pipeline():
    """Create a pipeline with the testing configuration."""
    return create_pipeline('testing')


@pytest.fixture
def settings(pipeline):
    """Resolved testing settings."""
    return pipeline.settings


@pytest.fixture
def runner():
    """Create a click CLI runner."""
    return CliRunner()


# Segmenter Fixtures
@pytest.fixture(scope='session')
def hmm_model():
    """Model trained on the shipped mini corpus."""
    corpus, lexicon = read_gold_corpus(sample_path('mini_corpus.txt'))
    return train_hmm(corpus, lexicon=lexicon)


@pytest.fixture(scope='session')
def char_model():
    """Model trained on single-character words only; it never joins characters."""
    sentences = [list('主变异常'), list('主变渗油'), list('主变容量'), list('主变停运'), list('断路器跳闸')]
    corpus, lexicon = corpus_from_sentences(sentences)
    return train_hmm(corpus, lexicon=lexicon)


@pytest.fixture
def model_file(tmp_path, hmm_model):
    """The mini-corpus model saved to a temporary file."""
    path = tmp_path / 'model.bin'
    save_model(hmm_model, str(path))
    return str(path)


def _log_normalize(weights, allowed):
    weights = np.where(allowed, weights, 0.0)
    with np.errstate(divide='ignore'):
        return np.where(allowed, np.log(weights / weights.sum(axis=-1, keepdims=True)), -np.inf)


@pytest.fixture
def random_hmm():
    """Build random well-formed models for oracle tests."""
    def _create(rng, vocab='abc'):
        pi = _log_normalize(rng.uniform(0.05, 1.0, 4), ALLOWED_START)
        trans = _log_normalize(rng.uniform(0.05, 1.0, (4, 4)), ALLOWED_TRANSITIONS)
        emit = _log_normalize(rng.uniform(0.05, 1.0, (4, len(vocab) + 1)), np.ones((4, len(vocab) + 1), bool))
        return HmmModel(pi, trans, emit, list(vocab), 1e-6).validate()
    return _create


# Record Fixtures
class HazardRecordFactory(factory.Factory):
    """Factory for creating hazard records."""

    class Meta:
        model = HazardRecord

    id = factory.Sequence(lambda n: f'rec-{n:04d}')
    hazard_content = factory.Faker('sentence', nb_words=8)
    inspect_time = factory.Faker('date_between_dates', date_start=date(2023, 3, 1), date_end=date(2023, 7, 31))
    location = factory.Faker('city')
    equipment_name = factory.Iterator(['No.1 main transformer', 'switch breaker', 'drainage line of bus'])
    detail_category = factory.Iterator(['power safety hazards', 'equipment and facilities'])
    violation_info = ''
    severity_level = factory.Iterator(list(SeverityLevel))
    control_measures = factory.Faker('sentence', nb_words=5)
    voltage_class = factory.Iterator(['220kV', '66kV', None])
    extra = factory.Dict({})


@pytest.fixture(autouse=True)
def reseed_factories():
    """Make factory and Faker output repeatable per test."""
    factory.random.reseed_random('hazardkg')
    HazardRecordFactory.reset_sequence()


@pytest.fixture
def record_factory():
    """Hazard record factory class."""
    return HazardRecordFactory


@pytest.fixture
def sample_record():
    """Fully populated transformer oil-leakage record."""
    return HazardRecord(
        id='sample-1',
        inspect_time=date(2023, 3, 14),
        location='220kV Wukeshu substation',
        equipment_name='No.2 main transformer',
        hazard_content='oil leakage of main transformer',
        detail_category='power safety hazards',
        violation_info='Operation Rules for Overhead Transmission Lines',
        severity_level=SeverityLevel.II,
        control_measures='replace the gasket and strengthen inspection',
        voltage_class='220kV',
        extra={},
    )


@pytest.fixture
def main_transformer_records():
    """Four similar main transformer reports."""
    contents = ['主变异常', '主变渗油', '主变容量不足', '主变停运']
    return [
        HazardRecord(id=f'mt-{i}', hazard_content=text, equipment_name='', inspect_time=date(2023, 3, i + 1))
        for i, text in enumerate(contents)
    ]


@pytest.fixture
def sample_table_path():
    """Shipped three-record investigation table."""
    return sample_path('sample_table.txt')


@pytest.fixture
def index_root(tmp_path):
    """Fresh index directory path (not yet created)."""
    return str(tmp_path / 'idx')
