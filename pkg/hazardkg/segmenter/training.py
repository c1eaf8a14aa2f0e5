"""
HMM Training.
Additive-smoothed maximum-likelihood estimation of (pi, trans, emit) from a
gold-segmented corpus, plus the model file format.
"""

import json
import logging
import os
from collections import Counter

import numpy as np

from hazardkg.errors import InvalidInputError, ModelFormatError, TrainingError
from hazardkg.models.hmm import (
    ALLOWED_START, ALLOWED_TRANSITIONS, NUM_TAGS, HmmModel, Tag, TaggedCorpus
)
from .tagging import words_to_tags

logger = logging.getLogger(__name__)

MODEL_FORMAT_VERSION = 1
DEFAULT_EPSILON = 1e-6


def read_gold_corpus(path):
    """
    Read a gold corpus: one sentence per line, words separated by spaces.

    Returns:
        tuple: (TaggedCorpus, Counter of words)
    """
    corpus = TaggedCorpus()
    lexicon = Counter()
    with open(path, encoding='utf-8') as f:
        for line in f:
            words = line.split()
            if not words:
                continue
            corpus.add(*words_to_tags(words))
            lexicon.update(words)
    return corpus, lexicon


def corpus_from_sentences(sentences):
    """Build a TaggedCorpus and word counts from lists of words."""
    corpus = TaggedCorpus()
    lexicon = Counter()
    for words in sentences:
        if words:
            corpus.add(*words_to_tags(words))
            lexicon.update(words)
    return corpus, lexicon


def _smoothed_log(counts, allowed, epsilon):
    """Log of (count + eps) / (total + k * eps) over allowed cells; -inf elsewhere."""
    counts = np.where(allowed, counts + epsilon, 0.0)
    totals = counts.sum(axis=-1, keepdims=True)
    with np.errstate(divide='ignore'):
        return np.where(allowed, np.log(counts / totals), -np.inf)


def train_hmm(corpus, epsilon=DEFAULT_EPSILON, lexicon=None):
    """
    Estimate HMM parameters from a tagged corpus.

    Args:
        corpus (TaggedCorpus): Gold (characters, tags) sentences
        epsilon (float): Additive smoothing constant, > 0
        lexicon (dict): Optional word counts stored with the model

    Returns:
        HmmModel: Validated model
    """
    if not epsilon > 0:
        raise InvalidInputError(f'epsilon must be > 0, got {epsilon}')
    sentences = [(chars, tags) for chars, tags in corpus.sentences if chars]
    if not sentences:
        raise TrainingError('training corpus has no non-empty sentence')

    vocab = sorted({c for chars, _ in sentences for c in chars})
    char_index = {c: i for i, c in enumerate(vocab)}

    start_counts = np.zeros(NUM_TAGS)
    trans_counts = np.zeros((NUM_TAGS, NUM_TAGS))
    # One extra column for the unknown character, which is never observed
    emit_counts = np.zeros((NUM_TAGS, len(vocab) + 1))

    for chars, tags in sentences:
        start_counts[tags[0]] += 1
        for prev, cur in zip(tags, tags[1:]):
            trans_counts[prev, cur] += 1
        for char, tag in zip(chars, tags):
            emit_counts[tag, char_index[char]] += 1

    pi = _smoothed_log(start_counts, ALLOWED_START, epsilon)
    trans = _smoothed_log(trans_counts, ALLOWED_TRANSITIONS, epsilon)
    emit = _smoothed_log(emit_counts, np.ones_like(emit_counts, dtype=bool), epsilon)

    model = HmmModel(pi, trans, emit, vocab, epsilon, lexicon=dict(lexicon or {}))
    logger.info(f'Trained HMM on {len(sentences)} sentences, vocabulary {len(vocab)}')
    return model.validate()


def _encode_logs(values):
    return [None if np.isneginf(v) else float(v) for v in values]


def _decode_logs(values):
    return [-np.inf if v is None else float(v) for v in values]


def model_to_dict(model):
    """Model file document; -inf structural zeros are written as null."""
    return {
        'format_version': MODEL_FORMAT_VERSION,
        'tags': [t.name for t in Tag],
        'epsilon': model.epsilon,
        'vocab': list(model.vocab),
        'pi': _encode_logs(model.pi),
        'trans': [_encode_logs(row) for row in model.trans],
        'emit': [_encode_logs(row[:-1]) for row in model.emit],
        'unknown': _encode_logs(model.unknown),
        'lexicon': dict(sorted(model.lexicon.items())),
    }


def model_from_dict(data):
    if data.get('format_version') != MODEL_FORMAT_VERSION:
        raise ModelFormatError(f'unsupported model format_version {data.get("format_version")!r}')
    try:
        emit = [
            _decode_logs(row) + [_decode_logs([unk])[0]]
            for row, unk in zip(data['emit'], data['unknown'])
        ]
        model = HmmModel(
            pi=_decode_logs(data['pi']),
            trans=[_decode_logs(row) for row in data['trans']],
            emit=emit,
            vocab=data['vocab'],
            epsilon=data['epsilon'],
            lexicon=data.get('lexicon', {}),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ModelFormatError(f'malformed model document: {e}')
    return model


def save_model(model, path):
    """Write the model file atomically."""
    tmp_path = f'{path}.tmp'
    with open(tmp_path, 'w', encoding='utf-8') as f:
        json.dump(model_to_dict(model), f, ensure_ascii=False)
    os.replace(tmp_path, path)


def load_model(path):
    """Read and validate a model file."""
    try:
        with open(path, encoding='utf-8') as f:
            data = json.load(f)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise ModelFormatError(f'{path}: {e}')
    return model_from_dict(data).validate()
