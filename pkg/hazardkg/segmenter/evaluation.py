"""
Segmentation Evaluation.
Span-based precision, recall and F1 against gold segmentations.
"""

import logging

from hazardkg.errors import InvalidInputError
from .baselines import count_ngrams, max_match_segment, ngram_segment
from .viterbi import segment

logger = logging.getLogger(__name__)

BASELINES = ('maxmatch', 'ngram')
HMM_ROW_NAME = 'HMM-Viterbi'
BASELINE_ROW_NAMES = {'maxmatch': 'Max-match', 'ngram': 'N-gram PMI'}


def token_spans(tokens):
    spans, start = set(), 0
    for token in tokens:
        spans.add((start, start + len(token)))
        start += len(token)
    return spans


def _check_alignment(predicted, gold):
    if ''.join(predicted) != ''.join(gold):
        raise InvalidInputError('predicted and gold tokens cover different text')


def _prf(correct, predicted_count, gold_count):
    if predicted_count == 0 and gold_count == 0:
        return 1.0, 1.0, 1.0
    precision = correct / predicted_count if predicted_count else 0.0
    recall = correct / gold_count if gold_count else 0.0
    if precision + recall == 0:
        return precision, recall, 0.0
    return precision, recall, 2 * precision * recall / (precision + recall)


def evaluate_segmentation(predicted, gold):
    """
    Compare two segmentations of the same text.

    Returns:
        tuple: (precision, recall, f1)
    """
    _check_alignment(predicted, gold)
    predicted_spans = token_spans(predicted)
    gold_spans = token_spans(gold)
    return _prf(len(predicted_spans & gold_spans), len(predicted_spans), len(gold_spans))


def evaluate_corpus(pairs):
    """Micro-averaged (precision, recall, f1) over (predicted, gold) token-list pairs."""
    correct = predicted_count = gold_count = 0
    for predicted, gold in pairs:
        _check_alignment(predicted, gold)
        predicted_spans = token_spans(predicted)
        gold_spans = token_spans(gold)
        correct += len(predicted_spans & gold_spans)
        predicted_count += len(predicted_spans)
        gold_count += len(gold_spans)
    return _prf(correct, predicted_count, gold_count)


def baseline_segmenter(name, lexicon):
    """Build a text -> tokens function for a named baseline from a training lexicon."""
    if name == 'maxmatch':
        dictionary = set(lexicon)
        max_word_len = max((len(w) for w in dictionary), default=1)
        return lambda text: max_match_segment(dictionary, text, max_word_len)
    if name == 'ngram':
        stats = count_ngrams(lexicon)
        return lambda text: ngram_segment(stats, text)
    raise InvalidInputError(f'unknown baseline {name!r}; expected one of {", ".join(BASELINES)}')


def evaluate_model(model, gold_sentences, baseline=None):
    """
    Score the HMM (and optionally a baseline) on gold sentences.

    Args:
        model (HmmModel): Trained model; its lexicon feeds the baseline
        gold_sentences (list): Lists of gold words
        baseline (str): 'maxmatch', 'ngram' or None

    Returns:
        list: (name, precision, recall, f1) rows
    """
    segmenters = [(HMM_ROW_NAME, lambda text: segment(model, text))]
    if baseline:
        segmenters.append((BASELINE_ROW_NAMES.get(baseline, baseline),
                           baseline_segmenter(baseline, model.lexicon)))

    rows = []
    for name, segment_text in segmenters:
        pairs = [(segment_text(''.join(words)), words) for words in gold_sentences]
        rows.append((name, *evaluate_corpus(pairs)))
        logger.info(f'{name}: P={rows[-1][1]:.4f} R={rows[-1][2]:.4f} F={rows[-1][3]:.4f}')
    return rows


def format_evaluation_table(rows):
    """Render rows as a fixed-width percentage table."""
    width = max([len('Model')] + [len(row[0]) for row in rows])
    lines = [f'{"Model":<{width}}  {"P (%)":>7}  {"R (%)":>7}  {"F (%)":>7}']
    for name, precision, recall, f1 in rows:
        lines.append(f'{name:<{width}}  {precision * 100:7.2f}  {recall * 100:7.2f}  {f1 * 100:7.2f}')
    return '\n'.join(lines) + '\n'
