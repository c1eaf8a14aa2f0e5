"""
Baseline Segmenters.
Dictionary-driven bidirectional maximum matching and a character-bigram
cohesion segmenter, both compared against the HMM in evaluation.
"""

import math
from collections import Counter
from dataclasses import dataclass, field

from hazardkg.errors import InvalidInputError


def _forward_match(dictionary, text, max_word_len):
    tokens, i = [], 0
    while i < len(text):
        for length in range(min(max_word_len, len(text) - i), 0, -1):
            candidate = text[i:i + length]
            if length == 1 or candidate in dictionary:
                tokens.append(candidate)
                i += length
                break
    return tokens


def _backward_match(dictionary, text, max_word_len):
    tokens, j = [], len(text)
    while j > 0:
        for length in range(min(max_word_len, j), 0, -1):
            candidate = text[j - length:j]
            if length == 1 or candidate in dictionary:
                tokens.append(candidate)
                j -= length
                break
    tokens.reverse()
    return tokens


def _match_cost(tokens):
    return sum(1 for t in tokens if len(t) == 1), len(tokens)


def max_match_segment(dictionary, text, max_word_len):
    """
    Bidirectional maximum matching.

    Forward and backward greedy scans both run; the one with fewer
    single-character tokens wins, then the one with fewer tokens, and the
    forward scan wins any remaining tie.
    """
    if max_word_len < 1:
        raise InvalidInputError(f'max_word_len must be >= 1, got {max_word_len}')
    if not text:
        return []
    forward = _forward_match(dictionary, text, max_word_len)
    backward = _backward_match(dictionary, text, max_word_len)
    return forward if _match_cost(forward) <= _match_cost(backward) else backward


@dataclass
class NgramStats:
    """Character unigram and bigram counts taken from training words."""
    unigrams: Counter = field(default_factory=Counter)
    bigrams: Counter = field(default_factory=Counter)

    @property
    def unigram_total(self):
        return sum(self.unigrams.values())

    @property
    def bigram_total(self):
        return sum(self.bigrams.values())

    def pmi(self, left, right):
        """
        Pointwise mutual information of an adjacent character pair.

        Unigram probabilities are add-one smoothed; a bigram never seen inside
        a training word has probability zero, so its PMI is -inf.
        """
        joint = self.bigrams.get(left + right, 0)
        if joint == 0:
            return -math.inf
        denominator = self.unigram_total + len(self.unigrams) + 1
        p_left = (self.unigrams.get(left, 0) + 1) / denominator
        p_right = (self.unigrams.get(right, 0) + 1) / denominator
        return math.log(joint / self.bigram_total) - math.log(p_left) - math.log(p_right)


def count_ngrams(lexicon):
    """
    Count character n-grams inside words.

    Args:
        lexicon (dict): word -> occurrence count (an iterable of words counts each once)
    """
    if not isinstance(lexicon, dict):
        lexicon = Counter(lexicon)
    stats = NgramStats()
    for word, count in lexicon.items():
        for char in word:
            stats.unigrams[char] += count
        for left, right in zip(word, word[1:]):
            stats.bigrams[left + right] += count
    return stats


def ngram_segment(stats, text, threshold=0.0):
    """Cut between two adjacent characters whenever their PMI is below ``threshold``."""
    if not text:
        return []
    tokens, current = [], [text[0]]
    for left, right in zip(text, text[1:]):
        if stats.pmi(left, right) < threshold:
            tokens.append(''.join(current))
            current = []
        current.append(right)
    tokens.append(''.join(current))
    return tokens
