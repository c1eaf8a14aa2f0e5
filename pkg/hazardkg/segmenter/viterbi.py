"""
Viterbi Decoding.
Log-space dynamic programming over the BMES tag set, and sentence-level
segmentation built on top of it.
"""

import re

import numpy as np

from hazardkg.models.hmm import NUM_TAGS, Tag, ViterbiTrellis
from .tagging import tags_to_words

SENTENCE_PUNCTUATION = '。，；！？,.;!?\n'
_SENTENCE_SPLIT_RE = re.compile('([' + re.escape(SENTENCE_PUNCTUATION) + '])')
_TAG_COLUMNS = np.arange(NUM_TAGS)


def build_trellis(model, chars):
    """
    Fill the score and backpointer tables for a character sequence.

    score[t, i] is the best log-probability of any path ending in tag i at
    position t; backptr[t, i] is the previous tag on that path. Row 0 of
    backptr is the sentinel 0.
    """
    length = len(chars)
    score = np.full((length, NUM_TAGS), -np.inf)
    backptr = np.zeros((length, NUM_TAGS), dtype=np.intp)
    if length == 0:
        return ViterbiTrellis(score, backptr)

    emissions = model.emission_rows(chars)
    score[0] = model.pi + emissions[0]
    for t in range(1, length):
        # candidates[j, i]: arrive in tag i from tag j
        candidates = score[t - 1][:, None] + model.trans
        best = candidates.argmax(axis=0)
        backptr[t] = best
        score[t] = candidates[best, _TAG_COLUMNS] + emissions[t]
    return ViterbiTrellis(score, backptr)


def _final_tag(last_scores):
    # A sentence cannot end mid-word; E wins a tie with S
    return Tag.E if last_scores[Tag.E] >= last_scores[Tag.S] else Tag.S


def viterbi_decode_scored(model, chars):
    """
    Decode the most probable tag sequence.

    Returns:
        tuple: (list of Tag, log P(Q, O | model)); the score is 0.0 for an
        empty sequence
    """
    trellis = build_trellis(model, chars)
    if trellis.length == 0:
        return [], 0.0

    tag = _final_tag(trellis.score[-1])
    best_score = float(trellis.score[-1, tag])
    tags = [tag]
    for t in range(trellis.length - 1, 0, -1):
        tag = Tag(int(trellis.backptr[t, tag]))
        tags.append(tag)
    tags.reverse()
    return tags, best_score


def viterbi_decode(model, chars):
    """Most probable well-formed tag sequence for ``chars``."""
    return viterbi_decode_scored(model, chars)[0]


def segment_sentence(model, sentence):
    chars = list(sentence)
    return tags_to_words(chars, viterbi_decode(model, chars))


def segment(model, text):
    """
    Segment free text into words.

    The text is cut into sentences at the fixed punctuation set; each
    punctuation mark comes back as its own token, so the tokens always join
    back to the input.
    """
    tokens = []
    for piece in _SENTENCE_SPLIT_RE.split(text or ''):
        if not piece:
            continue
        if len(piece) == 1 and piece in SENTENCE_PUNCTUATION:
            tokens.append(piece)
        else:
            tokens.extend(segment_sentence(model, piece))
    return tokens
