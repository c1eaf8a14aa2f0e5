"""
Hidden Markov Model types for BMES word segmentation.

All probabilities are stored as natural-log values; structural zeros of the
BMES grammar are -inf and are never smoothed.
"""

from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from hazardkg.errors import InvalidModelError, InvalidInputError

NUM_TAGS = 4
TOLERANCE = 1e-9


class Tag(IntEnum):
    """Word-formation position of a character."""
    B = 0
    M = 1
    E = 2
    S = 3


# Allowed transitions, row = previous tag, column = current tag
ALLOWED_TRANSITIONS = np.array([
    [False, True, True, False],   # B -> M, E
    [False, True, True, False],   # M -> M, E
    [True, False, False, True],   # E -> B, S
    [True, False, False, True],   # S -> B, S
])
ALLOWED_START = np.array([True, False, False, True])
ALLOWED_END = np.array([False, False, True, True])


def is_well_formed(tags):
    """True when a tag sequence obeys the BMES grammar."""
    tags = list(tags)
    if not tags:
        return True
    if not ALLOWED_START[tags[0]] or not ALLOWED_END[tags[-1]]:
        return False
    return all(ALLOWED_TRANSITIONS[a, b] for a, b in zip(tags, tags[1:]))


@dataclass
class TaggedCorpus:
    """Gold sentences as (characters, tags) pairs."""
    sentences: list = field(default_factory=list)

    def add(self, chars, tags):
        if len(chars) != len(tags):
            raise InvalidInputError('characters and tags differ in length')
        if not is_well_formed(tags):
            raise InvalidInputError(f'ill-formed tag sequence for {"".join(chars)!r}')
        self.sentences.append((list(chars), [Tag(t) for t in tags]))

    def __len__(self):
        return len(self.sentences)


@dataclass(frozen=True)
class ViterbiTrellis:
    """Dynamic-programming table: scores S_t(i) and backpointers phi_t(i)."""
    score: np.ndarray
    backptr: np.ndarray

    @property
    def length(self):
        return self.score.shape[0]


class HmmModel:
    """
    Trained parameters lambda = (pi, trans, emit) over the BMES tag set.

    Attributes:
        pi (ndarray): (4,) initial log-probabilities
        trans (ndarray): (4, 4) transition log-probabilities, row = from, column = to
        emit (ndarray): (4, V + 1) emission log-probabilities; the last column
            is the shared unknown-character probability
        vocab (tuple): Characters seen in training, in column order
        epsilon (float): Additive smoothing constant used in training
        lexicon (dict): Training words with counts, used by the baselines
    """

    def __init__(self, pi, trans, emit, vocab, epsilon, lexicon=None):
        self.pi = np.asarray(pi, dtype=np.float64)
        self.trans = np.asarray(trans, dtype=np.float64)
        self.emit = np.asarray(emit, dtype=np.float64)
        self.vocab = tuple(vocab)
        self.epsilon = float(epsilon)
        self.lexicon = dict(lexicon or {})
        self.char_index = {c: i for i, c in enumerate(self.vocab)}
        self.unknown_index = len(self.vocab)
        # Per-tag emission columns; decoding reads from this read-only view.
        self._emit_t = np.ascontiguousarray(self.emit.T)
        for array in (self.pi, self.trans, self.emit, self._emit_t):
            array.flags.writeable = False

    @property
    def unknown(self):
        """Per-tag unknown-character log-probability."""
        return self.emit[:, self.unknown_index]

    def encode(self, chars):
        """Map characters to emission column indices."""
        lookup = self.char_index.get
        unknown = self.unknown_index
        return np.fromiter((lookup(c, unknown) for c in chars), dtype=np.intp, count=len(chars))

    def emission_rows(self, chars):
        """(T, 4) emission log-probabilities for a character sequence."""
        return self._emit_t[self.encode(chars)]

    def emission(self, tag, char):
        """log b_tag(char)."""
        return float(self.emit[int(tag), self.char_index.get(char, self.unknown_index)])

    def validate(self):
        """Check every stochastic and structural invariant; raises InvalidModelError."""
        if self.pi.shape != (NUM_TAGS,) or self.trans.shape != (NUM_TAGS, NUM_TAGS):
            raise InvalidModelError('pi must be (4,) and trans (4, 4)')
        if self.emit.shape != (NUM_TAGS, len(self.vocab) + 1):
            raise InvalidModelError('emit must be (4, |vocab| + 1)')
        if len(self.char_index) != len(self.vocab):
            raise InvalidModelError('vocabulary contains duplicates')
        if not self.epsilon > 0:
            raise InvalidModelError('smoothing epsilon must be > 0')
        if np.any(np.isfinite(self.pi[~ALLOWED_START])):
            raise InvalidModelError('pi[M] and pi[E] must be structural zeros')
        if abs(np.exp(self.pi).sum() - 1.0) > TOLERANCE:
            raise InvalidModelError('initial probabilities do not sum to 1')
        if np.any(np.isfinite(self.trans[~ALLOWED_TRANSITIONS])):
            raise InvalidModelError('forbidden transition has non-zero probability')
        row_sums = np.exp(self.trans).sum(axis=1)
        if np.any(np.abs(row_sums - 1.0) > TOLERANCE):
            raise InvalidModelError(f'transition rows do not sum to 1: {row_sums.tolist()}')
        emit_sums = np.exp(self.emit).sum(axis=1)
        if np.any(np.abs(emit_sums - 1.0) > TOLERANCE):
            raise InvalidModelError(f'emission rows do not sum to 1: {emit_sums.tolist()}')
        return self

    def __eq__(self, other):
        if not isinstance(other, HmmModel):
            return NotImplemented
        return (
            self.vocab == other.vocab
            and self.epsilon == other.epsilon
            and self.lexicon == other.lexicon
            and np.array_equal(self.pi, other.pi)
            and np.array_equal(self.trans, other.trans)
            and np.array_equal(self.emit, other.emit)
        )

    __hash__ = None

    def __repr__(self):
        return f'<HmmModel vocab={len(self.vocab)} epsilon={self.epsilon}>'
