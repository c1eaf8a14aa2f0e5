"""
Search Analyzer.
Turns text into (term, position) pairs with the trained segmenter.

Latin-script and digit runs are single lowercased terms ("66kV" -> "66kv");
every other run goes through the HMM segmenter. Whitespace and punctuation
never become terms, and positions count kept terms only.
"""

import re
import unicodedata

from hazardkg.segmenter.viterbi import segment

_LATIN = '0-9A-Za-zÀ-ɏ'
_RUN_RE = re.compile(rf'(?P<latin>[{_LATIN}]+)|(?P<space>\s+)|(?P<other>[^{_LATIN}\s]+)')


def is_punctuation(token):
    """True when every character is punctuation, a symbol or whitespace."""
    return all(c.isspace() or unicodedata.category(c)[0] in 'PS' for c in token)


def tokenize(text, model):
    """Analyzed terms of ``text`` in order, without positions."""
    terms = []
    for match in _RUN_RE.finditer(text or ''):
        if match.lastgroup == 'latin':
            terms.append(match.group(0).lower())
        elif match.lastgroup == 'other':
            terms.extend(
                token.lower() for token in segment(model, match.group(0))
                if not is_punctuation(token)
            )
    return terms


def analyze(text, model):
    """
    Analyze text for indexing or querying.

    Mixed text is split into runs first. A Latin-script or digit run is one
    lowercased term and never reaches the segmenter; each run of other
    characters is segmented by the model, and its tokens are the terms.
    "220kV主变渗油" gives "220kv" followed by the segmenter tokens of
    "主变渗油".

    Returns:
        list: (term, position) pairs, positions 0-based and strictly increasing
    """
    return [(term, position) for position, term in enumerate(tokenize(text, model))]
