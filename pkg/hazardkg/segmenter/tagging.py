"""Conversion between word lists and BMES tag sequences."""

from hazardkg.errors import InvalidInputError
from hazardkg.models.hmm import Tag


def words_to_tags(words):
    """
    Tag every character of a word list.

    A single-character word is S; a longer word is B, M..., E.

    Returns:
        tuple: (list of characters, list of Tag)
    """
    chars, tags = [], []
    for word in words:
        if not word:
            raise InvalidInputError('words must be non-empty')
        chars.extend(word)
        if len(word) == 1:
            tags.append(Tag.S)
        else:
            tags.append(Tag.B)
            tags.extend([Tag.M] * (len(word) - 2))
            tags.append(Tag.E)
    return chars, tags


def tags_to_words(chars, tags):
    """
    Cut characters into words at every S and E.

    Ill-formed runs are repaired by forcing a cut before any B or S and after
    any E or S, so the output always concatenates back to the input.
    """
    if len(chars) != len(tags):
        raise InvalidInputError(f'length mismatch: {len(chars)} chars, {len(tags)} tags')
    words = []
    current = []
    previous = None
    for char, tag in zip(chars, tags):
        tag = Tag(tag)
        if current and (tag in (Tag.B, Tag.S) or previous in (Tag.E, Tag.S)):
            words.append(''.join(current))
            current = []
        current.append(char)
        previous = tag
    if current:
        words.append(''.join(current))
    return words
