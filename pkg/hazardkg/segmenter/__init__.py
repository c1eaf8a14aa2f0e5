"""BMES hidden Markov model word segmentation with baselines and evaluation."""
from .tagging import tags_to_words, words_to_tags
from .training import (
    DEFAULT_EPSILON, corpus_from_sentences, load_model, read_gold_corpus, save_model, train_hmm
)
from .viterbi import (
    SENTENCE_PUNCTUATION, build_trellis, segment, viterbi_decode, viterbi_decode_scored
)
from .baselines import NgramStats, count_ngrams, max_match_segment, ngram_segment
from .evaluation import (
    evaluate_corpus, evaluate_model, evaluate_segmentation, format_evaluation_table
)

__all__ = [
    'tags_to_words', 'words_to_tags',
    'DEFAULT_EPSILON', 'corpus_from_sentences', 'load_model', 'read_gold_corpus', 'save_model',
    'train_hmm',
    'SENTENCE_PUNCTUATION', 'build_trellis', 'segment', 'viterbi_decode', 'viterbi_decode_scored',
    'NgramStats', 'count_ngrams', 'max_match_segment', 'ngram_segment',
    'evaluate_corpus', 'evaluate_model', 'evaluate_segmentation', 'format_evaluation_table',
]
