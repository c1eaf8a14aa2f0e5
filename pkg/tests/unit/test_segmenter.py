"""
Unit Tests for the Word Segmenter.
Tests BMES tagging, HMM training, Viterbi decoding, the baseline segmenters
and the evaluation harness.
"""

import itertools
import json
import random

import numpy as np
import pytest

from hazardkg.errors import InvalidInputError, ModelFormatError, TrainingError
from hazardkg.models import Tag, TaggedCorpus
from hazardkg.models.hmm import is_well_formed
from hazardkg.segmenter import (
    build_trellis, corpus_from_sentences, count_ngrams, evaluate_corpus, evaluate_model,
    evaluate_segmentation, format_evaluation_table, load_model, max_match_segment, ngram_segment,
    read_gold_corpus, save_model, segment, tags_to_words, train_hmm, viterbi_decode,
    viterbi_decode_scored, words_to_tags
)
from hazardkg.segmenter.evaluation import baseline_segmenter
from hazardkg.segmenter.viterbi import segment_sentence
from hazardkg.data import sample_path

# Mark all unit tests
pytestmark = pytest.mark.unit

B, M, E, S = Tag.B, Tag.M, Tag.E, Tag.S


def path_score(model, chars, tags):
    """log P(Q, O | model) of one tag sequence; -inf when ill-formed."""
    if not is_well_formed(tags):
        return -np.inf
    score = model.pi[tags[0]] + model.emission(tags[0], chars[0])
    for t in range(1, len(chars)):
        score += model.trans[tags[t - 1], tags[t]] + model.emission(tags[t], chars[t])
    return float(score)


class TestTagging:
    """Test cases for word/tag conversion."""

    def test_two_character_word(self):
        """Test a two-character word is B, E."""
        assert words_to_tags(['主变']) == (['主', '变'], [B, E])

    def test_mixed_words(self):
        """Test single and two-character words."""
        chars, tags = words_to_tags(['油', '泄漏'])

        assert ''.join(chars) == '油泄漏'
        assert tags == [S, B, E]

    def test_long_word(self):
        """Test middle characters are M."""
        assert words_to_tags(['液压机构'])[1] == [B, M, M, E]

    def test_empty_word(self):
        """Test empty word is rejected."""
        with pytest.raises(InvalidInputError):
            words_to_tags(['主变', ''])

    def test_round_trip(self):
        """Test tags_to_words inverts words_to_tags on random word lists."""
        rng = random.Random(7)
        for _ in range(1000):
            words = [''.join(rng.choices('abcd', k=rng.randint(1, 4))) for _ in range(rng.randint(1, 6))]
            assert tags_to_words(*words_to_tags(words)) == words

    def test_tags_to_words(self):
        """Test cutting at S and E."""
        assert tags_to_words(list('主变'), [B, E]) == ['主变']
        assert tags_to_words(list('ABC'), [S, B, E]) == ['A', 'BC']

    def test_repair_malformed(self):
        """Test a second B forces a cut."""
        assert tags_to_words(list('ABC'), [B, B, E]) == ['A', 'BC']

    def test_length_mismatch(self):
        """Test mismatched lengths are rejected."""
        with pytest.raises(InvalidInputError):
            tags_to_words(list('AB'), [S])

    def test_corpus_rejects_ill_formed(self):
        """Test the corpus only accepts well-formed sequences."""
        with pytest.raises(InvalidInputError):
            TaggedCorpus().add(list('AB'), [B, S])


class TestTraining:
    """Test cases for HMM parameter estimation."""

    def test_hand_counted_corpus(self):
        """Test estimates on a two-sentence corpus with tiny smoothing."""
        corpus, _ = corpus_from_sentences([['AB'], ['C']])

        model = train_hmm(corpus, epsilon=1e-12)

        assert np.exp(model.pi[B]) == pytest.approx(0.5, abs=1e-9)
        assert np.exp(model.pi[S]) == pytest.approx(0.5, abs=1e-9)
        assert np.exp(model.trans[B, E]) == pytest.approx(1.0, abs=1e-9)
        assert np.exp(model.emission(B, 'A')) == pytest.approx(1.0, abs=1e-9)
        assert np.exp(model.emission(E, 'B')) == pytest.approx(1.0, abs=1e-9)
        assert np.exp(model.emission(S, 'C')) == pytest.approx(1.0, abs=1e-9)

    def test_structural_zeros(self, hmm_model):
        """Test M and E never start a sentence."""
        assert np.isneginf(hmm_model.pi[M])
        assert np.isneginf(hmm_model.pi[E])
        assert np.isneginf(hmm_model.trans[B, B])
        assert np.isneginf(hmm_model.trans[S, E])

    def test_row_sums_random_corpus(self):
        """Test stochastic invariants on a random corpus of 50 sentences."""
        rng = random.Random(11)
        sentences = [
            [''.join(rng.choices('甲乙丙丁戊', k=rng.randint(1, 3))) for _ in range(rng.randint(1, 8))]
            for _ in range(50)
        ]
        corpus, lexicon = corpus_from_sentences(sentences)

        model = train_hmm(corpus, lexicon=lexicon)

        assert abs(np.exp(model.pi).sum() - 1.0) < 1e-9
        assert np.all(np.abs(np.exp(model.trans).sum(axis=1) - 1.0) < 1e-9)
        assert np.all(np.abs(np.exp(model.emit).sum(axis=1) - 1.0) < 1e-9)

    def test_unknown_character_probability(self, hmm_model):
        """Test unseen characters get the shared finite probability."""
        assert np.all(np.isfinite(hmm_model.unknown))
        assert hmm_model.emission(S, '☃') == hmm_model.unknown[S]

    def test_empty_corpus(self):
        """Test training on nothing fails."""
        with pytest.raises(TrainingError):
            train_hmm(TaggedCorpus())

    def test_non_positive_epsilon(self):
        """Test smoothing constant must be positive."""
        corpus, _ = corpus_from_sentences([['AB']])

        with pytest.raises(InvalidInputError):
            train_hmm(corpus, epsilon=0)

    def test_parameters_read_only(self, hmm_model):
        """Test trained parameters cannot be modified in place."""
        with pytest.raises(ValueError):
            hmm_model.pi[0] = 0.0

    def test_read_gold_corpus(self):
        """Test the shipped corpus loads with its word counts."""
        corpus, lexicon = read_gold_corpus(sample_path('mini_corpus.txt'))

        assert len(corpus) == 30
        assert lexicon['主变'] >= 2


class TestModelFile:
    """Test cases for the model file format."""

    def test_save_and_load(self, tmp_path, hmm_model):
        """Test a saved model loads back equal."""
        path = str(tmp_path / 'model.bin')

        save_model(hmm_model, path)

        assert load_model(path) == hmm_model

    def test_lexicon_saved(self, model_file, hmm_model):
        """Test training words travel with the model."""
        assert load_model(model_file).lexicon == hmm_model.lexicon

    def test_corrupt_file(self, tmp_path):
        """Test non-JSON model file."""
        path = tmp_path / 'model.bin'
        path.write_bytes(b'\x00\x01garbage')

        with pytest.raises(ModelFormatError):
            load_model(str(path))

    def test_wrong_version(self, tmp_path, model_file):
        """Test unsupported format version."""
        with open(model_file, encoding='utf-8') as f:
            document = json.load(f)
        document['format_version'] = 99
        path = tmp_path / 'other.bin'
        path.write_text(json.dumps(document), encoding='utf-8')

        with pytest.raises(ModelFormatError):
            load_model(str(path))


class TestViterbi:
    """Test cases for Viterbi decoding."""

    def test_empty_sequence(self, hmm_model):
        """Test empty input decodes to nothing."""
        assert viterbi_decode(hmm_model, []) == []
        assert viterbi_decode_scored(hmm_model, []) == ([], 0.0)

    def test_single_character(self, char_model):
        """Test a lone seen character is a single-character word."""
        assert viterbi_decode(char_model, ['主']) == [S]

    def test_trellis_shape(self, hmm_model):
        """Test trellis dimensions and the backpointer sentinel row."""
        trellis = build_trellis(hmm_model, list('主变渗油'))

        assert trellis.score.shape == (4, 4)
        assert trellis.length == 4
        assert list(trellis.backptr[0]) == [0, 0, 0, 0]

    def test_brute_force_oracle(self, random_hmm):
        """Test decoding against exhaustive enumeration over all 4^T tag sequences."""
        rng = np.random.default_rng(2023)
        for _ in range(200):
            model = random_hmm(rng)
            chars = list(rng.choice(list('abcd'), size=int(rng.integers(1, 9))))

            tags, score = viterbi_decode_scored(model, chars)

            # product() yields lower tag indices first, so max() keeps the lowest tie
            best_q = max(itertools.product(Tag, repeat=len(chars)),
                         key=lambda q: path_score(model, chars, list(q)))
            best = path_score(model, chars, list(best_q))
            assert is_well_formed(tags)
            assert tags == list(best_q)
            assert score == pytest.approx(best, abs=1e-9)
            assert path_score(model, chars, tags) == pytest.approx(best, abs=1e-9)

    def test_output_well_formed(self, hmm_model):
        """Test decoded tags obey the BMES grammar."""
        tags = viterbi_decode(hmm_model, list('主变本体渗油需更换密封垫'))

        assert is_well_formed(tags)


class TestSegment:
    """Test cases for sentence segmentation."""

    def test_empty_text(self, hmm_model):
        """Test empty text."""
        assert segment(hmm_model, '') == []

    def test_punctuation_token(self, hmm_model):
        """Test punctuation becomes its own token after the sentence."""
        assert segment(hmm_model, '主变异常。') == segment_sentence(hmm_model, '主变异常') + ['。']

    def test_lossless(self, hmm_model):
        """Test joined tokens reproduce random input strings."""
        rng = random.Random(3)
        alphabet = '主变渗油绕组变形引流线脱落。，;! abc12\n☃'
        for _ in range(1000):
            text = ''.join(rng.choices(alphabet, k=rng.randint(0, 20)))
            assert ''.join(segment(hmm_model, text)) == text

    def test_training_sentence(self, hmm_model):
        """Test a training sentence with distinctive words segments into known words."""
        tokens = segment(hmm_model, '紧固线夹并检查压接管。')

        assert ''.join(tokens) == '紧固线夹并检查压接管。'
        assert tokens[-1] == '。'


class TestBaselines:
    """Test cases for max-match and N-gram segmentation."""

    def test_max_match_word(self):
        """Test a dictionary word is matched whole."""
        assert max_match_segment({'主变'}, '主变', 2) == ['主变']

    def test_max_match_empty_dictionary(self):
        """Test every character is a token without a dictionary."""
        assert max_match_segment(set(), 'ABC', 3) == ['A', 'B', 'C']

    def test_max_match_tie_prefers_forward(self):
        """Test equal-cost scans keep the forward result."""
        assert max_match_segment({'AB', 'BC'}, 'ABC', 2) == ['AB', 'C']

    def test_max_match_backward_wins(self):
        """Test backward scan wins with fewer single-character tokens."""
        assert max_match_segment({'AB', 'BCD'}, 'ABCD', 3) == ['A', 'BCD']

    def test_max_match_bad_length(self):
        """Test max word length must be positive."""
        with pytest.raises(InvalidInputError):
            max_match_segment({'AB'}, 'AB', 0)

    def test_ngram_single_char(self):
        """Test one character is one token."""
        assert ngram_segment(count_ngrams({'AB': 1}), 'Z') == ['Z']

    def test_ngram_unseen_bigram_cut(self):
        """Test pairs never seen inside a word are cut."""
        assert ngram_segment(count_ngrams({'AB': 5}), 'CD') == ['C', 'D']

    def test_ngram_frequent_bigram_joined(self):
        """Test a frequent within-word pair stays joined."""
        stats = count_ngrams({'AB': 10, 'C': 10, 'D': 10})

        assert stats.pmi('A', 'B') > 0
        assert ngram_segment(stats, 'ABCD') == ['AB', 'C', 'D']

    @pytest.mark.parametrize('name', ['maxmatch', 'ngram'])
    def test_baselines_lossless(self, name, hmm_model):
        """Test baseline tokens join back to the input."""
        segment_text = baseline_segmenter(name, hmm_model.lexicon)
        rng = random.Random(5)
        for _ in range(200):
            text = ''.join(rng.choices('主变渗油绕组变形引流线脱落xyz', k=rng.randint(0, 15)))
            assert ''.join(segment_text(text)) == text

    def test_unknown_baseline(self):
        """Test unknown baseline name."""
        with pytest.raises(InvalidInputError):
            baseline_segmenter('jieba', {})


class TestEvaluation:
    """Test cases for precision, recall and F-value."""

    def test_perfect_match(self):
        """Test identical segmentations score 1."""
        assert evaluate_segmentation(['AB', 'C'], ['AB', 'C']) == (1.0, 1.0, 1.0)

    def test_partial_match(self):
        """Test hand-computed span intersection."""
        precision, recall, f1 = evaluate_segmentation(['A', 'B', 'C', 'DE'], ['AB', 'C', 'DE'])

        assert precision == pytest.approx(0.5)
        assert recall == pytest.approx(2 / 3)
        assert f1 == pytest.approx(4 / 7)

    def test_both_empty(self):
        """Test empty segmentations agree perfectly."""
        assert evaluate_segmentation([], []) == (1.0, 1.0, 1.0)

    @staticmethod
    def random_split(rng, text):
        cuts = sorted(rng.sample(range(1, len(text)), rng.randint(0, len(text) - 1)))
        return [text[i:j] for i, j in zip([0] + cuts, cuts + [len(text)])]

    def test_f_identity(self):
        """Test f1 is the harmonic mean of precision and recall on random segmentations."""
        rng = random.Random(13)
        for length in range(1, 21):
            for _ in range(50):
                text = ''.join(rng.choices('主变渗油绕组', k=length))

                precision, recall, f1 = evaluate_segmentation(self.random_split(rng, text),
                                                              self.random_split(rng, text))

                assert 0.0 <= precision <= 1.0 and 0.0 <= recall <= 1.0
                if precision + recall == 0:
                    assert f1 == 0.0
                else:
                    assert f1 == pytest.approx(2 * precision * recall / (precision + recall), abs=1e-12)

    def test_text_mismatch(self):
        """Test segmentations of different text are rejected."""
        with pytest.raises(InvalidInputError):
            evaluate_segmentation(['AB'], ['AC'])

    def test_corpus_micro_average(self):
        """Test corpus scores pool spans across sentences."""
        precision, recall, _ = evaluate_corpus([
            (['A', 'B'], ['AB']),
            (['C'], ['C']),
        ])

        assert precision == pytest.approx(1 / 3)
        assert recall == pytest.approx(1 / 2)

    def test_evaluate_model_rows(self, hmm_model):
        """Test HMM and baseline rows on the training sentences."""
        corpus_path = sample_path('mini_corpus.txt')
        with open(corpus_path, encoding='utf-8') as f:
            sentences = [line.split() for line in f if line.split()]

        rows = evaluate_model(hmm_model, sentences, 'maxmatch')

        assert [row[0] for row in rows] == ['HMM-Viterbi', 'Max-match']
        for _, precision, recall, f1 in rows:
            assert 0.0 <= precision <= 1.0
            assert 0.0 <= recall <= 1.0
            assert min(precision, recall) <= f1 <= max(precision, recall)

    def test_format_table(self):
        """Test percentage table rendering."""
        table = format_evaluation_table([('HMM-Viterbi', 0.8025, 0.7512, 0.776), ('N-gram PMI', 0.5, 0.25, 1 / 3)])

        lines = table.splitlines()
        assert lines[0].split() == ['Model', 'P', '(%)', 'R', '(%)', 'F', '(%)']
        assert lines[1].split() == ['HMM-Viterbi', '80.25', '75.12', '77.60']
        assert lines[2].split() == ['N-gram', 'PMI', '50.00', '25.00', '33.33']


class TestSegmentationQuality:
    """Test cases for out-of-vocabulary behaviour on a synthetic corpus."""

    BEGIN, MIDDLE, END, SINGLE = '甲乙丙丁戊己庚辛壬癸', '子丑寅卯辰巳午未申酉', '金木水火土日月星山川', '东南西北中'

    def synthetic_sentences(self, rng, count):
        words = sorted({rng.choice(self.BEGIN) + rng.choice(self.END) for _ in range(40)}
                       | {rng.choice(self.BEGIN) + rng.choice(self.MIDDLE) + rng.choice(self.END)
                          for _ in range(40)})
        vocabulary = words + list(self.SINGLE)
        sentences = [rng.choices(vocabulary, k=rng.randint(3, 8)) for _ in range(count)]
        return words, sentences

    def test_hmm_beats_incomplete_dictionary(self):
        """Test the HMM outscores maximum matching when 30% of words are missing."""
        rng = random.Random(2023)
        words, sentences = self.synthetic_sentences(rng, 2000)
        train, test = sentences[:1600], sentences[1600:]
        corpus, lexicon = corpus_from_sentences(train)
        model = train_hmm(corpus, lexicon=lexicon)

        missing = set(rng.sample(words, int(len(words) * 0.3)))
        dictionary = (set(words) - missing) | set(self.SINGLE)
        max_len = max(len(w) for w in dictionary)

        _, _, hmm_f1 = evaluate_corpus([(segment(model, ''.join(s)), s) for s in test])
        _, _, mm_f1 = evaluate_corpus([(max_match_segment(dictionary, ''.join(s), max_len), s) for s in test])

        assert hmm_f1 > mm_f1
