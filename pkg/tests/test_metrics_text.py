import json

import pytest
from hypothesis import given, settings, strategies as st

from fivepillars.metrics.stem import stem
from fivepillars.metrics.text import align_unigrams, count_chunks, meteor, rouge_l, tokenize

from oracles import lcs_recursive, meteor_oracle, meteor_score_from


class TestTokenize:
    def test_lowercase_punct_whitespace(self):
        assert tokenize("The CAT, sat!") == ["the", "cat", "sat"]

    def test_empty(self):
        assert tokenize("") == []
        assert tokenize("  ...  ") == []

    def test_unicode_words_kept(self):
        assert tokenize("photo à Paris") == ["photo", "à", "paris"]


class TestRougeL:
    def test_identity(self):
        assert rouge_l("reuters", "reuters") == 1.0

    def test_hand_lcs(self):
        # LCS("the cat sat", "the dog sat") = [the, sat] -> P = R = 2/3
        assert rouge_l("the cat sat", "the dog sat") == pytest.approx(2 / 3, abs=1e-9)

    def test_empty_sides(self):
        assert rouge_l("", "reuters") == 0.0
        assert rouge_l("reuters", "") == 0.0

    def test_matches_recursive_lcs_oracle(self):
        pairs = [
            ("a b c d", "b d a c"),
            ("one two three four five", "one three five"),
            ("x y z", "p q r"),
            ("to document typhoon relief", "typhoon relief efforts to document"),
        ]
        for pred, ref in pairs:
            pt, rt = tokenize(pred), tokenize(ref)
            lcs = lcs_recursive(tuple(pt), tuple(rt))
            if lcs == 0:
                assert rouge_l(pred, ref) == 0.0
            else:
                p = lcs / len(pt)
                r = lcs / len(rt)
                assert rouge_l(pred, ref) == pytest.approx(2 * p * r / (p + r))

    def test_identity_property(self):
        for text in ["a", "the quick brown fox", "Reuters photo desk"]:
            assert rouge_l(text, text) == pytest.approx(1.0)


class TestStemmer:
    @pytest.mark.parametrize("word,expected", [
        ("caresses", "caress"), ("ponies", "poni"), ("cats", "cat"),
        ("feed", "feed"), ("agreed", "agre"), ("plastered", "plaster"),
        ("motoring", "motor"), ("sing", "sing"), ("hopping", "hop"),
        ("falling", "fall"), ("hissing", "hiss"), ("fizzed", "fizz"),
        ("filing", "file"), ("happy", "happi"), ("sky", "sky"),
        ("relational", "relat"), ("conditional", "condit"),
        ("digitizer", "digit"), ("operator", "oper"), ("goodness", "good"),
        ("hopeful", "hope"), ("adjustment", "adjust"), ("adoption", "adopt"),
        ("activate", "activ"), ("effective", "effect"),
        ("controlling", "control"), ("rolling", "roll"), ("sized", "size"),
        ("troubled", "troubl"), ("conflated", "conflat"), ("rational", "ration"),
    ])
    def test_known_stems(self, word, expected):
        assert stem(word) == expected

    def test_short_words_untouched(self):
        assert stem("at") == "at"
        assert stem("I") == "i"

    def test_non_alpha_untouched(self):
        assert stem("2013") == "2013"


class TestMeteor:
    def test_disjoint_zero(self):
        assert meteor("alpha beta", "gamma delta") == 0.0

    def test_identical_ten_tokens(self):
        text = "one two three four five six seven eight nine ten"
        assert meteor(text, text) == pytest.approx(0.9995, abs=1e-9)

    def test_single_token_identity(self):
        # one chunk over one match: penalty 0.5, F-mean 1
        assert meteor("hello", "hello") == pytest.approx(0.5, abs=1e-12)

    def test_empty_sides(self):
        assert meteor("", "x") == 0.0
        assert meteor("x", "") == 0.0

    def test_stem_match_counts(self):
        # "running" vs "runs" only match through the stemmer
        assert meteor("running", "runs") == pytest.approx(0.5, abs=1e-12)

    def test_chunk_counting(self):
        assert count_chunks([(0, 0), (1, 1), (2, 2)]) == 1
        assert count_chunks([(0, 1), (1, 0)]) == 2
        assert count_chunks([]) == 0

    def test_alignment_prefers_exact_stage(self):
        pairs = align_unigrams(["run", "running"], ["running", "run"])
        # exact matches claim (0,1) and (1,0) before the stem stage runs
        assert set(pairs) == {(0, 1), (1, 0)}

    def test_range(self):
        for pred, ref in [("a b", "a c"), ("x", "x y z"), ("p q r", "r q p")]:
            assert 0.0 <= meteor(pred, ref) <= 1.0


@given(st.lists(st.sampled_from("abcdefgh"), min_size=1, max_size=6).filter(lambda t: len(set(t)) == len(t)),
       st.lists(st.sampled_from("abcdefgh"), min_size=1, max_size=6).filter(lambda t: len(set(t)) == len(t)))
@settings(max_examples=100, deadline=None)
def test_greedy_alignment_matches_oracle_when_tokens_unique(pred_t, ref_t):
    # single-letter tokens stem to themselves, so the matching is unique
    matches, chunks = meteor_oracle(pred_t, ref_t, stem)
    expected = meteor_score_from(matches, chunks, len(pred_t), len(ref_t))
    got = meteor(" ".join(pred_t), " ".join(ref_t))
    assert got == pytest.approx(expected, abs=1e-12)


def test_golden_pairs_file(fixtures_dir):
    """Twenty frozen pairs pin both metrics against drift."""
    rows = json.loads((fixtures_dir / "golden" / "text_metric_pairs.json").read_text())
    assert len(rows) == 20
    for row in rows:
        assert rouge_l(row["pred"], row["ref"]) == pytest.approx(row["rouge_l"], abs=1e-9), row
        assert meteor(row["pred"], row["ref"]) == pytest.approx(row["meteor"], abs=1e-9), row
