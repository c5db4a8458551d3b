import math

from flcva import (
    NEG_INF,
    Lexicon,
    build_trie,
    enumerate_paths_dfs,
    make_letter_hmms,
    minimize,
    nbest_exhaustive,
    score_word,
)
from flcva.hmm import quantize_log
from flcva.oracle import canonical_word_order, word_rank_map
from flcva.pph import annotate_increments, compute_suff, encode_word
from flcva.synth import random_lexicon

from conftest import onehot_config, uniform_config


def test_toy_dfs_order(toy_dawg):
    words = enumerate_paths_dfs(toy_dawg)
    assert words == ["ab", "ba", "bb", "bcd", "bc", "c"]
    assert words.index("bcd") == 3


def test_dfs_order_matches_encode_on_random_automata():
    for seed in range(8):
        lex = random_lexicon(seed * 70 + 10, alphabet="abcd", min_len=1,
                             max_len=7, seed=seed)
        dawg = minimize(build_trie(lex))
        inc = annotate_increments(dawg, compute_suff(dawg))
        for rank, word in enumerate(enumerate_paths_dfs(dawg)):
            assert encode_word(dawg, inc, word) == rank


def test_canonical_word_order_puts_prefix_after_extension():
    assert canonical_word_order(["bc", "bcd", "b"]) == ["bcd", "bc", "b"]
    ranks = word_rank_map(Lexicon.from_words(["ab", "ba", "bb", "bc", "bcd", "c"]))
    assert ranks == {"ab": 0, "ba": 1, "bb": 2, "bcd": 3, "bc": 4, "c": 5}


def test_score_word_golden():
    cfg = onehot_config()
    hmms = make_letter_hmms("abcd", cfg)
    assert score_word("bcd", hmms, cfg, list("bcd")) == 2 * quantize_log(math.log(0.5))
    assert score_word("ab", hmms, cfg, list("bcd")) == NEG_INF


def test_score_word_representation_independent():
    cfg = uniform_config()
    hmms = make_letter_hmms("abcd", cfg)
    obs = ["a", "b", "c"]
    assert score_word("abc", hmms, cfg, obs) == score_word("abc", hmms, cfg, obs)


def test_exhaustive_nbest_onehot(toy_lexicon):
    cfg = onehot_config()
    hmms = make_letter_hmms("abcd", cfg)
    for n in (1, 3, 10):
        rows = nbest_exhaustive(toy_lexicon, hmms, cfg, list("bcd"), n)
        assert [(w, p) for w, p, _s in rows] == [("bcd", 3)]


def test_exhaustive_nbest_caps_at_word_count(toy_lexicon):
    cfg = uniform_config()
    hmms = make_letter_hmms("abcd", cfg)
    rows = nbest_exhaustive(toy_lexicon, hmms, cfg, ["a"] * 3, 100)
    assert len(rows) <= toy_lexicon.word_count
    assert len(rows) == 6  # all toy words fit a 3-frame sequence


def test_exhaustive_nbest_order_is_input_order_independent():
    cfg = uniform_config()
    hmms = make_letter_hmms("abcd", cfg)
    a = nbest_exhaustive(
        Lexicon.from_words(["ab", "ba", "bb", "bc", "bcd", "c"]),
        hmms, cfg, ["a", "a"], 6,
    )
    b = nbest_exhaustive(
        Lexicon.from_words(["c", "bcd", "bc", "bb", "ba", "ab"]),
        hmms, cfg, ["a", "a"], 6,
    )
    assert a == b
