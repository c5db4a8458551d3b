import pytest

from flcva import (
    HmmConfig,
    Lexicon,
    annotate_increments,
    build_trie,
    compute_suff,
    expand,
    make_letter_hmms,
    minimize,
)

TOY_WORDS = ["ab", "ba", "bb", "bc", "bcd", "c"]
TOY_PPH = {"ab": 0, "ba": 1, "bb": 2, "bcd": 3, "bc": 4, "c": 5}


@pytest.fixture
def toy_lexicon():
    return Lexicon.from_words(TOY_WORDS)


@pytest.fixture
def toy_trie(toy_lexicon):
    return build_trie(toy_lexicon)


@pytest.fixture
def toy_dawg(toy_trie):
    return minimize(toy_trie)


@pytest.fixture
def toy_annotated(toy_dawg):
    suff = compute_suff(toy_dawg)
    return toy_dawg, suff, annotate_increments(toy_dawg, suff)


def onehot_config(states=1, self_loop=0.5, alphabet="abcd"):
    return HmmConfig(
        alphabet=tuple(alphabet),
        states_per_letter=states,
        self_loop_prob=self_loop,
        emission_peak=1.0,
    )


def uniform_config(states=1, self_loop=0.5, alphabet="abcd"):
    # emission_peak = 1/|alphabet| makes every emission entry exactly equal
    # (0.75/3 == 0.25 in binary), so score ties are exact.
    return HmmConfig(
        alphabet=tuple(alphabet),
        states_per_letter=states,
        self_loop_prob=self_loop,
        emission_peak=1.0 / len(alphabet),
    )


@pytest.fixture
def toy_lexhmm_onehot(toy_annotated):
    dawg, _suff, inc = toy_annotated
    cfg = onehot_config()
    hmms = make_letter_hmms("abcd", cfg)
    return expand(dawg, inc, hmms, cfg), cfg, hmms


@pytest.fixture
def toy_lexhmm_uniform(toy_annotated):
    dawg, _suff, inc = toy_annotated
    cfg = uniform_config()
    hmms = make_letter_hmms("abcd", cfg)
    return expand(dawg, inc, hmms, cfg), cfg, hmms
