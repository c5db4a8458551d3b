"""Synthetic lexicon generators for verification and benchmarking."""

from __future__ import annotations

import random

from .automaton import Lexicon


def _distinct_words(rng: random.Random, count: int, alphabet: str, length: int) -> list[str]:
    out: set[str] = set()
    space = len(alphabet) ** length
    if count > space:
        raise ValueError(f"cannot draw {count} distinct words of length {length}")
    while len(out) < count:
        out.add("".join(rng.choice(alphabet) for _ in range(length)))
    return sorted(out)


def synthetic_lexicon(
    n_prefixes: int,
    n_suffixes: int,
    prefix_len: int = 4,
    suffix_len: int = 4,
    alphabet: str = "abcdefghij",
    seed: int = 0,
) -> Lexicon:
    """Prefix-pool x suffix-pool cross product; maximizes DAWG suffix sharing."""
    rng = random.Random(seed)
    prefixes = _distinct_words(rng, n_prefixes, alphabet, prefix_len)
    suffixes = _distinct_words(rng, n_suffixes, alphabet, suffix_len)
    return Lexicon.from_words(p + s for p in prefixes for s in suffixes)


def random_lexicon(
    n_words: int,
    alphabet: str = "abcdefghij",
    min_len: int = 1,
    max_len: int = 8,
    seed: int = 0,
) -> Lexicon:
    """Random distinct words with lengths drawn uniformly in [min_len, max_len]."""
    rng = random.Random(seed)
    out: set[str] = set()
    while len(out) < n_words:
        length = rng.randint(min_len, max_len)
        out.add("".join(rng.choice(alphabet) for _ in range(length)))
    return Lexicon.from_words(out)
