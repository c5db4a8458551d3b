"""Command-line front end: build, decode, gen, verify, bench.

Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys

from .automaton import (
    AutomatonError,
    build_trie,
    minimize,
    parse_automaton,
    read_wordlist,
    serialize_automaton,
    stats,
)
from .bench import CSV_HEADER, run_bench
from .decode import VARIANTS, DecodeError, format_result, nbest_improved, nbest_naive
from .hmm import HmmConfigError, format_observations, make_letter_hmms, parse_config, read_observations, sample_observations
from .lexhmm import ExpansionError, expand
from .pph import annotate_increments, compute_suff
from .synth import synthetic_lexicon
from .verify import run_verify

import random


class InputError(Exception):
    """Unusable input file or option combination (exit code 2)."""


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_lexicon(path: str):
    lexicon = read_wordlist(_read(path))
    if lexicon.word_count == 0:
        raise InputError(f"word list {path} is empty")
    return lexicon


def _load_config(path: str):
    return parse_config(_read(path))


def cmd_build(args) -> int:
    lexicon = _load_lexicon(args.wordlist)
    auto = build_trie(lexicon)
    if args.dawg:
        auto = minimize(auto)
    suff = compute_suff(auto)
    increments = annotate_increments(auto, suff)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(serialize_automaton(auto, suff, increments))
    st = stats(auto)
    print(
        f"N={st.node_count} arcs={st.arc_count} W={lexicon.word_count} "
        f"p={st.mean_degree:.6g}"
    )
    return 0


def cmd_decode(args) -> int:
    auto, suff, increments = parse_automaton(_read(args.automaton))
    if suff is None:
        raise InputError(f"{args.automaton} lacks path-index annotations")
    config = _load_config(args.config)
    letters = {lab for lab in auto.labels if lab is not None}
    letter_hmms = make_letter_hmms(letters, config)
    lexhmm = expand(auto, increments, letter_hmms, config)
    entries = read_observations(_read(args.obs))
    for symbols, _truth in entries:
        try:
            if args.variant in VARIANTS:
                result = VARIANTS[args.variant](lexhmm, symbols)
            elif args.variant == "nbest-naive":
                result = nbest_naive(lexhmm, symbols, args.nbest)
            else:
                result = nbest_improved(lexhmm, symbols, args.nbest)
        except DecodeError as exc:
            print(f"# error: {exc}")
            continue
        sys.stdout.write(format_result(result))
    return 0


def cmd_gen(args) -> int:
    lexicon = _load_lexicon(args.wordlist)
    config = _load_config(args.config)
    rng = random.Random(args.seed)
    entries = []
    for _ in range(args.count):
        word = rng.choice(lexicon.words)
        obs = sample_observations(word, config, rng.randrange(2**31))
        entries.append((obs, word))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(format_observations(entries))
    return 0


def cmd_verify(args) -> int:
    lexicon = _load_lexicon(args.wordlist)
    config = _load_config(args.config)
    report = run_verify(lexicon, config, args.instances, args.seed)
    if report.warning:
        print(f"warning: {report.warning}")
    if report.passed:
        print(f"PASS: {report.checks} checks over {report.instances} instances")
        return 0
    print(f"FAIL: {report.failure}")
    return 1


def cmd_bench(args) -> int:
    if args.synthetic_prefixes or args.synthetic_suffixes:
        if not (args.synthetic_prefixes and args.synthetic_suffixes):
            raise InputError("--synthetic-prefixes and --synthetic-suffixes go together")
        lexicon = synthetic_lexicon(
            args.synthetic_prefixes,
            args.synthetic_suffixes,
            prefix_len=args.prefix_len,
            suffix_len=args.suffix_len,
            seed=args.seed,
        )
    else:
        if args.wordlist is None:
            raise InputError("bench needs a word list or --synthetic-* pool sizes")
        lexicon = _load_lexicon(args.wordlist)
    config = _load_config(args.config)
    rows = run_bench(lexicon, config, args.sequences, args.seed)
    print(CSV_HEADER)
    for row in rows:
        print(row.csv())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flcva",
        description="Lexically-constrained Viterbi decoding toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="compile a word list into an automaton")
    p.add_argument("wordlist")
    p.add_argument("out")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--trie", action="store_true")
    grp.add_argument("--dawg", action="store_true")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("decode", help="decode observation sequences")
    p.add_argument("automaton")
    p.add_argument("config")
    p.add_argument("obs")
    p.add_argument("--nbest", type=int, default=1)
    p.add_argument(
        "--variant",
        choices=["tabular", "flipflop", "inplace", "nbest-naive", "nbest-improved"],
        default="inplace",
    )
    p.set_defaults(fn=cmd_decode)

    p = sub.add_parser("gen", help="generate synthetic observation sequences")
    p.add_argument("wordlist")
    p.add_argument("config")
    p.add_argument("out")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("verify", help="run the oracle equivalence suite")
    p.add_argument("wordlist")
    p.add_argument("config")
    p.add_argument("--instances", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("bench", help="trie vs DAWG benchmark (CSV)")
    p.add_argument("wordlist", nargs="?")
    p.add_argument("config")
    p.add_argument("--sequences", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--synthetic-prefixes", type=int, default=0)
    p.add_argument("--synthetic-suffixes", type=int, default=0)
    p.add_argument("--prefix-len", type=int, default=4)
    p.add_argument("--suffix-len", type=int, default=4)
    p.set_defaults(fn=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, AutomatonError, HmmConfigError, ExpansionError, DecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
