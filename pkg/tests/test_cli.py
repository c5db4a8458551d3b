import math

import pytest

from flcva.cli import main
from flcva.hmm import HmmConfig, format_config, quantize_log

from conftest import TOY_WORDS


@pytest.fixture
def toy_paths(tmp_path):
    wordlist = tmp_path / "words.txt"
    wordlist.write_text("\n".join(TOY_WORDS) + "\n")
    config = tmp_path / "hmm.cfg"
    config.write_text(
        format_config(
            HmmConfig(alphabet=tuple("abcd"), states_per_letter=1,
                      self_loop_prob=0.5, emission_peak=1.0)
        )
    )
    return wordlist, config, tmp_path


def test_build_trie_prints_stats(toy_paths, capsys):
    wordlist, _config, tmp = toy_paths
    out = tmp / "trie.auto"
    assert main(["build", str(wordlist), str(out), "--trie"]) == 0
    line = capsys.readouterr().out.strip()
    assert line.startswith("N=10 ")
    assert "W=6" in line


def test_build_dawg_prints_stats(toy_paths, capsys):
    wordlist, _config, tmp = toy_paths
    out = tmp / "dawg.auto"
    assert main(["build", str(wordlist), str(out), "--dawg"]) == 0
    assert capsys.readouterr().out.startswith("N=9 arcs=13 W=6")


def test_build_is_deterministic(toy_paths):
    wordlist, _config, tmp = toy_paths
    a, b = tmp / "a.auto", tmp / "b.auto"
    main(["build", str(wordlist), str(a), "--dawg"])
    main(["build", str(wordlist), str(b), "--dawg"])
    assert a.read_bytes() == b.read_bytes()


def test_build_missing_file_exits_2(toy_paths, capsys):
    _wordlist, _config, tmp = toy_paths
    assert main(["build", str(tmp / "nope.txt"), str(tmp / "o"), "--trie"]) == 2
    assert "error:" in capsys.readouterr().err


def test_build_empty_wordlist_exits_2(toy_paths, capsys):
    _wordlist, _config, tmp = toy_paths
    empty = tmp / "empty.txt"
    empty.write_text("\n\n")
    assert main(["build", str(empty), str(tmp / "o"), "--trie"]) == 2


def test_decode_onehot_bcd(toy_paths, capsys):
    wordlist, config, tmp = toy_paths
    auto = tmp / "dawg.auto"
    main(["build", str(wordlist), str(auto), "--dawg"])
    capsys.readouterr()
    obs = tmp / "obs.txt"
    obs.write_text("b c d\n")
    assert main(["decode", str(auto), str(config), str(obs)]) == 0
    lines = capsys.readouterr().out.splitlines()
    expected = f"1 bcd 3 {2 * quantize_log(math.log(0.5)):.12g}"
    assert lines[0] == expected
    assert lines[1].startswith("# ops=")


def test_decode_variants_identical_rankings(toy_paths, capsys):
    wordlist, config, tmp = toy_paths
    auto = tmp / "dawg.auto"
    main(["build", str(wordlist), str(auto), "--dawg"])
    obs = tmp / "obs.txt"
    obs.write_text("b c d\nc\n")
    outputs = {}
    for variant in ("tabular", "flipflop", "inplace",
                    "nbest-naive", "nbest-improved"):
        capsys.readouterr()
        main(["decode", str(auto), str(config), str(obs), "--variant", variant])
        lines = [
            ln for ln in capsys.readouterr().out.splitlines()
            if not ln.startswith("#")
        ]
        outputs[variant] = lines
    assert len(set(map(tuple, outputs.values()))) == 1


def test_decode_empty_obs(toy_paths, capsys):
    wordlist, config, tmp = toy_paths
    auto = tmp / "dawg.auto"
    main(["build", str(wordlist), str(auto), "--dawg"])
    capsys.readouterr()
    obs = tmp / "obs.txt"
    obs.write_text("")
    assert main(["decode", str(auto), str(config), str(obs)]) == 0
    assert capsys.readouterr().out == ""


def test_decode_bad_symbol_continues(toy_paths, capsys):
    wordlist, config, tmp = toy_paths
    auto = tmp / "dawg.auto"
    main(["build", str(wordlist), str(auto), "--dawg"])
    capsys.readouterr()
    obs = tmp / "obs.txt"
    obs.write_text("x y\nb c d\n")
    assert main(["decode", str(auto), str(config), str(obs)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# error:")
    assert "1 bcd 3" in out


def test_gen_deterministic_and_truth_lines(toy_paths):
    wordlist, config, tmp = toy_paths
    a, b = tmp / "a.obs", tmp / "b.obs"
    assert main(["gen", str(wordlist), str(config), str(a),
                 "--count", "5", "--seed", "42"]) == 0
    assert main(["gen", str(wordlist), str(config), str(b),
                 "--count", "5", "--seed", "42"]) == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert sum(1 for ln in lines if ln.startswith("# truth ")) == 5


def test_gen_zero_count(toy_paths):
    wordlist, config, tmp = toy_paths
    out = tmp / "empty.obs"
    assert main(["gen", str(wordlist), str(config), str(out), "--count", "0"]) == 0
    assert out.read_text() == ""


def test_gen_degenerate_spells_truth(toy_paths, tmp_path):
    wordlist, _config, tmp = toy_paths
    config = tmp_path / "det.cfg"
    config.write_text(
        format_config(
            HmmConfig(alphabet=tuple("abcd"), states_per_letter=1,
                      self_loop_prob=0.0, emission_peak=1.0)
        )
    )
    out = tmp / "det.obs"
    main(["gen", str(wordlist), str(config), str(out), "--count", "8"])
    from flcva.hmm import read_observations

    for symbols, truth in read_observations(out.read_text()):
        assert "".join(symbols) == truth


def test_verify_passes(toy_paths, capsys):
    wordlist, config, _tmp = toy_paths
    assert main(["verify", str(wordlist), str(config),
                 "--instances", "10", "--seed", "1"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_bench_csv(toy_paths, capsys):
    wordlist, config, _tmp = toy_paths
    assert main(["bench", str(wordlist), str(config),
                 "--sequences", "3", "--seed", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "structure,variant,N,p,T_total,sequences,wall_ms,ops,token_slots"
    assert len(lines) == 5
    rows = [ln.split(",") for ln in lines[1:]]
    by_key = {(r[0], r[1]): r for r in rows}
    assert set(by_key) == {
        ("trie", "flipflop"), ("trie", "inplace"),
        ("dawg", "flipflop"), ("dawg", "inplace"),
    }
    # flipflop and inplace agree on ops; token slots differ by 2x
    for structure in ("trie", "dawg"):
        flip = by_key[(structure, "flipflop")]
        inpl = by_key[(structure, "inplace")]
        assert flip[7] == inpl[7]
        assert int(flip[8]) == 2 * int(inpl[8])


def test_bench_synthetic_lexicon(tmp_path, capsys):
    # the synthetic generator draws from letters a-j
    config = tmp_path / "synth.cfg"
    config.write_text(
        format_config(
            HmmConfig(alphabet=tuple("abcdefghij"), states_per_letter=1,
                      self_loop_prob=0.3, emission_peak=0.9)
        )
    )
    assert main(["bench", str(config), "--sequences", "2", "--seed", "0",
                 "--synthetic-prefixes", "5", "--synthetic-suffixes", "4",
                 "--prefix-len", "2", "--suffix-len", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 5
    trie_ops = int(lines[1].split(",")[7])
    dawg_ops = int(lines[3].split(",")[7])
    assert dawg_ops < trie_ops


def test_bench_without_wordlist_or_synthetic_exits_2(toy_paths, capsys):
    _wordlist, config, _tmp = toy_paths
    assert main(["bench", str(config), "--sequences", "1"]) == 2
    assert "error:" in capsys.readouterr().err
