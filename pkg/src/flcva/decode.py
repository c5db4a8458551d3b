"""Token-passing Viterbi decoders over a lexicon HMM.

Variants: tabular (full lattice + backtracking, the reference), flip-flop
(two token arrays), in-place (single array, reverse topological scan), and
n-best with naive and improved merging.  Tokens carry a log score and an
integer path-history index; ties on score are broken toward the smaller
path index everywhere, so all variants and the oracle are bit-comparable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .hmm import NEG_INF
from .lexhmm import START, LexiconHMM
from .pph import decode_pph


class DecodeError(ValueError):
    """Invalid decode input (unknown symbol, bad n)."""


@dataclass
class DecodeResult:
    """Ranked (word, path index, log score) rows plus instrumentation."""

    ranking: list = field(default_factory=list)
    ops: int = 0            # predecessor visits in the inner loop
    merges: int = 0         # token-list merge operations
    token_slots: int = 0    # peak token storage
    emission_adds: int = 0  # emission log-prob additions


def format_result(result: DecodeResult) -> str:
    """One line per rank plus an instrumentation trailer."""
    lines = [
        f"{rank} {word} {pph} {score:.12g}"
        for rank, (word, pph, score) in enumerate(result.ranking, 1)
    ]
    lines.append(
        f"# ops={result.ops} merges={result.merges} "
        f"token_slots={result.token_slots}"
    )
    return "\n".join(lines) + "\n"


def _better(score: float, pph: int, ref_score: float, ref_pph: int) -> bool:
    return score > ref_score or (score == ref_score and pph < ref_pph)


def _symbol_index(lexhmm: LexiconHMM, symbol: str) -> int:
    try:
        return lexhmm.symbol_index[symbol]
    except KeyError:
        raise DecodeError(f"observation symbol {symbol!r} not in alphabet") from None


def _harvest_best(lexhmm: LexiconHMM, score, pph) -> list:
    best_s = NEG_INF
    best_p = 0
    found = False
    for f, log_w, dpph in lexhmm.finals:
        if score[f] == NEG_INF:
            continue
        s = score[f] + log_w
        p = pph[f] + dpph
        if not found or _better(s, p, best_s, best_p):
            best_s, best_p, found = s, p, True
    if not found:
        return []
    word = decode_pph(lexhmm.automaton, lexhmm.suff, best_p)
    return [(word, best_p, best_s)]


def viterbi_flipflop(lexhmm: LexiconHMM, obs) -> DecodeResult:
    """1-best token passing with two flip-flop arrays (2N token slots)."""
    n_states = lexhmm.n_states
    preds = lexhmm.preds
    emit_rows = lexhmm.emit_rows
    res = DecodeResult(token_slots=2 * n_states)
    prev_s = [NEG_INF] * n_states
    prev_p = [0] * n_states
    start_s = 0.0
    ops = 0
    for symbol in obs:
        si = _symbol_index(lexhmm, symbol)
        cur_s = [NEG_INF] * n_states
        cur_p = [0] * n_states
        for j in range(n_states):
            best_s = NEG_INF
            best_p = 0
            found = False
            for i, log_a, dpph in preds[j]:
                ops += 1
                s0 = start_s if i == START else prev_s[i]
                if s0 == NEG_INF or log_a == NEG_INF:
                    continue
                cand_s = s0 + log_a
                cand_p = (0 if i == START else prev_p[i]) + dpph
                if not found or _better(cand_s, cand_p, best_s, best_p):
                    best_s, best_p, found = cand_s, cand_p, True
            if found:
                cur_s[j] = best_s + emit_rows[j][si]
                cur_p[j] = best_p
        prev_s, prev_p = cur_s, cur_p
        start_s = NEG_INF
    res.ops = ops
    if obs:
        res.ranking = _harvest_best(lexhmm, prev_s, prev_p)
    return res


def viterbi_inplace(lexhmm: LexiconHMM, obs) -> DecodeResult:
    """1-best with a single token array (N slots), scanned in reverse
    topological order so each predecessor is read before being overwritten."""
    n_states = lexhmm.n_states
    preds = lexhmm.preds
    emit_rows = lexhmm.emit_rows
    res = DecodeResult(token_slots=n_states)
    score = [NEG_INF] * n_states
    pph = [0] * n_states
    start_s = 0.0
    ops = 0
    scan = tuple(reversed(lexhmm.decode_order))
    for symbol in obs:
        si = _symbol_index(lexhmm, symbol)
        for j in scan:
            best_s = NEG_INF
            best_p = 0
            found = False
            for i, log_a, dpph in preds[j]:
                ops += 1
                s0 = start_s if i == START else score[i]
                if s0 == NEG_INF or log_a == NEG_INF:
                    continue
                cand_s = s0 + log_a
                cand_p = (0 if i == START else pph[i]) + dpph
                if not found or _better(cand_s, cand_p, best_s, best_p):
                    best_s, best_p, found = cand_s, cand_p, True
            if found:
                score[j] = best_s + emit_rows[j][si]
                pph[j] = best_p
            else:
                score[j] = NEG_INF
                pph[j] = 0
        start_s = NEG_INF
    res.ops = ops
    if obs:
        res.ranking = _harvest_best(lexhmm, score, pph)
    return res


def viterbi_tabular(lexhmm: LexiconHMM, obs) -> DecodeResult:
    """Reference 1-best: full T x N lattice with maximizing predecessors,
    winner recovered by backtracking (N*T token slots)."""
    n_states = lexhmm.n_states
    preds = lexhmm.preds
    emit_rows = lexhmm.emit_rows
    t_len = len(obs)
    res = DecodeResult(token_slots=n_states * t_len)
    if t_len == 0:
        return res
    lat_s = [[NEG_INF] * n_states for _ in range(t_len)]
    lat_p = [[0] * n_states for _ in range(t_len)]
    back = [[START] * n_states for _ in range(t_len)]
    ops = 0
    for t, symbol in enumerate(obs):
        si = _symbol_index(lexhmm, symbol)
        prev_s = lat_s[t - 1] if t > 0 else None
        prev_p = lat_p[t - 1] if t > 0 else None
        start_s = 0.0 if t == 0 else NEG_INF
        for j in range(n_states):
            best_s = NEG_INF
            best_p = 0
            best_i = START
            found = False
            for i, log_a, dpph in preds[j]:
                ops += 1
                s0 = start_s if i == START else (prev_s[i] if t > 0 else NEG_INF)
                if s0 == NEG_INF or log_a == NEG_INF:
                    continue
                cand_s = s0 + log_a
                cand_p = (0 if i == START else prev_p[i]) + dpph
                if not found or _better(cand_s, cand_p, best_s, best_p):
                    best_s, best_p, best_i, found = cand_s, cand_p, i, True
            if found:
                lat_s[t][j] = best_s + emit_rows[j][si]
                lat_p[t][j] = best_p
                back[t][j] = best_i
    res.ops = ops

    best_s = NEG_INF
    best_p = 0
    best_f = None
    for f, log_w, dpph in lexhmm.finals:
        if lat_s[t_len - 1][f] == NEG_INF:
            continue
        s = lat_s[t_len - 1][f] + log_w
        p = lat_p[t_len - 1][f] + dpph
        if best_f is None or _better(s, p, best_s, best_p):
            best_s, best_p, best_f = s, p, f
    if best_f is None:
        return res

    # Backtrack the state path and spell the word from node changes.
    states = []
    j = best_f
    for t in range(t_len - 1, -1, -1):
        states.append(j)
        j = back[t][j]
    states.reverse()
    letters = []
    prev_node = None
    for state in states:
        node = lexhmm.state_node[state]
        if node != prev_node:
            letters.append(lexhmm.state_letter[state])
            prev_node = node
    res.ranking = [("".join(letters), best_p, best_s)]
    return res


# --- n-best ----------------------------------------------------------------


def _merge_token(lst: list, score: float, pph: int, n: int, from_pos: int = 0) -> bool:
    """Insert (score, pph) into a sorted distinct-pph token list capped at n.

    A candidate whose pph already exists replaces the entry only if strictly
    better.  Insertion position search starts at from_pos (the improved
    variant merges only from the k-th element to the end).
    """
    for idx, (es, ep) in enumerate(lst):
        if ep == pph:
            if _better(score, pph, es, ep):
                del lst[idx]
                break
            return False
    pos = from_pos
    while pos < len(lst) and not _better(score, pph, lst[pos][0], lst[pos][1]):
        pos += 1
    if pos >= n:
        return False
    lst.insert(pos, (score, pph))
    del lst[n:]
    return True


def _harvest_nbest(lexhmm: LexiconHMM, lists, n: int) -> list:
    merged: list = []
    for f, log_w, dpph in lexhmm.finals:
        for s, p in lists[f]:
            _merge_token(merged, s + log_w, p + dpph, n)
    return [
        (decode_pph(lexhmm.automaton, lexhmm.suff, p), p, s) for s, p in merged
    ]


def nbest_naive(lexhmm: LexiconHMM, obs, n: int) -> DecodeResult:
    """n-best with naive merging: every (predecessor, rank) candidate is
    built, given its emission term, and merged systematically."""
    if n < 1:
        raise DecodeError("n must be >= 1")
    n_states = lexhmm.n_states
    preds = lexhmm.preds
    emit_rows = lexhmm.emit_rows
    res = DecodeResult(token_slots=2 * n_states * n)
    prev: list = [[] for _ in range(n_states)]
    start_list = [(0.0, 0)]
    for t, symbol in enumerate(obs):
        si = _symbol_index(lexhmm, symbol)
        cur: list = []
        for j in range(n_states):
            lst: list = []
            b = emit_rows[j][si]
            for i, log_a, dpph in preds[j]:
                src = (start_list if t == 0 else ()) if i == START else prev[i]
                for s0, p0 in src:
                    res.ops += 1
                    res.merges += 1
                    if log_a == NEG_INF:
                        continue
                    s = (s0 + log_a) + b
                    res.emission_adds += 1
                    if s == NEG_INF:
                        continue
                    _merge_token(lst, s, p0 + dpph, n)
            cur.append(lst)
        prev = cur
    if obs:
        res.ranking = _harvest_nbest(lexhmm, prev, n)
    return res


def nbest_improved(lexhmm: LexiconHMM, obs, n: int) -> DecodeResult:
    """n-best with improved merging: rank-outer/predecessor-inner loop order,
    merge window restricted to the k-th element onward, path-index update
    only on merged tokens, emission added once per surviving token."""
    if n < 1:
        raise DecodeError("n must be >= 1")
    n_states = lexhmm.n_states
    preds = lexhmm.preds
    emit_rows = lexhmm.emit_rows
    res = DecodeResult(token_slots=2 * n_states * n)
    prev: list = [[] for _ in range(n_states)]
    start_list = [(0.0, 0)]
    for t, symbol in enumerate(obs):
        si = _symbol_index(lexhmm, symbol)
        cur: list = []
        for j in range(n_states):
            lst: list = []
            for k in range(n):
                for i, log_a, dpph in preds[j]:
                    res.ops += 1
                    src = (start_list if t == 0 else ()) if i == START else prev[i]
                    if k >= len(src):
                        continue
                    s0, p0 = src[k]
                    if log_a == NEG_INF:
                        continue
                    s = s0 + log_a
                    if len(lst) == n:
                        # Quick reject against the current worst token; the
                        # path index is computed only when it can matter.
                        ls, lp = lst[-1]
                        if s < ls or (s == ls and p0 + dpph >= lp):
                            continue
                    res.merges += 1
                    _merge_token(lst, s, p0 + dpph, n, from_pos=k)
            b = emit_rows[j][si]
            if b == NEG_INF:
                lst = []
            else:
                res.emission_adds += len(lst)
                lst = [(s + b, p) for s, p in lst]
            cur.append(lst)
        prev = cur
    if obs:
        res.ranking = _harvest_nbest(lexhmm, prev, n)
    return res


VARIANTS = {
    "tabular": viterbi_tabular,
    "flipflop": viterbi_flipflop,
    "inplace": viterbi_inplace,
}
