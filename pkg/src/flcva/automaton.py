"""Lexicon node-automata: trie construction, DAWG minimization, stats, serialization.

Nodes carry letter labels; the root and the shared sink are unlabeled and
structural.  Successor lists are kept in canonical order: letter arcs
ascending by letter, the arc to the sink last.  This ordering is what makes
path indexing (see pph.py) deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

ROOT_LABEL = "ROOT"
SINK_LABEL = "SINK"

FORMAT_VERSION = "flcva-automaton-v1"


class AutomatonError(ValueError):
    """Invalid lexicon input or malformed automaton structure."""


@dataclass(frozen=True)
class Lexicon:
    """Deduplicated, sorted word list."""

    words: tuple[str, ...]

    @classmethod
    def from_words(cls, words: Iterable[str]) -> "Lexicon":
        seen: set[str] = set()
        for w in words:
            if w == "":
                raise AutomatonError("empty word is not allowed in a lexicon")
            seen.add(w)
        return cls(tuple(sorted(seen)))

    @property
    def word_count(self) -> int:
        return len(self.words)


@dataclass(frozen=True)
class NodeAutomaton:
    """Rooted DAG of letter-labeled nodes with a common sink.

    labels[i] is the letter of node i, or None for root/sink.
    succs[i] is the canonical-order successor id tuple of node i.
    topo_index is a topological numbering: index(src) < index(dst) on arcs.
    """

    labels: tuple
    succs: tuple
    root: int
    sink: int
    topo_index: tuple
    word_count: int

    @property
    def node_count(self) -> int:
        return len(self.labels)

    @property
    def arc_count(self) -> int:
        return sum(len(s) for s in self.succs)

    def arcs(self) -> Iterator[tuple[int, int]]:
        """All arcs as (src, dst), grouped by src, in canonical succ order."""
        for src, lst in enumerate(self.succs):
            for dst in lst:
                yield src, dst


@dataclass(frozen=True)
class AutomatonStats:
    node_count: int
    arc_count: int
    mean_degree: float  # arc_count / node_count


def read_wordlist(text: str) -> Lexicon:
    """Parse a UTF-8 word list: one word per line, blank lines ignored."""
    words = [line.strip() for line in text.splitlines()]
    return Lexicon.from_words(w for w in words if w)


def _topo_order(succs, root: int, n: int) -> list[int]:
    """Reverse-postorder topological index; deterministic under canonical
    successor order.  Raises on cycles or nodes unreachable from the root."""
    state = [0] * n  # 0 unvisited, 1 on stack, 2 done
    post: list[int] = []
    stack = [(root, iter(succs[root]))]
    state[root] = 1
    while stack:
        node, it = stack[-1]
        nxt = next(it, None)
        if nxt is None:
            stack.pop()
            state[node] = 2
            post.append(node)
        elif state[nxt] == 1:
            raise AutomatonError("cycle detected in automaton")
        elif state[nxt] == 0:
            state[nxt] = 1
            stack.append((nxt, iter(succs[nxt])))
    if any(s != 2 for s in state):
        raise AutomatonError("node unreachable from root")
    index = [0] * n
    for rank, node in enumerate(post):
        index[node] = n - 1 - rank
    return index


def topological_index(automaton: NodeAutomaton) -> tuple[int, ...]:
    """Recompute the topological numbering of an automaton."""
    return tuple(_topo_order(automaton.succs, automaton.root, automaton.node_count))


def _finalize(labels, succs, root, sink, word_count) -> NodeAutomaton:
    topo = _topo_order(succs, root, len(labels))
    return NodeAutomaton(
        labels=tuple(labels),
        succs=tuple(tuple(s) for s in succs),
        root=root,
        sink=sink,
        topo_index=tuple(topo),
        word_count=word_count,
    )


def build_trie(lexicon: Lexicon) -> NodeAutomaton:
    """Build the trie node-automaton with a single shared sink.

    One node per distinct word prefix; every word end routes to the sink.
    """
    if lexicon.word_count == 0:
        raise AutomatonError("cannot build an automaton from an empty lexicon")
    for w in lexicon.words:
        if w == "":
            raise AutomatonError("empty word is not allowed in a lexicon")

    # Nested dict trie: node -> (children by letter, terminal flag).
    top: dict = {}
    top_terminal = False
    for w in lexicon.words:
        children = top
        node = None
        for ch in w:
            if ch not in children:
                children[ch] = [{}, False]
            node = children[ch]
            children = node[0]
        node[1] = True

    labels: list = [None]
    succs: list = [None]

    def emit(node_id: int, children: dict, terminal: bool) -> None:
        lst: list[int] = []
        for letter in sorted(children):
            cid = len(labels)
            labels.append(letter)
            succs.append(None)
            lst.append(cid)
            emit(cid, children[letter][0], children[letter][1])
        if terminal:
            lst.append(-1)  # sink placeholder
        succs[node_id] = lst

    emit(0, top, top_terminal)
    sink = len(labels)
    labels.append(None)
    succs.append([])
    for lst in succs:
        for i, dst in enumerate(lst):
            if dst == -1:
                lst[i] = sink
    return _finalize(labels, succs, 0, sink, lexicon.word_count)


def minimize(trie: NodeAutomaton) -> NodeAutomaton:
    """Merge nodes with equal letter label and equal right language.

    Bottom-up hash-consing on (label, successor representative ids); processes
    nodes in decreasing topological index so successors are resolved first.
    Preserves the language and the canonical successor ordering.
    """
    n = trie.node_count
    order = sorted(range(n), key=lambda x: trie.topo_index[x], reverse=True)
    rep: dict[int, int] = {}
    register: dict = {}
    for node in order:
        if node in (trie.sink, trie.root):
            rep[node] = node
            continue
        sig = (trie.labels[node], tuple(rep[s] for s in trie.succs[node]))
        rep[node] = register.setdefault(sig, node)

    # Rebuild reachable structure with fresh preorder ids, sink last.
    new_id: dict[int, int] = {trie.root: 0}
    labels: list = [None]
    succ_map: dict[int, list[int]] = {}

    def walk(old: int) -> None:
        lst: list[int] = []
        succ_map[new_id[old]] = lst
        for x in trie.succs[old]:
            s = rep[x]
            if s == trie.sink:
                lst.append(-1)
            elif s in new_id:
                lst.append(new_id[s])
            else:
                new_id[s] = len(labels)
                labels.append(trie.labels[s])
                lst.append(new_id[s])
                walk(s)

    walk(trie.root)
    sink = len(labels)
    labels.append(None)
    succs = [succ_map[i] for i in range(sink)]
    succs.append([])
    for lst in succs:
        for i, dst in enumerate(lst):
            if dst == -1:
                lst[i] = sink
    return _finalize(labels, succs, 0, sink, trie.word_count)


def language(automaton: NodeAutomaton) -> list[str]:
    """All root-to-sink label strings, in canonical DFS completion order."""
    words: list[str] = []

    def rec(node: int, prefix: str) -> None:
        for s in automaton.succs[node]:
            if s == automaton.sink:
                words.append(prefix)
            else:
                rec(s, prefix + automaton.labels[s])

    rec(automaton.root, "")
    return words


def stats(automaton: NodeAutomaton) -> AutomatonStats:
    n = automaton.node_count
    a = automaton.arc_count
    return AutomatonStats(node_count=n, arc_count=a, mean_degree=a / n)


def serialize_automaton(
    automaton: NodeAutomaton,
    suff: tuple[int, ...] | None = None,
    increments: tuple | None = None,
) -> str:
    """Versioned structured-text serialization; byte-exact round trip.

    With suff/increments the node and arc lines carry the path-index
    annotations (suff per node, delta-PPH per arc).
    """
    annotated = suff is not None
    if annotated and increments is None:
        raise AutomatonError("suff and increments must be given together")
    lines = [
        FORMAT_VERSION,
        f"NODES {automaton.node_count} ARCS {automaton.arc_count} "
        f"WORDS {automaton.word_count}",
    ]
    for i in range(automaton.node_count):
        if i == automaton.root:
            label = ROOT_LABEL
        elif i == automaton.sink:
            label = SINK_LABEL
        else:
            label = automaton.labels[i]
        line = f"node {i} {label} {automaton.topo_index[i]}"
        if annotated:
            line += f" {suff[i]}"
        lines.append(line)
    for src in range(automaton.node_count):
        for pos, dst in enumerate(automaton.succs[src]):
            line = f"arc {src} {dst}"
            if annotated:
                line += f" {increments[src][pos]}"
            lines.append(line)
    return "\n".join(lines) + "\n"


def parse_automaton(text: str):
    """Inverse of serialize_automaton.

    Returns (automaton, suff, increments); the annotations are None when the
    file carries the base (unannotated) format.
    """
    lines = text.splitlines()
    if not lines or lines[0] != FORMAT_VERSION:
        raise AutomatonError("unrecognized automaton format version")
    header = lines[1].split()
    if len(header) != 6 or header[0] != "NODES" or header[2] != "ARCS" or header[4] != "WORDS":
        raise AutomatonError("malformed automaton header")
    n, n_arcs, w = int(header[1]), int(header[3]), int(header[5])

    labels: list = [None] * n
    topo: list = [0] * n
    suff: list = [0] * n
    succs: list = [[] for _ in range(n)]
    incs: list = [[] for _ in range(n)]
    root = sink = None
    annotated = None
    node_lines = lines[2 : 2 + n]
    arc_lines = lines[2 + n : 2 + n + n_arcs]
    if len(node_lines) != n or len(arc_lines) != n_arcs:
        raise AutomatonError("truncated automaton file")
    for line in node_lines:
        parts = line.split()
        if parts[0] != "node" or len(parts) not in (4, 5):
            raise AutomatonError(f"malformed node line: {line!r}")
        if annotated is None:
            annotated = len(parts) == 5
        elif annotated != (len(parts) == 5):
            raise AutomatonError("inconsistent node annotations")
        i = int(parts[1])
        if parts[2] == ROOT_LABEL:
            root = i
        elif parts[2] == SINK_LABEL:
            sink = i
        else:
            labels[i] = parts[2]
        topo[i] = int(parts[3])
        if annotated:
            suff[i] = int(parts[4])
    if root is None or sink is None:
        raise AutomatonError("automaton file lacks ROOT or SINK node")
    for line in arc_lines:
        parts = line.split()
        if parts[0] != "arc" or len(parts) not in (3, 4):
            raise AutomatonError(f"malformed arc line: {line!r}")
        if annotated != (len(parts) == 4):
            raise AutomatonError("inconsistent arc annotations")
        src, dst = int(parts[1]), int(parts[2])
        succs[src].append(dst)
        if annotated:
            incs[src].append(int(parts[3]))
    auto = NodeAutomaton(
        labels=tuple(labels),
        succs=tuple(tuple(s) for s in succs),
        root=root,
        sink=sink,
        topo_index=tuple(topo),
        word_count=w,
    )
    for src, dst in auto.arcs():
        if auto.topo_index[src] >= auto.topo_index[dst]:
            raise AutomatonError("stored topological index is invalid")
    if annotated:
        return auto, tuple(suff), tuple(tuple(i) for i in incs)
    return auto, None, None
