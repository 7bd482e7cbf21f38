"""Finite automata for numeration languages.

When the per-length maximal words are eventually periodic in shape, they
decompose as a finite set plus d families x y^* z (one per length residue
mod d).  From that decomposition this module builds a small NFA accepting
a superset of the numeration language together with two guard languages
K1 (some suffix beats the maximal word of its length, for short lengths)
and K2 (a suffix beats z after reading x y^k); the language itself is the
NFA's language minus the guards.  The module also implements the reverse
direction: extracting the maximal-word language of an arbitrary DFA by
subtracting the words that are lexicographically beaten at their own
length.

All automata are immutable once built, deterministic automata are always
complete, and exports are byte-deterministic (canonical breadth-first
numbering, sorted edges).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .errors import DecompositionMismatch
from .numeration import PositionalSystem, Word, oracle_language

EPS = None


class Nfa:
    """Nondeterministic automaton with optional epsilon transitions."""

    def __init__(self, alphabet_size: int):
        self.alphabet_size = alphabet_size
        self.trans: list[dict] = []
        self.initials: set[int] = set()
        self.finals: set[int] = set()

    def add_state(self) -> int:
        self.trans.append({})
        return len(self.trans) - 1

    def add_edge(self, src: int, label, dst: int):
        self.trans[src].setdefault(label, set()).add(dst)

    def eps_closure(self, states) -> frozenset:
        seen = set(states)
        stack = list(states)
        while stack:
            s = stack.pop()
            for t in self.trans[s].get(EPS, ()):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def accepts(self, word) -> bool:
        cur = self.eps_closure(self.initials)
        for a in word:
            nxt = set()
            for s in cur:
                nxt |= self.trans[s].get(a, set())
            cur = self.eps_closure(nxt)
            if not cur:
                return False
        return bool(cur & self.finals)


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic automaton: delta[state][digit] -> state."""

    alphabet_size: int
    delta: tuple
    initial: int
    finals: frozenset

    @property
    def n_states(self):
        return len(self.delta)

    def accepts(self, word) -> bool:
        s = self.initial
        for a in word:
            s = self.delta[s][a]
        return s in self.finals

    def count_per_length(self, max_len: int) -> list[int]:
        """Number of accepted words of each length 0..max_len."""
        vec = [0] * self.n_states
        vec[self.initial] = 1
        out = [sum(vec[s] for s in self.finals)]
        for _ in range(max_len):
            nxt = [0] * self.n_states
            for s, c in enumerate(vec):
                if c:
                    for a in range(self.alphabet_size):
                        nxt[self.delta[s][a]] += c
            vec = nxt
            out.append(sum(vec[s] for s in self.finals))
        return out

    def language_upto(self, max_len: int) -> set[Word]:
        out = set()
        stack = [(self.initial, ())]
        while stack:
            s, w = stack.pop()
            if s in self.finals:
                out.add(w)
            if len(w) < max_len:
                for a in range(self.alphabet_size):
                    stack.append((self.delta[s][a], w + (a,)))
        return out


def membership(d: Dfa, word) -> bool:
    return d.accepts(word)


def determinize(nfa: Nfa) -> Dfa:
    start = nfa.eps_closure(nfa.initials)
    index = {start: 0}
    order = [start]
    delta = []
    finals = set()
    k = 0
    while k < len(order):
        cur = order[k]
        if cur & nfa.finals:
            finals.add(k)
        row = []
        for a in range(nfa.alphabet_size):
            nxt = set()
            for s in cur:
                nxt |= nfa.trans[s].get(a, set())
            closed = nfa.eps_closure(nxt)
            if closed not in index:
                index[closed] = len(order)
                order.append(closed)
            row.append(index[closed])
        delta.append(tuple(row))
        k += 1
    return Dfa(nfa.alphabet_size, tuple(delta), 0, frozenset(finals))


def _product(a: Dfa, b: Dfa, accept) -> Dfa:
    assert a.alphabet_size == b.alphabet_size
    index = {(a.initial, b.initial): 0}
    order = [(a.initial, b.initial)]
    delta = []
    finals = set()
    k = 0
    while k < len(order):
        s, t = order[k]
        if accept(s in a.finals, t in b.finals):
            finals.add(k)
        row = []
        for dig in range(a.alphabet_size):
            pair = (a.delta[s][dig], b.delta[t][dig])
            if pair not in index:
                index[pair] = len(order)
                order.append(pair)
            row.append(index[pair])
        delta.append(tuple(row))
        k += 1
    return Dfa(a.alphabet_size, tuple(delta), 0, frozenset(finals))


def difference(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, lambda x, y: x and not y)


def union(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, lambda x, y: x or y)


def intersection(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, lambda x, y: x and y)


def complement(a: Dfa) -> Dfa:
    return Dfa(a.alphabet_size, a.delta, a.initial,
               frozenset(range(a.n_states)) - a.finals)


def _canonical(d: Dfa) -> Dfa:
    """Breadth-first renumbering from the initial state in digit order;
    unreachable states are dropped.  Makes exports deterministic."""
    index = {d.initial: 0}
    order = [d.initial]
    k = 0
    while k < len(order):
        s = order[k]
        for a in range(d.alphabet_size):
            t = d.delta[s][a]
            if t not in index:
                index[t] = len(order)
                order.append(t)
        k += 1
    delta = tuple(tuple(index[d.delta[s][a]] for a in range(d.alphabet_size))
                  for s in order)
    finals = frozenset(index[s] for s in d.finals if s in index)
    return Dfa(d.alphabet_size, delta, 0, finals)


def minimize(d: Dfa) -> Dfa:
    """Partition-refinement minimisation followed by canonical numbering."""
    d = _canonical(d)
    n = d.n_states
    block = [1 if s in d.finals else 0 for s in range(n)]
    while True:
        sig = {}
        new = [0] * n
        for s in range(n):
            key = (block[s],) + tuple(block[d.delta[s][a]] for a in range(d.alphabet_size))
            if key not in sig:
                sig[key] = len(sig)
            new[s] = sig[key]
        if new == block:
            break
        block = new
    m = max(block) + 1
    delta = [None] * m
    for s in range(n):
        delta[block[s]] = tuple(block[d.delta[s][a]] for a in range(d.alphabet_size))
    finals = frozenset(block[s] for s in d.finals)
    return _canonical(Dfa(d.alphabet_size, tuple(delta), block[d.initial], finals))


def dfa_equal(a: Dfa, b: Dfa) -> bool:
    """Language equality by product search (alphabets must match)."""
    if a.alphabet_size != b.alphabet_size:
        return False
    seen = {(a.initial, b.initial)}
    stack = [(a.initial, b.initial)]
    while stack:
        s, t = stack.pop()
        if (s in a.finals) != (t in b.finals):
            return False
        for dig in range(a.alphabet_size):
            pair = (a.delta[s][dig], b.delta[t][dig])
            if pair not in seen:
                seen.add(pair)
                stack.append(pair)
    return True


def json_export(d: Dfa) -> str:
    d = _canonical(d)
    edges = sorted((s, a, d.delta[s][a])
                   for s in range(d.n_states) for a in range(d.alphabet_size))
    doc = {
        "alphabet": d.alphabet_size,
        "states": d.n_states,
        "initial": d.initial,
        "accepting": sorted(d.finals),
        "edges": [list(e) for e in edges],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def dot_export(d: Dfa) -> str:
    d = _canonical(d)
    lines = ["digraph automaton {", "  rankdir=LR;", '  start [shape=none, label=""];']
    for s in range(d.n_states):
        shape = "doublecircle" if s in d.finals else "circle"
        lines.append(f"  q{s} [shape={shape}, label=\"{s}\"];")
    lines.append(f"  start -> q{d.initial};")
    for s in range(d.n_states):
        by_target: dict[int, list[int]] = {}
        for a in range(d.alphabet_size):
            by_target.setdefault(d.delta[s][a], []).append(a)
        for t in sorted(by_target):
            label = ",".join(str(a) for a in sorted(by_target[t]))
            lines.append(f"  q{s} -> q{t} [label=\"{label}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# slender decomposition of the maximal words
# ---------------------------------------------------------------------------


@dataclass
class SlenderDecomposition:
    """Maximal words as a finite set plus families x y^* z, one family per
    length residue class: family j covers the lengths |xz| + k d that are
    congruent to j mod d."""

    d: int
    start_length: int
    finite_part: list[Word]
    pieces: list[tuple[Word, Word, Word]]    # indexed by length residue mod d
    name: str | None = None

    def words_of_length(self, length: int) -> list[Word]:
        out = [w for w in self.finite_part if len(w) == length]
        for x, y, z in self.pieces:
            base = len(x) + len(z)
            if length >= base and (length - base) % self.d == 0:
                k = (length - base) // self.d
                out.append(x + y * k + z)
        return out

    def word(self, length: int) -> Word:
        ws = self.words_of_length(length)
        if len(ws) != 1:
            raise DecompositionMismatch(
                f"{len(ws)} candidate words of length {length}")
        return ws[0]

    def piece_for_residue(self, j: int) -> tuple[Word, Word, Word]:
        for x, y, z in self.pieces:
            if (len(x) + len(z)) % self.d == j % self.d:
                return (x, y, z)
        raise DecompositionMismatch(f"no family for residue {j}")


def _lcp(a: Word, b: Word) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def decompose_max_words(sys: PositionalSystem, report) -> SlenderDecomposition:
    """Extract the eventually periodic shape of the maximal words.

    ``report`` supplies the certified length period (lcm of the per-vertex
    periods, in word lengths) and a scan limit; the alignment itself is
    re-validated structurally on four consecutive family members, and a
    failure raises DecompositionMismatch (it would indicate a certificate
    bug, never something to patch over)."""
    d = report.global_length_period()
    limit = report.decomposition_scan_limit()
    for n_start in range(1, limit + 1):
        pieces = []
        ok = True
        for j in range(d):
            L = n_start + j
            w = [sys.max_word(L + k * d) for k in range(4)]
            cut = _lcp(w[0], w[1])
            x = w[0][:cut]
            z = w[0][cut:]
            y = w[1][cut:cut + d]
            if not x:
                ok = False
                break
            if z and y and z[0] == y[0]:
                ok = False
                break
            if (w[1] != x + y + z or w[2] != x + y + y + z
                    or w[3] != x + y + y + y + z):
                ok = False
                break
            pieces.append((x, y, z))
        if ok:
            finite = [sys.max_word(L) for L in range(n_start)]
            pieces_by_residue = sorted(
                pieces, key=lambda piece: (len(piece[0]) + len(piece[2])) % d)
            return SlenderDecomposition(d=d, start_length=n_start,
                                        finite_part=finite,
                                        pieces=pieces_by_residue,
                                        name=sys.name)
    raise DecompositionMismatch(
        f"maximal words do not settle into a period-{d} shape below length {limit}")


# ---------------------------------------------------------------------------
# the language automaton
# ---------------------------------------------------------------------------


def _trie(nfa: Nfa, words) -> tuple[int, list[int]]:
    """Add a trie accepting exactly ``words`` to ``nfa``; returns (root,
    accepting states)."""
    root = nfa.add_state()
    nodes: dict[Word, int] = {(): root}
    for w in sorted(words):
        for k in range(1, len(w) + 1):
            if w[:k] not in nodes:
                s = nfa.add_state()
                nodes[w[:k]] = s
                nfa.add_edge(nodes[w[:k - 1]], w[k - 1], s)
    finals = [nodes[w] for w in sorted(words)]
    nfa.finals.update(finals)
    return root, finals


def build_numeration_nfa(decomp: SlenderDecomposition,
                         sys: PositionalSystem) -> tuple[Nfa, Dfa, Dfa]:
    """The guessing automaton plus the two guard languages.

    The automaton runs d spines, one per length residue: spine j reads
    x_j then loops on y_j; reading a strictly smaller digit at any spine
    position drops to the spine matching the remaining length, short words
    are accepted through a trie of the language below the start length,
    and the suffix trie after x_j accepts words no greater than z_j.  The
    numeration language is the automaton's language minus the guards."""
    d = decomp.d
    n0 = decomp.start_length
    A = sys.alphabet_max() + 1
    short_words = oracle_language(sys, n0 - 1) if n0 > 0 else {()}

    nfa = Nfa(A)
    spine: dict[tuple[int, int], int] = {}
    pieces = [decomp.piece_for_residue(j) for j in range(d)]
    for j in range(d):
        x, y, _ = pieces[j]
        for k in range(len(x) + len(y)):
            spine[(j, k)] = nfa.add_state()
    for j in range(d):
        x, y, z = pieces[j]
        xy = x + y
        L = len(xy)
        for k in range(L - 1):
            nfa.add_edge(spine[(j, k)], xy[k], spine[(j, k + 1)])
        nfa.add_edge(spine[(j, L - 1)], xy[L - 1], spine[(j, len(x))])
        for k in range(L):
            for a in range(xy[k]):
                nfa.add_edge(spine[(j, k)], a, spine[((j - k - 1) % d, 0)])
        # short words of matching residue
        p_root, _ = _trie(nfa, [w for w in short_words if len(w) % d == j % d])
        nfa.add_edge(spine[(j, 0)], EPS, p_root)
        # suffixes no greater than z_j
        s_words = [w for w in oracle_language(sys, len(z))
                   if len(w) == len(z) and w <= z]
        s_root, _ = _trie(nfa, s_words)
        nfa.add_edge(spine[(j, len(x))], EPS, s_root)
    nfa.initials = {spine[(j, 0)] for j in range(d)}

    k1 = determinize(_k1_nfa(sys, A, n0 + d - 1))
    k2 = determinize(_k2_nfa(A, pieces))
    return nfa, k1, k2


def _k1_nfa(sys: PositionalSystem, A: int, max_len: int) -> Nfa:
    """Words with a suffix of length l <= max_len lexicographically greater
    than the maximal word of length l."""
    nfa = Nfa(A)
    loop = nfa.add_state()
    nfa.initials = {loop}
    for a in range(A):
        nfa.add_edge(loop, a, loop)
    for l in range(1, max_len + 1):
        mw = sys.max_word(l)
        # states chain[t][rel]: t letters of the suffix consumed;
        # rel 0 = equal so far, 1 = already greater
        chain = [[nfa.add_state(), nfa.add_state()] for _ in range(l + 1)]
        for t in range(l):
            eq, gt = chain[t]
            for a in range(A):
                if a == mw[t]:
                    nfa.add_edge(eq, a, chain[t + 1][0])
                elif a > mw[t]:
                    nfa.add_edge(eq, a, chain[t + 1][1])
                nfa.add_edge(gt, a, chain[t + 1][1])
        nfa.add_edge(loop, EPS, chain[0][0])
        nfa.finals.add(chain[l][1])
    return nfa


def _k2_nfa(A: int, pieces) -> Nfa:
    """Words of the form anything . x_j y_j^k . s with |s| = |z_j| and
    s lexicographically greater than z_j."""
    nfa = Nfa(A)
    loop = nfa.add_state()
    nfa.initials = {loop}
    for a in range(A):
        nfa.add_edge(loop, a, loop)
    for x, y, z in pieces:
        if not z:
            continue
        prev = loop
        for a in x:
            s = nfa.add_state()
            nfa.add_edge(prev, a, s)
            prev = s
        hub = prev
        cur = hub
        for idx, a in enumerate(y):
            nxt = hub if idx == len(y) - 1 else nfa.add_state()
            nfa.add_edge(cur, a, nxt)
            cur = nxt
        # compare the last |z| letters against z
        chain = [[nfa.add_state(), nfa.add_state()] for _ in range(len(z) + 1)]
        nfa.add_edge(hub, EPS, chain[0][0])
        for t in range(len(z)):
            eq, gt = chain[t]
            for a in range(A):
                if a == z[t]:
                    nfa.add_edge(eq, a, chain[t + 1][0])
                elif a > z[t]:
                    nfa.add_edge(eq, a, chain[t + 1][1])
                nfa.add_edge(gt, a, chain[t + 1][1])
        nfa.finals.add(chain[len(z)][1])
    return nfa


def compile_dfa(decomp: SlenderDecomposition, sys: PositionalSystem) -> Dfa:
    """Deterministic, minimal automaton accepting exactly the numeration
    language (with leading zeros)."""
    nfa, k1, k2 = build_numeration_nfa(decomp, sys)
    return minimize(difference(determinize(nfa), union(k1, k2)))


def strip_leading_zero_language(d: Dfa) -> Dfa:
    """Language restricted to words not starting with 0 (plus the empty
    word): the representations without padding."""
    zero_first = Nfa(d.alphabet_size)
    s0 = zero_first.add_state()
    s1 = zero_first.add_state()
    zero_first.initials = {s0}
    zero_first.add_edge(s0, 0, s1)
    for a in range(d.alphabet_size):
        zero_first.add_edge(s1, a, s1)
    zero_first.finals = {s1}
    return minimize(difference(d, determinize(zero_first)))


def max_words_automaton(d: Dfa) -> Dfa:
    """Automaton for the per-length lexicographic maxima of L(d): remove
    every word for which the automaton can trace a lexicographically
    greater word of the same length."""
    beaten = Nfa(d.alphabet_size)
    # states: (ours, theirs, strict_flag)
    index: dict[tuple[int, int, int], int] = {}

    def state(p, q, f):
        key = (p, q, f)
        if key not in index:
            index[key] = beaten.add_state()
        return index[key]

    start = state(d.initial, d.initial, 0)
    beaten.initials = {start}
    # materialise lazily: breadth-first over reachable triples
    work = [(d.initial, d.initial, 0)]
    seen = {(d.initial, d.initial, 0)}
    while work:
        p, q, f = work.pop()
        src = state(p, q, f)
        for a in range(d.alphabet_size):
            targets = []
            if f == 0:
                targets.append((d.delta[p][a], d.delta[q][a], 0))
                for b in range(a + 1, d.alphabet_size):
                    targets.append((d.delta[p][a], d.delta[q][b], 1))
            else:
                for b in range(d.alphabet_size):
                    targets.append((d.delta[p][a], d.delta[q][b], 1))
            for trip in targets:
                beaten.add_edge(src, a, state(*trip))
                if trip not in seen:
                    seen.add(trip)
                    work.append(trip)
    for (p, q, f), s in index.items():
        if f == 1 and p in d.finals and q in d.finals:
            beaten.finals.add(s)
    return minimize(difference(d, determinize(beaten)))
