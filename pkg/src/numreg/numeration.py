"""Positional numeration systems over an integer linear recurrence.

A system is an increasing integer sequence U with U_0 = 1 and bounded
consecutive quotients; a natural number x is written as the digit word
produced by the greedy algorithm, most significant digit first.  Words are
plain tuples of small nonnegative ints; ``word("2101")`` builds one from a
digit string.

The language of all greedy representations (with leading zeros allowed) is
the object the rest of the package decides regularity for; this module owns
the exact term/representation arithmetic and the brute-force oracle used to
validate compiled automata.
"""

from __future__ import annotations

import threading
from typing import TYPE_CHECKING

from .algebra import IntPolynomial, check_annihilates, min_poly_of_sequence
from .errors import InvalidCandidate, NotIncreasing, OutOfRange

if TYPE_CHECKING:  # pragma: no cover
    from .automaton import SlenderDecomposition

Word = tuple[int, ...]

EMPTY: Word = ()


def word(digits) -> Word:
    """Build a word from a digit string like "2101" or an iterable of ints."""
    if isinstance(digits, str):
        return tuple(int(ch) for ch in digits)
    return tuple(int(d) for d in digits)


def word_str(w: Word) -> str:
    return "".join(str(d) for d in w) if w else "ε"


class PositionalSystem:
    """Base sequence U_{n+m} = c_{m-1} U_{n+m-1} + ... + c_0 U_n with
    initial terms U_0 = 1 < U_1 < ... < U_{m-1}.

    ``recurrence`` lists c_{m-1}, ..., c_0 (highest shift first), matching
    the order they appear in the recurrence itself.  Terms are cached; the
    cache is append-only and guarded by a lock so read-mostly sharing
    across threads is safe.
    """

    def __init__(self, recurrence, initial, name=None):
        self.recurrence = tuple(int(c) for c in recurrence)
        self.initial = tuple(int(u) for u in initial)
        self.name = name
        self.order = len(self.recurrence)
        if len(self.initial) != self.order:
            raise ValueError(
                f"need {self.order} initial terms for an order-{self.order} recurrence, "
                f"got {len(self.initial)}")
        if not self.initial or self.initial[0] != 1:
            raise ValueError("U_0 must equal 1")
        for a, b in zip(self.initial, self.initial[1:]):
            if b <= a:
                raise NotIncreasing(f"initial terms not strictly increasing: {a} then {b}")
        self._terms = list(self.initial)
        self._lock = threading.Lock()
        self._alphabet_from_limit = None

    @property
    def char_poly(self) -> IntPolynomial:
        """X^m - c_{m-1} X^{m-1} - ... - c_0."""
        return IntPolynomial([-c for c in reversed(self.recurrence)] + [1])

    def term(self, n: int) -> int:
        if n < 0:
            raise OutOfRange("term index must be nonnegative")
        if n < len(self._terms):
            return self._terms[n]
        with self._lock:
            while len(self._terms) <= n:
                nxt = sum(c * self._terms[-1 - j] for j, c in enumerate(self.recurrence))
                if nxt <= self._terms[-1]:
                    raise NotIncreasing(
                        f"U_{len(self._terms)} = {nxt} does not exceed "
                        f"U_{len(self._terms) - 1} = {self._terms[-1]}")
                self._terms.append(nxt)
        return self._terms[n]

    def terms(self, count: int, start: int = 0) -> list[int]:
        self.term(start + count - 1)
        return self._terms[start:start + count]

    def min_poly(self, guard: int = 8) -> IntPolynomial:
        """Minimal polynomial of the base sequence, fitted on
        2*order + guard terms and verified on the whole window."""
        window = self.terms(2 * self.order + guard)
        p = min_poly_of_sequence(window, degree_bound=self.order)
        assert check_annihilates(p, window)
        return p

    # -- values and representations ---------------------------------------

    def val(self, w: Word) -> int:
        """Sum of digit * U_position, most significant digit first."""
        total = 0
        L = len(w)
        for k, d in enumerate(w):
            if d:
                total += d * self.term(L - 1 - k)
        return total

    def rep(self, x: int) -> Word:
        """Greedy representation of x >= 0; rep(0) is the empty word and no
        other representation has a leading zero."""
        if x < 0:
            raise OutOfRange("cannot represent a negative number")
        if x == 0:
            return EMPTY
        length = 0
        while self.term(length) <= x:
            length += 1
        digits = []
        r = x
        for n in range(length - 1, -1, -1):
            u = self.term(n)
            a, r = divmod(r, u)
            digits.append(a)
        return tuple(digits)

    def is_greedy(self, w: Word) -> bool:
        """Membership of w (leading zeros permitted) in the numeration
        language: every proper suffix value must stay below the
        corresponding term."""
        total = 0
        for k in range(len(w) - 1, -1, -1):
            pos = len(w) - 1 - k
            # value of the suffix of length pos must be < U_pos; check
            # before adding the next digit
            d = w[k]
            if d < 0:
                return False
            total += d * self.term(pos)
            if total >= self.term(pos + 1):
                return False
        return True

    def max_word(self, n: int) -> Word:
        """The lexicographically greatest word of length n in the
        numeration language: the representation of U_n - 1, which has
        length exactly n."""
        if n == 0:
            return EMPTY
        w = self.rep(self.term(n) - 1)
        assert len(w) == n
        return w

    def rep_ic(self, p: int, i: int, c: int, n: int) -> Word:
        """Representation of U_{np-i} - c, zero-padded on the left to
        length np - i."""
        if not (0 <= i < p):
            raise OutOfRange(f"shift {i} outside 0..{p - 1}")
        if n < 1:
            raise OutOfRange("n must be >= 1")
        target = self.term(n * p - i)
        if not (1 <= c <= target):
            raise OutOfRange(f"offset c={c} outside 1..U_{n * p - i}={target}")
        w = self.rep(target - c)
        return (0,) * (n * p - i - len(w)) + w

    def alphabet_max(self, horizon: int = 200) -> int:
        """Largest digit: sup over n of ceil(U_{n+1}/U_n) - 1.  Uses cached
        terms up to ``horizon`` plus, when the associated base is known,
        the exact ceilings of its entries (registered by the analysis)."""
        best = 0
        ts = self.terms(horizon + 1)
        for a, b in zip(ts, ts[1:]):
            best = max(best, -(-b // a))
        if self._alphabet_from_limit is not None:
            best = max(best, self._alphabet_from_limit)
        return best - 1

    def register_alphabet_limit(self, ceil_betas: int):
        """Record ceil(beta_i) from base extraction so the alphabet bound
        is exact rather than horizon-limited."""
        self._alphabet_from_limit = ceil_betas

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return (f"PositionalSystem{label}(order {self.order}, "
                f"recurrence {list(self.recurrence)}, initial {list(self.initial)})")


def oracle_language(sys: PositionalSystem, max_len: int) -> set[Word]:
    """Ground truth: every word of the numeration language of length at
    most ``max_len``, including leading-zero paddings.  Enumerates the
    representation of every x below U_{max_len} and closes under
    zero-prefixing."""
    out: set[Word] = {EMPTY}
    if max_len == 0:
        return out
    limit = sys.term(max_len)
    # terms as a local list for the tight loop
    ts = sys.terms(max_len + 1)
    for x in range(1, limit):
        length = 0
        while ts[length] <= x:
            length += 1
        digits = []
        r = x
        for n in range(length - 1, -1, -1):
            a, r = divmod(r, ts[n])
            digits.append(a)
        w = tuple(digits)
        for pad in range(max_len - length + 1):
            out.add((0,) * pad + w)
    for pad in range(1, max_len + 1):
        out.add((0,) * pad)
    return out


def system_from_max_words(decomp: "SlenderDecomposition",
                          validation_slack: int = 0) -> PositionalSystem:
    """Reconstruct the unique positional system whose per-length maximal
    words are the given thin language.

    The candidate language must contain exactly one word of each length,
    no word may start with 0, and for any two words the shorter must
    dominate the matching-length suffix of the longer lexicographically.
    These conditions are checked for all lengths up to the validation
    horizon |x| + 3|y| per piece; the terms are then U_n = val(w_n) + 1 and
    the recurrence is fitted from them.
    """
    horizon = max(len(x) + len(z) + 3 * len(y) for x, y, z in decomp.pieces)
    horizon = max(horizon, max((len(w) for w in decomp.finite_part), default=0) + 1)
    horizon += validation_slack
    words = []
    for n in range(horizon + 1):
        ws = decomp.words_of_length(n)
        if len(ws) != 1:
            raise InvalidCandidate(
                f"need exactly one word of length {n}, found {len(ws)}", lengths=(n,))
        words.append(ws[0])
    for n in range(1, horizon + 1):
        if words[n][0] == 0:
            raise InvalidCandidate(f"word of length {n} starts with 0", lengths=(n,))
    for n in range(horizon + 1):
        for bigger in range(n + 1, horizon + 1):
            if n and words[bigger][-n:] > words[n]:
                raise InvalidCandidate(
                    f"suffix of the length-{bigger} word beats the length-{n} word",
                    lengths=(n, bigger))
    # Terms are forced: U_n = val(w_n) + 1, computable left to right.
    def terms_upto(h):
        ts = [1]
        for n in range(1, h + 1):
            ws = decomp.words_of_length(n)
            if len(ws) != 1:
                raise InvalidCandidate(
                    f"need exactly one word of length {n}, found {len(ws)}", lengths=(n,))
            w = ws[0]
            value = sum(dig * ts[len(w) - 1 - k] for k, dig in enumerate(w))
            ts.append(value + 1)
        return ts

    terms = terms_upto(horizon)
    # widen the fitting window until it safely over-determines the order
    while True:
        p = min_poly_of_sequence(terms)
        order = p.degree
        if order == 0:
            raise InvalidCandidate("candidate words do not define a growing sequence")
        if len(terms) >= 2 * order + 8:
            break
        terms = terms_upto(2 * len(terms))
    recurrence = []
    lc = p.coeffs[-1]
    if lc != 1:
        raise InvalidCandidate("fitted recurrence is not monic over the integers")
    for k in range(order - 1, -1, -1):
        recurrence.append(-p.coeffs[k])
    system = PositionalSystem(recurrence, terms[:order], name=getattr(decomp, "name", None))
    for n in range(horizon + 1):
        if system.max_word(n) != words[n]:
            raise InvalidCandidate(
                f"reconstructed system disagrees with candidate at length {n}",
                lengths=(n,))
    return system
