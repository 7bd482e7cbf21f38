"""Minimal polynomials of linear recurrence sequences and root-power maps.

``min_poly_of_sequence`` runs Berlekamp-Massey over Q, so the returned
polynomial annihilates *every* supplied term; feeding twice as many terms
as the expected order plus a verification margin makes the fit reliable.

``power_transform`` maps a polynomial with root multiset {a_j} to one with
root multiset {a_j**k}.  It works through Newton's identities: the power
sums of the transformed polynomial are the k-step subsampled power sums of
the input, which avoids any resultant computation.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import NoRecurrenceFound
from .poly import IntPolynomial, qclear


def min_poly_of_sequence(terms, start=0, degree_bound=None) -> IntPolynomial:
    """Monic minimal polynomial of the sequence ``terms[start:]``, returned
    in primitive integer form (the monic rational version is recovered by
    dividing by the leading coefficient).

    Raises NoRecurrenceFound when no recurrence of order <= degree_bound
    fits all supplied terms.  With no bound, any recurrence visible within
    the supplied window is accepted (the caller is responsible for
    supplying enough terms: at least twice the true order)."""
    seq = [Fraction(t) for t in terms[start:]]
    if not seq:
        raise NoRecurrenceFound("empty sequence")
    # Berlekamp-Massey over Q.  c is the current connection polynomial
    # (ascending, c[0] == 1): sum_j c[j] * s[n-j] == 0 for fitted n.
    c = [Fraction(1)]
    b = [Fraction(1)]
    L, m = 0, 1
    delta_b = Fraction(1)
    for n, s_n in enumerate(seq):
        delta = s_n
        for j in range(1, L + 1):
            delta += c[j] * seq[n - j]
        if delta == 0:
            m += 1
            continue
        coef = delta / delta_b
        shifted = [Fraction(0)] * m + b
        if 2 * L <= n:
            c_prev = list(c)
            L = n + 1 - L
            c = c + [Fraction(0)] * (len(shifted) - len(c))
            for j, v in enumerate(shifted):
                c[j] -= coef * v
            b, delta_b, m = c_prev, delta, 1
        else:
            c = c + [Fraction(0)] * max(0, len(shifted) - len(c))
            for j, v in enumerate(shifted):
                c[j] -= coef * v
            m += 1
    if degree_bound is not None and L > degree_bound:
        raise NoRecurrenceFound(
            f"no recurrence of order <= {degree_bound} fits the {len(seq)} supplied terms (needed {L})")
    if L == 0:
        return IntPolynomial([1])
    # Connection polynomial c(X) = 1 + c_1 X + ... + c_L X^L annihilates via
    # s_n = -sum c_j s_{n-j}; the characteristic polynomial is its reverse.
    monic = list(reversed([c[j] for j in range(L + 1)]))
    return qclear(monic)


def check_annihilates(p: IntPolynomial, terms, start=0) -> bool:
    """True when the recurrence with characteristic polynomial ``p`` holds
    on every window of ``terms[start:]``."""
    d = p.degree
    seq = terms[start:]
    for n in range(len(seq) - d):
        acc = 0
        for j, cf in enumerate(p.coeffs):
            acc += cf * seq[n + j]
        if acc != 0:
            return False
    return True


def power_sums(p: IntPolynomial, count: int) -> list[Fraction]:
    """Power sums s_1..s_count of the roots of ``p`` (with multiplicity),
    via Newton's identities on the monic normalisation."""
    d = p.degree
    if d < 0:
        raise ValueError("zero polynomial")
    lc = Fraction(p.lc)
    # e[i] = elementary symmetric polynomial of degree i, signed from coeffs
    e = [Fraction(0)] * (d + 1)
    e[0] = Fraction(1)
    for i in range(1, d + 1):
        e[i] = Fraction((-1) ** i) * Fraction(p[d - i]) / lc
    s = [Fraction(0)] * (count + 1)
    for k in range(1, count + 1):
        if k <= d:
            acc = Fraction(k) * e[k] * ((-1) ** (k - 1))
            for j in range(1, k):
                acc += ((-1) ** (j - 1)) * e[j] * s[k - j]
            s[k] = acc
        else:
            acc = Fraction(0)
            for j in range(1, d + 1):
                acc += ((-1) ** (j - 1)) * e[j] * s[k - j]
            s[k] = acc
    return s[1:]


def from_power_sums(s: list[Fraction], d: int) -> list[Fraction]:
    """Monic polynomial (ascending qpoly) of degree d whose roots have the
    given power sums s_1..s_d."""
    e = [Fraction(1)] + [Fraction(0)] * d
    for k in range(1, d + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            acc += ((-1) ** (j - 1)) * s[j - 1] * e[k - j]
        e[k] = acc / k
    coeffs = [Fraction(0)] * (d + 1)
    for i in range(d + 1):
        coeffs[d - i] = ((-1) ** i) * e[i]
    return coeffs


def power_transform(p: IntPolynomial, k: int) -> IntPolynomial:
    """A primitive integer polynomial whose root multiset is
    {a**k : p(a) = 0}, multiplicities preserved."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if k < 1:
        raise ValueError("power must be positive")
    d = p.degree
    if d == 0:
        return IntPolynomial([1])
    if k == 1:
        return p.primitive()
    s = power_sums(p, d * k)
    sk = [s[k * j - 1] for j in range(1, d + 1)]
    return qclear(from_power_sums(sk, d))
