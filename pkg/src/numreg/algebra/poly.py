"""Dense univariate polynomials with exact integer or rational coefficients.

``IntPolynomial`` stores integer coefficients in ascending degree order and
is immutable.  Rational-coefficient polynomials appear only transiently
(monic normalisation, Euclidean division); they are plain lists of
``Fraction`` handled by the ``q*`` helper functions below.
"""

from __future__ import annotations

import math
from fractions import Fraction


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class IntPolynomial:
    """An integer polynomial, coefficients ascending (``coeffs[k]`` is the
    coefficient of X^k).  The zero polynomial has an empty coefficient
    tuple and degree -1."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        object.__setattr__(self, "coeffs", tuple(_strip(coeffs)))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    # -- basic structure ---------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == (() if other == 0 else (other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k <= self.degree else 0

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(
            [self[k] + other[k] for k in range(n)]
        )

    def __sub__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial([self[k] - other[k] for k in range(n)])

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coeffs])
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = IntPolynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k):
        """Multiply by X^k."""
        if self.is_zero():
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    def derivative(self):
        return IntPolynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def reciprocal(self):
        """X^deg * p(1/X): the coefficient sequence reversed."""
        return IntPolynomial(tuple(reversed(self.coeffs)))

    def eval(self, x):
        """Horner evaluation; exact for int or Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- content and divisibility -------------------------------------------

    def content(self):
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self):
        """Primitive part with positive leading coefficient."""
        if self.is_zero():
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return IntPolynomial([a // c for a in self.coeffs])

    def divmod_exact(self, other):
        """Exact division over Q; raises ValueError when the remainder is
        nonzero.  The quotient is returned as an IntPolynomial when its
        coefficients are integral, else a Fraction list is rejected."""
        q, r = qdivmod(to_q(self), to_q(other))
        if r:
            raise ValueError("division is not exact")
        if any(c.denominator != 1 for c in q):
            raise ValueError("exact quotient is not integral")
        return IntPolynomial([int(c) for c in q])

    def divides(self, other):
        """True when self divides other over Q."""
        if self.is_zero():
            return other.is_zero()
        _, r = qdivmod(to_q(other), to_q(self))
        return not r

    def multiplicity_in(self, other):
        """Largest k with self**k dividing other (over Q)."""
        k = 0
        cur = to_q(other)
        den = to_q(self)
        while True:
            q, r = qdivmod(cur, den)
            if r or not q:
                return k
            cur = q
            k += 1

    def pseudo_rem(self, other):
        """Pseudo-remainder: the remainder of lc(other)**k * self divided
        by other, computed entirely over Z."""
        if other.is_zero():
            raise ZeroDivisionError("pseudo-remainder by zero")
        a = list(self.coeffs)
        b = other.coeffs
        lb = other.lc
        while len(a) >= len(b):
            if a[-1] == 0:
                a.pop()
                continue
            top = a[-1]
            k = len(a) - len(b)
            a = [c * lb for c in a]
            for j in range(len(b)):
                a[k + j] -= top * b[j]
            a.pop()
        return IntPolynomial(a)

    def gcd(self, other):
        """Primitive gcd over Z, via a primitive pseudo-remainder sequence
        (rational Euclid would blow up on moderate degrees)."""
        a, b = self.primitive(), other.primitive()
        if a.is_zero():
            return b
        if b.is_zero():
            return a
        if a.degree < b.degree:
            a, b = b, a
        while not b.is_zero():
            r = a.pseudo_rem(b)
            a, b = b, (r.primitive() if not r.is_zero() else r)
        return a.primitive()

    def squarefree_part(self):
        if self.degree <= 0:
            return IntPolynomial([1]) if self.coeffs else self
        g = self.gcd(self.derivative())
        q, _ = qdivmod(to_q(self), to_q(g))
        return qclear(q)

    def exact_quotient(self, other):
        """self / other when the division is exact with an integer result
        (e.g. dividing by a primitive factor)."""
        q, r = qdivmod(to_q(self), to_q(other))
        if r or any(c.denominator != 1 for c in q):
            raise ValueError("quotient is not an integer polynomial")
        return IntPolynomial([int(c) for c in q])

    def squarefree_decomposition(self):
        """Yun's algorithm: list of (primitive factor, multiplicity) with
        distinct factors, product of factor**mult equal to the primitive
        part."""
        p = self.primitive()
        if p.degree <= 0:
            return []
        out = []
        g = p.gcd(p.derivative())
        if g.degree == 0:
            return [(p, 1)]
        w = p.exact_quotient(g)
        y = p.derivative().exact_quotient(g)
        i = 1
        z = y - w.derivative()
        while True:
            f = w.gcd(z)
            if f.degree > 0:
                out.append((f.primitive(), i))
            w_next = w.exact_quotient(f)
            z_next = z.exact_quotient(f)
            if w_next.degree == 0:
                break
            w = w_next
            y = z_next
            z = y - w.derivative()
            i += 1
        return out

    def compose_power(self, k):
        """p(X^k)."""
        if k == 1:
            return self
        out = [0] * (len(self.coeffs) * k)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return IntPolynomial(out)

    # -- display -------------------------------------------------------------

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(f"{c:+d}")
            else:
                mag = "" if abs(c) == 1 else str(abs(c))
                sign = "+" if c > 0 else "-"
                xpow = "X" if k == 1 else f"X^{k}"
                terms.append(f"{sign}{mag}{xpow}")
        s = "".join(terms)
        return s[1:] if s.startswith("+") else s


def _coerce(p):
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, int):
        return IntPolynomial([p])
    raise TypeError(f"cannot coerce {p!r} to IntPolynomial")


X = IntPolynomial([0, 1])
ONE = IntPolynomial([1])


# ---------------------------------------------------------------------------
# Fraction-coefficient helpers.  A "qpoly" is a stripped list of Fractions in
# ascending degree; [] is the zero polynomial.
# ---------------------------------------------------------------------------


def qstrip(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def to_q(p: IntPolynomial):
    return [Fraction(c) for c in p.coeffs]


def qclear(q) -> IntPolynomial:
    """Clear denominators and return the primitive integer polynomial with
    positive leading coefficient."""
    if not q:
        return IntPolynomial()
    den = math.lcm(*[c.denominator for c in q])
    return IntPolynomial([int(c * den) for c in q]).primitive()


def qadd(a, b):
    n = max(len(a), len(b))
    return qstrip([(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)])


def qsub(a, b):
    n = max(len(a), len(b))
    return qstrip([(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)])


def qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return qstrip(out)


def qscale(a, s):
    s = Fraction(s)
    return qstrip([c * s for c in a])


def qdivmod(a, b):
    """Euclidean division over Q; returns (quotient, remainder)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = Fraction(1, 1) / b[-1]
    while len(a) >= len(b) and a:
        if a[-1] == 0:
            a.pop()
            continue
        k = len(a) - len(b)
        f = a[-1] * inv
        q[k] = f
        for j in range(len(b)):
            a[k + j] -= f * b[j]
        a.pop()
    return qstrip(q), qstrip(a)


def qgcd(a, b):
    """Monic gcd over Q."""
    a, b = list(a), list(b)
    while b:
        _, r = qdivmod(a, b)
        a, b = b, r
    if a:
        inv = 1 / a[-1]
        a = [c * inv for c in a]
    return a


def qeval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc
