"""Arithmetic in a single real number field Q(theta).

Every algebraic quantity the analysis needs (the alternate-base entries,
the greedy remainders, the leading subsequence coefficients) lives in one
field generated by the dominant eigenvalue power ``theta``.  Elements are
coordinate vectors over the basis 1, theta, ..., theta^(D-1); arithmetic
is exact, and order queries are settled by refining the isolating interval
of ``theta``, which terminates because a nonzero element of the field is a
fixed nonzero real number.

All values are immutable after construction.  The only internal mutation is
the memoised refinement of theta's interval, which is guarded by a lock and
replaces the cached power enclosures atomically.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

from ..errors import RefinementBudgetExceeded
from .poly import IntPolynomial
from .roots import REFINEMENT_CAP, RealAlgebraic


def _imul(a, b):
    products = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(products), max(products)


class NumberField:
    """The field Q(theta) for a real algebraic ``theta`` whose minimal
    polynomial is irreducible."""

    def __init__(self, theta: RealAlgebraic):
        self.theta = theta
        self.minpoly = theta.minpoly
        self.degree = self.minpoly.degree
        if self.degree < 1:
            raise ValueError("generator must be a root of a nonconstant polynomial")
        d = self.degree
        lc = Fraction(self.minpoly.lc)
        # theta^d = sum_k reduction[k] theta^k
        reduction = [-Fraction(c) / lc for c in self.minpoly.coeffs[:-1]]
        # Coordinates of theta^j for j = 0 .. 2d-2 (enough to fold products).
        rows = [[Fraction(0)] * d for _ in range(max(d, 2 * d - 1))]
        for j in range(d):
            rows[j][j] = Fraction(1)
        for j in range(d, 2 * d - 1):
            prev = rows[j - 1]
            shifted = [Fraction(0)] + prev[: d - 1]
            top = prev[d - 1]
            rows[j] = [shifted[k] + top * reduction[k] for k in range(d)]
        self._power_rows = rows
        self._lock = threading.Lock()
        self._enclosures = None
        self._refinements = 0
        self.one = FieldElement(self, (Fraction(1),) + (Fraction(0),) * (d - 1))
        self.zero = FieldElement(self, (Fraction(0),) * d)
        self.gen = FieldElement(
            self, tuple(Fraction(1) if k == 1 else Fraction(0) for k in range(d))
        ) if d > 1 else FieldElement(self, (theta.as_fraction(),))

    def element(self, coords) -> "FieldElement":
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.degree:
            # fold high powers down
            acc = [Fraction(0)] * self.degree
            for j, c in enumerate(coords):
                if c:
                    row = self._power_row(j)
                    for k in range(self.degree):
                        acc[k] += c * row[k]
            coords = acc
        else:
            coords = coords + [Fraction(0)] * (self.degree - len(coords))
        return FieldElement(self, tuple(coords))

    def from_rational(self, r) -> "FieldElement":
        return self.element([Fraction(r)])

    def _power_row(self, j):
        while j >= len(self._power_rows):
            prev = self._power_rows[-1]
            d = self.degree
            lc = Fraction(self.minpoly.lc)
            reduction = [-Fraction(c) / lc for c in self.minpoly.coeffs[:-1]]
            shifted = [Fraction(0)] + prev[: d - 1]
            top = prev[d - 1]
            self._power_rows.append([shifted[k] + top * reduction[k] for k in range(d)])
        return self._power_rows[j]

    # -- interval bookkeeping ------------------------------------------------

    def enclosures(self):
        """Intervals enclosing theta^k for k < degree, recomputed lazily
        from the current isolating interval."""
        with self._lock:
            key = (self.theta.lo, self.theta.hi)
            if self._enclosures is None or self._enclosures[0] != key:
                base = (self.theta.lo, self.theta.hi)
                powers = [(Fraction(1), Fraction(1))]
                for _ in range(self.degree - 1):
                    powers.append(_imul(powers[-1], base))
                self._enclosures = (key, powers)
            return self._enclosures[1]

    def refine(self, steps=1):
        with self._lock:
            self._refinements += steps
            if self._refinements > REFINEMENT_CAP:
                raise RefinementBudgetExceeded(
                    f"field interval refinement exceeded {REFINEMENT_CAP} bisections")
        self.theta.refine(steps)

    def theta_pow_interval(self, n: int):
        """Interval for theta**n by repeated squaring of the current
        isolating interval."""
        base = (self.theta.lo, self.theta.hi)
        result = (Fraction(1), Fraction(1))
        while n:
            if n & 1:
                result = _imul(result, base)
            base = _imul(base, base)
            n >>= 1
        return result

    def __repr__(self):
        return f"NumberField(theta root of {self.minpoly!r})"


class FieldElement:
    """An element of a NumberField: exact coordinates on the power basis."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    # -- structure -----------------------------------------------------------

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def is_rational(self):
        return all(c == 0 for c in self.coords[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is irrational")
        return self.coords[0]

    def __hash__(self):
        return hash(self.coords)

    # -- ring operations -------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        conv = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        conv[i + j] += a * b
        out = list(conv[:d])
        for j in range(d, 2 * d - 1):
            c = conv[j]
            if c:
                row = self.field._power_row(j)
                for k in range(d):
                    out[k] += c * row[k]
        return FieldElement(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if self.is_rational():
            return self.field.from_rational(1 / self.coords[0])
        # extended Euclid of the coordinate polynomial against the minimal
        # polynomial of theta: a*self + b*minpoly = 1 in Q[X]
        f = [Fraction(c) for c in self.field.minpoly.coeffs]
        g = list(self.coords)
        while g and g[-1] == 0:
            g.pop()
        r0, r1 = f, g
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _qdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qsub(s0, _qmul(q, s1))
        # r0 is a nonzero constant gcd (minpoly irreducible, self != 0)
        if len(r0) != 1:
            raise ZeroDivisionError("element not invertible; field polynomial not irreducible?")
        inv = [c / r0[0] for c in s0]
        return self.field.element(inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- order queries -----------------------------------------------------

    def interval(self) -> tuple[Fraction, Fraction]:
        """A rational interval containing the value, at the field's current
        refinement level."""
        lo = hi = Fraction(0)
        for c, (plo, phi) in zip(self.coords, self.field.enclosures()):
            if c >= 0:
                lo += c * plo
                hi += c * phi
            else:
                lo += c * phi
                hi += c * plo
        return lo, hi

    def sign(self) -> int:
        if self.is_rational():
            r = self.coords[0]
            return (r > 0) - (r < 0)
        while True:
            lo, hi = self.interval()
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            self.field.refine()

    def compare(self, other) -> int:
        o = self._coerce(other)
        diff = self - o
        if diff.is_zero():
            return 0
        return diff.sign()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (FieldElement, int, Fraction)):
            o = self._coerce(other)
            return self.coords == o.coords
        return NotImplemented

    def floor(self) -> int:
        """Exact floor.  For irrational elements the interval refinement
        terminates because the value cannot equal an integer."""
        if self.is_rational():
            return math.floor(self.coords[0])
        while True:
            lo, hi = self.interval()
            flo, fhi = math.floor(lo), math.floor(hi)
            if flo == fhi:
                return flo
            self.field.refine()

    def abs_interval(self) -> tuple[Fraction, Fraction]:
        lo, hi = self.interval()
        if lo >= 0:
            return lo, hi
        if hi <= 0:
            return -hi, -lo
        return Fraction(0), max(-lo, hi)

    def approx(self, digits=12) -> tuple[Fraction, Fraction]:
        """(midpoint, half-width) with half-width below 10**-digits."""
        bound = Fraction(1, 10**digits)
        while True:
            lo, hi = self.interval()
            if hi - lo <= 2 * bound:
                return (lo + hi) / 2, (hi - lo) / 2
            self.field.refine()

    def __float__(self):
        mid, _ = self.approx(17)
        return float(mid)

    def __repr__(self):
        d = self.field.degree
        if self.is_rational():
            return f"FieldElement({self.coords[0]})"
        terms = " + ".join(f"({c})*t^{k}" if k else f"({c})"
                           for k, c in enumerate(self.coords) if c)
        return f"FieldElement({terms})"


# -- operations used by the callers ----------------------------------------


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def field_compare(a: FieldElement, b) -> int:
    return a.compare(b)


def field_floor(x: FieldElement) -> int:
    return x.floor()


# -- small polynomial layer over a field -----------------------------------
#
# A "fpoly" is a stripped list of FieldElement in ascending degree.  These
# appear in the base-extraction certificates: gcds against X^p - theta and
# the reversal tests for root moduli.


def _qdivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
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
    while q and q[-1] == 0:
        q.pop()
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    while out and out[-1] == 0:
        out.pop()
    return out


def _qsub(a, b):
    n = max(len(a), len(b))
    out = [(a[k] if k < len(a) else Fraction(0)) - (b[k] if k < len(b) else Fraction(0))
           for k in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def fstrip(p):
    while p and p[-1].is_zero():
        p.pop()
    return p


def fpoly_from_int(field: NumberField, p: IntPolynomial):
    return [field.from_rational(c) for c in p.coeffs]


def fdeg(p):
    return len(p) - 1


def fdivmod(num, den):
    num = list(num)
    if not den:
        raise ZeroDivisionError("field polynomial division by zero")
    inv = den[-1].inverse()
    q = [den[0].field.zero] * max(0, len(num) - len(den) + 1)
    while len(num) >= len(den) and num:
        if num[-1].is_zero():
            num.pop()
            continue
        k = len(num) - len(den)
        f = num[-1] * inv
        q[k] = f
        for j in range(len(den)):
            num[k + j] = num[k + j] - f * den[j]
        num.pop()
    return fstrip(q), fstrip(num)


def fgcd_monic(a, b):
    a, b = fstrip(list(a)), fstrip(list(b))
    while b:
        _, r = fdivmod(a, b)
        a, b = b, r
    if a:
        inv = a[-1].inverse()
        a = [c * inv for c in a]
    return a


def fmul(a, b):
    if not a or not b:
        return []
    field = (a or b)[0].field
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x.is_zero():
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return fstrip(out)


def fexact_div(a, b):
    q, r = fdivmod(a, b)
    if r:
        raise ValueError("field polynomial division not exact")
    return q


def fdivides(b, a) -> bool:
    """True when b divides a in K[X]."""
    if not b:
        return not a
    _, r = fdivmod(list(a), b)
    return not r
