"""Real algebraic numbers as (irreducible polynomial, isolating interval).

Root isolation uses Sturm sequences with exact rational arithmetic.  An
isolating interval always has rational endpoints that are not themselves
roots, so refinement is plain bisection and the identified root never
changes.  Comparisons terminate because two distinct real algebraic numbers
are separated by a positive distance, and equality is decided through the
minimal polynomials rather than by refinement alone.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import RefinementBudgetExceeded
from .poly import IntPolynomial, qdivmod, to_q

# Global safety cap on bisection steps; comparisons of fixed algebraic
# numbers terminate long before this.
REFINEMENT_CAP = 10**6


def factor_int_poly(p: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Irreducible factorisation over Z (content dropped), as a list of
    (primitive irreducible factor with positive leading coefficient,
    multiplicity).  Backed by sympy's factoriser."""
    import sympy

    if p.degree <= 0:
        return []
    x = sympy.Symbol("x")
    expr = sympy.Poly(list(reversed(p.coeffs)), x)
    _, factors = expr.factor_list()
    out = []
    for f, mult in factors:
        coeffs = [int(c) for c in reversed(f.all_coeffs())]
        out.append((IntPolynomial(coeffs).primitive(), int(mult)))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return out


def _scale_to_int(q) -> IntPolynomial:
    """Multiply a Fraction polynomial by the positive constant that makes
    it primitive integer.  Positive scaling preserves the sign pattern, so
    Sturm variation counts are unaffected."""
    den = math.lcm(*[c.denominator for c in q])
    ints = [int(c * den) for c in q]
    g = math.gcd(*ints)
    return IntPolynomial([c // g for c in ints])


def sturm_chain(p: IntPolynomial):
    """Sturm chain of a squarefree ``p``, every member rescaled by a
    positive constant to primitive integer form (coefficients stay
    subresultant-sized instead of exploding)."""
    chain = [_scale_to_int(to_q(p))]
    d = p.derivative()
    if d.is_zero():
        return chain
    chain.append(_scale_to_int(to_q(d)))
    while True:
        _, r = qdivmod(to_q(chain[-2]), to_q(chain[-1]))
        if not r:
            break
        chain.append(_scale_to_int([-c for c in r]))
    return chain


def _variations(chain, x):
    signs = []
    for q in chain:
        acc = q.eval(x)
        if acc:
            signs.append(1 if acc > 0 else -1)
    var = 0
    for a, b in zip(signs, signs[1:]):
        if a != b:
            var += 1
    return var


def count_roots(p: IntPolynomial, lo: Fraction, hi: Fraction, chain=None) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval
    (lo, hi]."""
    if chain is None:
        chain = sturm_chain(p.squarefree_part())
    return _variations(chain, lo) - _variations(chain, hi)


def root_bound(p: IntPolynomial) -> Fraction:
    """Cauchy bound: every complex root has modulus < 1 + max |a_i / a_d|."""
    if p.degree < 1:
        return Fraction(1)
    lc = abs(p.lc)
    m = max(abs(c) for c in p.coeffs[:-1]) if p.degree >= 1 else 0
    return 1 + Fraction(m, lc)


class RealAlgebraic:
    """A real algebraic number: irreducible primitive minimal polynomial plus
    an isolating open interval (lo, hi) containing exactly one real root.
    Rational numbers are stored with a degenerate interval lo == hi."""

    __slots__ = ("minpoly", "lo", "hi", "_chain")

    def __init__(self, minpoly: IntPolynomial, lo: Fraction, hi: Fraction):
        self.minpoly = minpoly
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        self._chain = None

    @classmethod
    def from_rational(cls, r) -> "RealAlgebraic":
        r = Fraction(r)
        return cls(IntPolynomial([-r.numerator, r.denominator]).primitive(), r, r)

    @property
    def is_rational(self):
        return self.minpoly.degree == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not a rational number")
        a, b = self.minpoly.coeffs
        return Fraction(-a, b)

    def interval(self) -> tuple[Fraction, Fraction]:
        return self.lo, self.hi

    def refine(self, steps=1):
        """Halve the isolating interval ``steps`` times (no-op when
        rational).  The endpoint signs are preserved, so the identified
        root never changes."""
        if self.is_rational:
            return
        for _ in range(steps):
            mid = (self.lo + self.hi) / 2
            v = self.minpoly.eval(mid)
            if v == 0:
                # cannot happen for an irreducible minpoly of degree >= 2,
                # mid is rational
                raise AssertionError("rational root of irreducible polynomial")
            if (v > 0) == (self.minpoly.eval(self.hi) > 0):
                self.hi = mid
            else:
                self.lo = mid

    def refine_below(self, width: Fraction, budget=REFINEMENT_CAP):
        n = 0
        while self.hi - self.lo > width:
            if n >= budget:
                raise RefinementBudgetExceeded(
                    f"interval refinement exceeded {budget} bisections")
            self.refine()
            n += 1

    def sign(self) -> int:
        if self.is_rational:
            r = self.as_fraction()
            return (r > 0) - (r < 0)
        while True:
            if self.lo > 0:
                return 1
            if self.hi < 0:
                return -1
            self.refine()

    def compare(self, other) -> int:
        """Exact three-way comparison with another RealAlgebraic, Fraction
        or int: -1, 0 or +1."""
        if not isinstance(other, RealAlgebraic):
            other = RealAlgebraic.from_rational(other)
        if self.is_rational and other.is_rational:
            a, b = self.as_fraction(), other.as_fraction()
            return (a > b) - (a < b)
        if self.minpoly == other.minpoly:
            # Equal iff the isolating intervals share the (unique) root of
            # the common minimal polynomial in their overlap.
            lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
            if lo < hi and count_roots(self.minpoly, lo, hi, self._sturm()) == 1:
                return 0
        elif self.is_rational:
            # other irrational: sign of other - rational
            r = self.as_fraction()
            while other.lo < r < other.hi:
                other.refine()
            return -1 if r <= other.lo else 1
        elif other.is_rational:
            return -other.compare(self)
        # Distinct numbers: refine until the intervals separate.
        n = 0
        while True:
            if self.hi <= other.lo:
                return -1
            if other.hi <= self.lo:
                return 1
            if n >= REFINEMENT_CAP:
                raise RefinementBudgetExceeded("comparison did not separate")
            self.refine()
            other.refine()
            n += 2

    def _sturm(self):
        if self._chain is None:
            self._chain = sturm_chain(self.minpoly)
        return self._chain

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (RealAlgebraic, int, Fraction)):
            return self.compare(other) == 0
        return NotImplemented

    def __hash__(self):
        # Hash irrational numbers by minimal polynomial only; fine for the
        # small sets used here.
        if self.is_rational:
            return hash(self.as_fraction())
        return hash(self.minpoly)

    def approx(self, digits=12) -> tuple[Fraction, Fraction]:
        """(midpoint, half-width) with half-width below 10**-digits."""
        self.refine_below(Fraction(1, 10**digits) * 2)
        return (self.lo + self.hi) / 2, (self.hi - self.lo) / 2

    def __float__(self):
        mid, _ = self.approx(18)
        return float(mid)

    def __repr__(self):
        if self.is_rational:
            return f"RealAlgebraic({self.as_fraction()})"
        return f"RealAlgebraic({self.minpoly!r} in ({float(self.lo):.6g}, {float(self.hi):.6g}))"


def _isolate_irreducible(p: IntPolynomial) -> list[RealAlgebraic]:
    """Isolating intervals for all real roots of an irreducible primitive
    polynomial, ascending."""
    if p.degree == 1:
        return [RealAlgebraic.from_rational(Fraction(-p.coeffs[0], p.coeffs[1]))]
    chain = sturm_chain(p)
    bound = root_bound(p)
    # Endpoints +-bound are never roots (bound strictly exceeds all moduli).
    stack = [(-bound, bound, _variations(chain, -bound) - _variations(chain, bound))]
    found = []
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            found.append(RealAlgebraic(p, lo, hi))
            continue
        mid = (lo + hi) / 2
        # mid rational cannot be a root of an irreducible p of degree >= 2
        left = _variations(chain, lo) - _variations(chain, mid)
        stack.append((lo, mid, left))
        stack.append((mid, hi, n - left))
    found.sort(key=lambda r: r.lo)
    return found


def isolate_real_roots(p: IntPolynomial) -> list[RealAlgebraic]:
    """One RealAlgebraic per distinct real root of ``p`` (any nonzero
    integer polynomial), in ascending order, with pairwise disjoint
    isolating intervals and irreducible minimal polynomials."""
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    roots = []
    for f, _ in factor_int_poly(p):
        roots.extend(_isolate_irreducible(f))
    # Sort exactly by pairwise comparison (few roots, cheap).
    ordered: list[RealAlgebraic] = []
    for r in roots:
        k = 0
        while k < len(ordered) and ordered[k].compare(r) < 0:
            k += 1
        ordered.insert(k, r)
    # Shrink until intervals are pairwise disjoint.
    changed = True
    while changed:
        changed = False
        for a, b in zip(ordered, ordered[1:]):
            while not (a.hi <= b.lo):
                a.refine()
                b.refine()
                changed = True
    return ordered
