"""From the base sequence to its associated alternate real base.

For a linear numeration system whose language can be regular, the ratios
U_{np-i}/U_{np-i-1} converge for each residue i modulo some minimal p >= 1.
This module finds that p and the exact limit tuple (beta_0, ..., beta_{p-1})
inside a single number field Q(theta), where theta is the dominant
eigenvalue of the p-step subsequences.  It then runs the greedy expansion
of 1 in every cyclic shift of the base, memorising remainders so that
finiteness and ultimate periodicity are detected exactly, and assembles the
successor graph that drives the regularity criteria.

Candidate validation is exact: a candidate p is accepted only when

* theta, the largest real root of the p-th root-power transform of the
  minimal polynomial, is >= 1 and strictly dominates its own conjugates in
  modulus;
* each residue subsequence carries theta with one common multiplicity mu,
  and every other eigenvalue of the subsequence either has modulus
  certified < theta (Graeffe bounds, exact rational arithmetic) or is
  theta times a root of unity with multiplicity at most mu - 1;
* the per-residue leading coefficients are positive and give ratios >= 1
  that pass a numeric containment cross-check.

Root-of-unity boundary cases are certified by exact divisibility against
X^K - theta^K; when no such K exists within the scan bound the candidate is
reported as uncertifiable rather than guessed at.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import (
    FieldElement,
    IntPolynomial,
    NumberField,
    RealAlgebraic,
    isolate_real_roots,
    min_poly_of_sequence,
    power_transform,
    totient,
)
from .algebra.field import (
    fdeg,
    fdivides,
    fexact_div,
    fgcd_monic,
    fpoly_from_int,
    fstrip,
)
from .errors import (
    BaseExtractionError,
    UndefinedIntermediate,
    UnresolvedExpansion,
)
from .numeration import PositionalSystem, Word

# ---------------------------------------------------------------------------
# eventually periodic words
# ---------------------------------------------------------------------------


def minimal_period_form(pre: Word, per: Word) -> tuple[Word, Word]:
    """Canonical (minimal preperiod, minimal period) form of the infinite
    word pre + per^omega.  The minimal eventual period divides every
    eventual period, so scanning divisors of len(per) suffices."""
    if per:
        n = len(per)
        for d in range(1, n + 1):
            if n % d == 0 and per == per[:d] * (n // d):
                per = per[:d]
                break
        pre_l = list(pre)
        per_l = list(per)
        while pre_l and pre_l[-1] == per_l[-1]:
            per_l = [per_l[-1]] + per_l[:-1]
            pre_l.pop()
        return tuple(pre_l), tuple(per_l)
    # finite word: strip trailing zeros into the implicit 0^omega tail
    pre_l = list(pre)
    while pre_l and pre_l[-1] == 0:
        pre_l.pop()
    return tuple(pre_l), ()


def periodic_digit(pre: Word, per: Word, j: int) -> int:
    if j < len(pre):
        return pre[j]
    if per:
        return per[(j - len(pre)) % len(per)]
    return 0


def periodic_prefix(pre: Word, per: Word, length: int) -> Word:
    return tuple(periodic_digit(pre, per, j) for j in range(length))


def periodic_words_equal(a: tuple[Word, Word], b: tuple[Word, Word]) -> bool:
    return minimal_period_form(*a) == minimal_period_form(*b)


def format_periodic(pre: Word, per: Word) -> str:
    head = "".join(map(str, pre))
    if per:
        return f"{head}({''.join(map(str, per))})^w"
    return f"{head}0^w" if head else "0^w"


# ---------------------------------------------------------------------------
# data types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlternateBase:
    """The limit tuple (beta_0, ..., beta_{p-1}), all elements of one real
    number field.  Indices beyond p wrap around."""

    p: int
    betas: tuple[FieldElement, ...]
    field: NumberField
    theta: FieldElement  # product of the betas, the field generator (or a rational)

    def beta(self, n: int) -> FieldElement:
        return self.betas[n % self.p]

    @property
    def is_degenerate(self) -> bool:
        return self.p == 1 and self.betas[0] == 1

    def ceiling(self) -> int:
        """max over i of ceil(beta_i); bounds the digit alphabet."""
        best = 0
        for b in self.betas:
            fl = b.floor()
            best = max(best, fl if b == fl else fl + 1)
        return best

    def __repr__(self):
        vals = ", ".join(f"{float(b):.6g}" for b in self.betas)
        return f"AlternateBase(p={self.p}, betas approx ({vals}))"


FINITE = "finite"
PERIODIC = "ultimately_periodic"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class ExpansionRecord:
    """Status of the greedy expansion of 1 in the i-th shifted base."""

    shift: int
    status: str
    preperiod: Word = ()
    period: Word = ()
    steps_used: int = 0

    @property
    def is_finite(self):
        return self.status == FINITE

    @property
    def is_periodic(self):
        return self.status == PERIODIC

    @property
    def is_unknown(self):
        return self.status == UNKNOWN

    @property
    def length(self) -> int:
        """Number of digits before the zero tail (finite records only)."""
        if not self.is_finite:
            raise ValueError("length is defined for finite expansions only")
        return len(self.preperiod)

    def digit(self, j: int) -> int:
        return periodic_digit(self.preperiod, self.period, j)

    def digits(self, count: int) -> Word:
        return periodic_prefix(self.preperiod, self.period, count)

    def decremented_prefix(self) -> Word:
        """For a finite expansion t_0 .. t_{l-1}: the block
        t_0 .. t_{l-2} (t_{l-1} - 1) fed into the quasi-greedy recursion."""
        if not self.is_finite:
            raise ValueError("only finite expansions have a decremented block")
        t = self.preperiod
        return t[:-1] + (t[-1] - 1,)

    def word_form(self) -> tuple[Word, Word]:
        return self.preperiod, self.period

    def __repr__(self):
        if self.is_unknown:
            return f"ExpansionRecord(shift {self.shift}, unknown after {self.steps_used} steps)"
        return f"ExpansionRecord(shift {self.shift}, {format_periodic(self.preperiod, self.period)})"


NO_SUCCESSOR = "no_successor"
LEADS_TO_NO_SUCCESSOR = "leads_to_no_successor"
IN_CYCLE = "in_cycle"
LEADS_TO_CYCLE = "leads_to_cycle"


@dataclass(frozen=True)
class VertexClass:
    kind: str
    distance: int = 0          # steps to the terminal vertex / cycle
    cycle_length: int = 0      # length of the reached cycle, 0 if none
    target: int = -1           # the no-successor vertex or cycle entry point


@dataclass
class SuccessorGraph:
    """Vertices 0..p-1 with an edge i -> (i + l_i) mod p for every finite
    expansion of length l_i."""

    p: int
    successor: dict[int, int]
    lengths: dict[int, int]
    classes: dict[int, VertexClass] = dc_field(default_factory=dict)
    cycles: list[tuple[int, ...]] = dc_field(default_factory=list)

    def sigma(self, i: int, steps: int = 1) -> int:
        for _ in range(steps):
            i = self.successor[i]
        return i

    def path_exists(self, i: int, steps: int) -> bool:
        for _ in range(steps):
            if i not in self.successor:
                return False
            i = self.successor[i]
        return True

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.successor.items())


def build_graph(records: list[ExpansionRecord]) -> SuccessorGraph:
    p = len(records)
    if any(r.is_unknown for r in records):
        raise UnresolvedExpansion("cannot build the successor graph with unresolved expansions")
    successor = {}
    lengths = {}
    for i, rec in enumerate(records):
        if rec.is_finite:
            lengths[i] = rec.length
            successor[i] = (i + rec.length) % p
    g = SuccessorGraph(p, successor, lengths)
    cycles: list[tuple[int, ...]] = []
    seen_cycle_members: set[int] = set()
    for i in range(p):
        path = [i]
        idx = {i: 0}
        cur = i
        while cur in successor:
            cur = successor[cur]
            if cur in idx:
                cycle = tuple(path[idx[cur]:])
                if not any(set(cycle) == set(c) for c in cycles):
                    cycles.append(cycle)
                seen_cycle_members.update(cycle)
                break
            idx[cur] = len(path)
            path.append(cur)
    g.cycles = sorted(cycles, key=min)
    for i in range(p):
        if i not in successor:
            g.classes[i] = VertexClass(NO_SUCCESSOR, 0, 0, i)
            continue
        path = [i]
        cur = i
        cls = None
        while True:
            if cur in seen_cycle_members:
                cyc = next(c for c in g.cycles if cur in c)
                dist = path.index(cur)
                if dist == 0:
                    cls = VertexClass(IN_CYCLE, 0, len(cyc), cur)
                else:
                    cls = VertexClass(LEADS_TO_CYCLE, dist, len(cyc), cur)
                break
            if cur not in successor:
                cls = VertexClass(LEADS_TO_NO_SUCCESSOR, len(path) - 1, 0, cur)
                break
            cur = successor[cur]
            path.append(cur)
        g.classes[i] = cls
    return g


def k_and_m(graph: SuccessorGraph, i: int, j: int) -> tuple[int, int]:
    """Total digits consumed and residue wraps after j quasi-greedy hops
    from i: sigma^j(i) = i + k - m p."""
    k = 0
    cur = i
    for _ in range(j):
        if cur not in graph.lengths:
            raise UndefinedIntermediate(f"vertex {cur} has an infinite expansion")
        k += graph.lengths[cur]
        cur = graph.successor[cur]
    m = (i + k - cur) // graph.p
    return k, m


def intermediate_w(records: list[ExpansionRecord], graph: SuccessorGraph,
                   i: int, j: int, prefix_len: int) -> tuple[Word, int, int]:
    """Prefix of the j-th intermediate expansion of 1 in the i-th shifted
    base, plus the constants (k_{i,j}, m_{i,j})."""
    k, m = k_and_m(graph, i, j)
    head: list[int] = []
    cur = i
    for _ in range(j):
        head.extend(records[cur].decremented_prefix())
        cur = graph.successor[cur]
    tail = records[cur]
    pre = tuple(head) + tail.preperiod
    return periodic_prefix(pre, tail.period, prefix_len), k, m


def quasi_greedy(records: list[ExpansionRecord]) -> list[tuple[Word, Word]]:
    """The maximal infinite expansions of 1 for every shift, as canonical
    (preperiod, period) pairs.  Unfolds the decrement-and-recurse rule
    along the successor map until it reaches an infinite expansion or
    wraps around a cycle."""
    p = len(records)
    if any(r.is_unknown for r in records):
        raise UnresolvedExpansion("cannot compute quasi-greedy expansions")
    out = []
    for i in range(p):
        head: list[int] = []
        path = [i]
        pos = {i: 0}
        cur = i
        result = None
        while True:
            rec = records[cur]
            if rec.is_periodic:
                result = minimal_period_form(tuple(head) + rec.preperiod, rec.period)
                break
            nxt = (cur + rec.length) % p
            if nxt in pos:
                # wrapped onto a cycle: emit the blocks around the cycle
                upto = pos[nxt]
                skip: list[int] = []
                cyc: list[int] = []
                for t, v in enumerate(path):
                    block = records[v].decremented_prefix()
                    (skip if t < upto else cyc).append(block)
                flat_skip = tuple(d for b in skip for d in b) if skip else ()
                flat_cyc = tuple(d for b in cyc for d in b)
                result = minimal_period_form(flat_skip, flat_cyc)
                break
            head.extend(rec.decremented_prefix())
            pos[nxt] = len(path)
            path.append(nxt)
            cur = nxt
        out.append(result)
    return out


# ---------------------------------------------------------------------------
# greedy expansion of 1 with remainder memorisation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExpansionBudget:
    steps: int = 10_000
    coefficient_bits: int = 8192


class _IntegerExpander:
    """Exact greedy arithmetic over Z[theta]/denominator for a monic field
    polynomial: remainders are (integer coordinate vector, positive
    denominator), thetapowers are enclosed by dyadic intervals, and every
    step uses plain integer arithmetic (the Fraction layer would spend
    most of its time in gcd normalisation)."""

    def __init__(self, base: AlternateBase):
        field = base.field
        self.field = field
        self.deg = field.degree
        if any(c.denominator != 1 for row in
               [field._power_row(j) for j in range(self.deg, 2 * self.deg - 1)]
               for c in row):
            raise ValueError("integer expansion path needs a monic field polynomial")
        self.rows = [tuple(int(c) for c in field._power_row(j))
                     for j in range(2 * self.deg - 1)]
        self.betas = []
        for b in base.betas:
            den = math.lcm(*[c.denominator for c in b.coords])
            self.betas.append((tuple(int(c * den) for c in b.coords), den))
        self.prec = 64
        self._enclosure()

    def _enclosure(self):
        """Dyadic bounds 2^-prec * [lo_k, hi_k] for theta^k, k < deg."""
        scale = 1 << self.prec
        if self.deg == 1:
            self.pow_lo = self.pow_hi = [scale]
            return
        theta = self.field.theta
        while theta.lo <= 0:
            theta.refine()
        theta.refine_below(Fraction(1, 1 << (self.prec // 2)))
        lo, hi = theta.lo, theta.hi
        lo_i = (lo.numerator * scale) // lo.denominator
        hi_i = -((-hi.numerator * scale) // hi.denominator)
        pow_lo, pow_hi = [scale], [scale]
        for _ in range(self.deg - 1):
            # theta > 0 here, so interval powers stay ordered
            pow_lo.append((pow_lo[-1] * lo_i) >> self.prec)
            pow_hi.append(((pow_hi[-1] * hi_i) >> self.prec) + 1)
        self.pow_lo, self.pow_hi = pow_lo, pow_hi

    def refine(self):
        self.prec *= 2
        self._enclosure()

    def mul_beta(self, num: tuple, den: int, which: int) -> tuple[tuple, int]:
        bnum, bden = self.betas[which % len(self.betas)]
        d = self.deg
        conv = [0] * (2 * d - 1)
        for a, x in enumerate(num):
            if x:
                for b, y in enumerate(bnum):
                    if y:
                        conv[a + b] += x * y
        out = list(conv[:d])
        for j in range(d, 2 * d - 1):
            c = conv[j]
            if c:
                row = self.rows[j]
                for k in range(d):
                    out[k] += c * row[k]
        return tuple(out), den * bden

    def floor(self, num: tuple, den: int) -> int:
        if all(c == 0 for c in num[1:]):
            return num[0] // den
        while True:
            lo = hi = 0
            for c, pl, ph in zip(num, self.pow_lo, self.pow_hi):
                if c >= 0:
                    lo += c * pl
                    hi += c * ph
                else:
                    lo += c * ph
                    hi += c * pl
            q = den << self.prec
            flo = lo // q
            fhi = hi // q
            if flo == fhi:
                return flo
            self.refine()

    @staticmethod
    def normalise(num: tuple, den: int) -> tuple[tuple, int]:
        g = den
        for c in num:
            g = math.gcd(g, c)
            if g == 1:
                return num, den
        return tuple(c // g for c in num), den // g


def expand_one(base: AlternateBase, i: int, budget: ExpansionBudget | None = None) -> ExpansionRecord:
    """Greedy expansion of 1 in the i-th shift of the base.

    States (phase mod p, exact remainder) are memorised; a repeat proves
    ultimate periodicity and zero remainder proves finiteness.  Exhausting
    either budget component (steps or coefficient size) returns an
    unknown record."""
    if budget is None:
        budget = ExpansionBudget()
    if base.is_degenerate:
        # the single base 1: the only representation of 1 is the fixed word
        # with first digit 1 and a zero tail
        return ExpansionRecord(shift=0, status=FINITE, preperiod=(1,), steps_used=0)
    p = base.p
    ex = _IntegerExpander(base)
    num = (1,) + (0,) * (ex.deg - 1)
    den = 1
    digits: list[int] = []
    seen: dict[tuple, int] = {}
    n = 0
    bit_cap = budget.coefficient_bits
    while n < budget.steps:
        if max(den.bit_length(), max(abs(c).bit_length() for c in num)) > bit_cap:
            break
        key = ((i + n) % p, num, den)
        if key in seen:
            start = seen[key]
            pre, per = minimal_period_form(tuple(digits[:start]), tuple(digits[start:]))
            return ExpansionRecord(shift=i, status=PERIODIC, preperiod=pre,
                                   period=per, steps_used=n)
        seen[key] = n
        num, den = ex.mul_beta(num, den, i + n)
        a = ex.floor(num, den)
        num = (num[0] - a * den,) + num[1:]
        num, den = ex.normalise(num, den)
        digits.append(a)
        n += 1
        if all(c == 0 for c in num):
            pre, _ = minimal_period_form(tuple(digits), ())
            return ExpansionRecord(shift=i, status=FINITE, preperiod=pre, steps_used=n)
    return ExpansionRecord(shift=i, status=UNKNOWN, steps_used=n)


def verify_record(base: AlternateBase, rec: ExpansionRecord) -> bool:
    """Independent check that the recorded digits represent 1 exactly in
    the shifted base (geometric closed form for the periodic tail)."""
    if rec.is_unknown:
        raise UnresolvedExpansion("cannot verify an unknown record")
    if base.is_degenerate:
        return rec.preperiod == (1,) and not rec.period
    i = rec.shift
    p = base.p
    total = base.field.zero
    denom = base.field.one
    q = len(rec.preperiod)
    for j, t in enumerate(rec.preperiod):
        denom = denom * base.beta(i + j)
        if t:
            total = total + base.field.from_rational(t) / denom
    if rec.is_finite:
        return total == base.field.one
    # stretch the period to a multiple of p so the per-block product of
    # bases is a power of theta, independent of phase
    m = len(rec.period)
    stretch = m * p // math.gcd(m, p)
    block = periodic_prefix(rec.preperiod, rec.period, q + stretch)[q:]
    block_sum = base.field.zero
    d2 = denom
    for j, t in enumerate(block):
        d2 = d2 * base.beta(i + q + j)
        if t:
            block_sum = block_sum + base.field.from_rational(t) / d2
    ratio = d2 / denom  # theta ** (stretch / p)
    total = total + block_sum * ratio / (ratio - base.field.one)
    return total == base.field.one


# ---------------------------------------------------------------------------
# base extraction
# ---------------------------------------------------------------------------


class _Rejected(Exception):
    def __init__(self, message, uncertifiable=False, unequal=False):
        super().__init__(message)
        self.uncertifiable = uncertifiable
        self.unequal = unequal


def default_p_bound(degree: int) -> int:
    """2 * lcm of all root-of-unity orders whose totient fits the degree;
    no minimal p can exceed this."""
    import math

    acc = 1
    k = 1
    while k <= 2 * degree * degree + 1:
        if totient(k) <= degree:
            acc = math.lcm(acc, k)
        k += 1
    return 2 * acc


_PRACTICAL_SCAN_CAP = 64


def _numeric_candidates(m: IntPolynomial, cap: int) -> list[int]:
    """Plausible residue counts p from floating-point root data: the
    dominating eigenvalues (maximal multiplicity among maximal modulus)
    must have aligned p-th powers on the positive real axis.  Guidance
    only; every returned candidate is validated exactly."""
    import numpy as np

    classes = m.squarefree_decomposition()
    roots = []
    for f, mult in classes:
        if f.degree == 0:
            continue
        cs = np.array([float(c) for c in reversed(f.coeffs)], dtype=float)
        for z in np.roots(cs):
            roots.append((complex(z), mult))
    if not roots:
        return []
    rho = max(abs(z) for z, _ in roots)
    if rho == 0:
        return []
    near = [(z, mult) for z, mult in roots if abs(z) >= rho * (1 - 1e-8)]
    mu = max(mult for _, mult in near)
    dominating = [z for z, mult in near if mult == mu]
    out = []
    for p in range(1, cap + 1):
        ok = True
        for z in dominating:
            ang = cmath.phase(z) * p
            # distance of ang to the nearest multiple of 2*pi
            frac = abs(ang / (2 * cmath.pi) - round(ang / (2 * cmath.pi)))
            if frac > 1e-6 * max(1, p):
                ok = False
                break
        if ok:
            out.append(p)
    return out


def _rev_theta2(field: NumberField, poly: list[FieldElement]) -> list[FieldElement]:
    """X^d * poly(theta^2 / X): its roots are theta^2 / root for every root
    of ``poly``, so a nontrivial gcd with ``poly`` witnesses a pair of
    roots straddling (or sitting on) the modulus-theta circle."""
    d = len(poly) - 1
    t2 = field.gen * field.gen
    scaled = []
    power = field.one
    for k, c in enumerate(poly):
        scaled.append(c * power)
        if k < d:
            power = power * t2
    return fstrip(list(reversed(scaled)))


def _graeffe_step(field: NumberField, cur: list[FieldElement]) -> list[FieldElement]:
    """One root-squaring step: for monic R, returns monic S with
    S(x^2) = (-1)^d R(x) R(-x), whose roots are the squares of R's."""
    d = len(cur) - 1
    nxt = []
    for k in range(d + 1):
        acc = field.zero
        for a in range(max(0, 2 * k - d), min(2 * k, d) + 1):
            b = 2 * k - a
            term = cur[a] * cur[b]
            acc = acc + (term if b % 2 == 0 else -term)
        if d % 2 == 1:
            acc = -acc
        nxt.append(acc)
    return nxt


def _graeffe_all_below(field: NumberField, poly: list[FieldElement], max_iter: int = 64) -> bool:
    """Certify the max root modulus of a monic field polynomial against
    theta: True when every root is strictly inside the modulus-theta
    circle, False when some root is strictly outside.  The caller must
    have excluded roots of modulus exactly theta, which is what makes the
    root-squaring bounds conclusive."""
    d = len(poly) - 1
    if d <= 0:
        return True
    cur = list(poly)
    exp = 1
    from math import comb

    for _ in range(max_iter):
        # keep the theta-power interval tight relative to the exponent
        tau_lo, tau_hi = field.theta_pow_interval(exp)
        while tau_lo <= 0 or tau_hi / tau_lo > Fraction(17, 16):
            field.refine()
            tau_lo, tau_hi = field.theta_pow_interval(exp)
        abs_lo = []
        abs_hi = []
        for c in cur[:-1]:
            lo, hi = c.abs_interval()
            abs_lo.append(lo)
            abs_hi.append(hi)
        # Fujiwara bound: maxmod <= 2 * max_i |a_{d-i}|^(1/i) for monic input
        if all(abs_hi[d - i] < (tau_lo / 2) ** i for i in range(1, d + 1)):
            return True
        # symmetric-function bound: maxmod >= (|a_{d-i}| / C(d,i))^(1/i)
        if any(abs_lo[d - i] > comb(d, i) * tau_hi**i for i in range(1, d + 1)):
            return False
        cur = _graeffe_step(field, cur)
        exp *= 2
    raise _Rejected("root-modulus comparison did not converge", uncertifiable=True)


def _strictly_dominated(field: NumberField, poly: list[FieldElement]) -> bool:
    """All roots strictly inside the modulus-theta circle; rejects when any
    root sits on or outside it."""
    if fdeg(poly) <= 0:
        return True
    g = fgcd_monic(poly, _rev_theta2(field, poly))
    if fdeg(g) >= 1:
        # a pair (z, theta^2/z) of roots exists: some root has modulus >= theta
        return False
    return _graeffe_all_below(field, _monic(field, poly))


def _monic(field: NumberField, poly: list[FieldElement]) -> list[FieldElement]:
    if poly and not (poly[-1].is_rational() and poly[-1].as_fraction() == 1):
        inv = poly[-1].inverse()
        return [c * inv for c in poly]
    return list(poly)


def _x_pow_minus_theta_pow(field: NumberField, K: int) -> list[FieldElement]:
    theta_K = field.gen**K
    out = [-theta_K] + [field.zero] * (K - 1) + [field.one]
    return out


def _dominance_with_boundary(field: NumberField, cofactor: IntPolynomial,
                             mu: int, unit_order_cap: int) -> None:
    """Check that every root of ``cofactor`` is strictly below theta in
    modulus, except that roots equal to theta times a root of unity are
    tolerated with multiplicity at most mu - 1.  Raises _Rejected on
    failure or when exactness cannot be certified."""
    if cofactor.degree <= 0:
        return
    poly = _monic(field, fpoly_from_int(field, cofactor))
    g = fgcd_monic(poly, _rev_theta2(field, poly))
    if fdeg(g) == 0:
        if not _graeffe_all_below(field, poly):
            raise _Rejected("a residual eigenvalue is at least as large as the dominant one")
        return
    # boundary suspected: certify all common roots as theta * (K-th roots
    # of unity) for some K
    K_found = None
    for K in range(1, unit_order_cap + 1):
        if fdivides(g, _x_pow_minus_theta_pow(field, K)):
            K_found = K
            break
    if K_found is None:
        raise _Rejected("modulus-theta boundary roots are not recognisable "
                        "as theta times roots of unity", uncertifiable=True)
    xk = _x_pow_minus_theta_pow(field, K_found)
    rem = poly
    boundary_mult = 0
    while True:
        w = fgcd_monic(rem, xk)
        if fdeg(w) == 0:
            break
        rem = fexact_div(rem, w)
        boundary_mult += 1
    if boundary_mult > mu - 1:
        raise _Rejected(
            f"a modulus-theta eigenvalue carries multiplicity {boundary_mult}, "
            f"matching the dominant multiplicity {mu}")
    g2 = fgcd_monic(rem, _rev_theta2(field, rem))
    if fdeg(g2) >= 1:
        raise _Rejected("unclassified modulus-theta eigenvalue pair",
                        uncertifiable=True)
    if not _graeffe_all_below(field, rem):
        raise _Rejected("a residual eigenvalue is at least as large as the dominant one")


def _theta_leading_coeff(field: NumberField, m_i: IntPolynomial, mu: int,
                         seq: list[int]) -> FieldElement:
    """Leading coefficient (up to the common factorial) of the theta
    component of a sequence with minimal polynomial ``m_i``: the order-mu
    partial-fraction numerator of its generating function at 1/theta."""
    D = m_i.degree
    if len(seq) < D:
        raise ValueError("need at least deg(m_i) terms")
    # generating function numerator A and denominator B (reciprocal of m_i)
    B = list(reversed(m_i.coeffs))  # ints, B[0] = 1 for monic m_i
    A = []
    for k in range(D):
        acc = 0
        for j in range(k + 1):
            acc += seq[j] * B[k - j]
        A.append(acc)
    Bf = [field.from_rational(c) for c in B]
    one_minus_theta_x = [field.one, -field.gen]
    Btilde = Bf
    for _ in range(mu):
        Btilde = fexact_div(Btilde, one_minus_theta_x)
    inv_theta = field.gen.inverse()
    num = _feval(A, inv_theta, field)
    den = _feval(Btilde, inv_theta, field)
    return num / den


def _feval(poly, x: FieldElement, field: NumberField) -> FieldElement:
    acc = field.zero
    for c in reversed(poly):
        if isinstance(c, FieldElement):
            acc = acc * x + c
        else:
            acc = acc * x + field.from_rational(c)
    return acc


def extract_base(sys: PositionalSystem, p_search_bound: int | None = None,
                 guard: int = 8) -> AlternateBase:
    """Find the minimal p and exact limits beta_i = lim U_{np-i}/U_{np-i-1}.

    Raises BaseExtractionError with reason "NotRhoXiStructure" when no p
    within the searched bound admits the limits (which certifies that the
    numeration language is not regular), "UnequalDominantDegrees" when the
    residue subsequences disagree on the dominant multiplicity, and
    "UnsupportedField" when exact certification failed.
    """
    m = sys.min_poly(guard)
    if m.lc != 1:
        raise BaseExtractionError(
            "UnsupportedField", "minimal polynomial of the base sequence is not monic")
    deg = m.degree
    theoretical = default_p_bound(deg)
    bound = min(p_search_bound or theoretical, theoretical)
    scan_cap = min(bound, _PRACTICAL_SCAN_CAP)
    plausible = set(_numeric_candidates(m, scan_cap)) | set(range(1, min(8, scan_cap) + 1))
    saw_unequal = None
    saw_uncertifiable = None
    for p in range(1, scan_cap + 1):
        if p not in plausible:
            continue
        try:
            return _validate_candidate(sys, m, p, guard)
        except _Rejected as rej:
            if rej.unequal and saw_unequal is None:
                saw_unequal = (p, str(rej))
            if rej.uncertifiable and saw_uncertifiable is None:
                saw_uncertifiable = (p, str(rej))
    if saw_uncertifiable is not None:
        p, msg = saw_uncertifiable
        raise BaseExtractionError(
            "UnsupportedField", f"candidate p={p} could not be certified exactly: {msg}")
    if saw_unequal is not None:
        p, msg = saw_unequal
        raise BaseExtractionError("UnequalDominantDegrees", f"at p={p}: {msg}")
    raise BaseExtractionError(
        "NotRhoXiStructure",
        f"no residue count p <= {scan_cap} admits the limit ratios; the dominant "
        f"eigenvalues are not a positive real times roots of unity")


def _validate_candidate(sys: PositionalSystem, m: IntPolynomial, p: int,
                        guard: int) -> AlternateBase:
    deg = m.degree
    hp = power_transform(m, p)
    real_roots = isolate_real_roots(hp)
    if not real_roots:
        raise _Rejected("the p-step eigenvalues have no real member")
    theta = real_roots[-1]
    if theta.compare(1) < 0:
        raise _Rejected("the dominant p-step eigenvalue is below 1")
    field = NumberField(theta)
    f_theta = theta.minpoly
    # theta must strictly dominate its own conjugates
    if field.degree > 1:
        fk = fpoly_from_int(field, f_theta)
        others = fexact_div(_monic(field, fk), [-field.gen, field.one])
        if not _strictly_dominated(field, others):
            raise _Rejected("theta does not strictly dominate its conjugates")
    # residue subsequences
    need = 2 * deg + guard
    seqs = []
    fits = []
    for i in range(p):
        seq = [sys.term((n + 1) * p - i) for n in range(need)]
        seqs.append(seq)
        fits.append(min_poly_of_sequence(seq, degree_bound=deg))
    mus = [f_theta.multiplicity_in(mi) for mi in fits]
    if min(mus) == 0:
        raise _Rejected("a residue subsequence does not carry the dominant eigenvalue")
    if len(set(mus)) != 1:
        raise _Rejected(f"dominant multiplicities differ across residues: {mus}",
                        unequal=True)
    mu = mus[0]
    unit_cap = 2 * (deg * max(1, field.degree)) ** 2 + 1
    unit_cap = min(unit_cap, 1024)
    for mi in fits:
        cof = mi
        for _ in range(mu):
            cof = cof.divmod_exact(f_theta)
        _dominance_with_boundary(field, cof, mu, unit_cap)
    qs = [_theta_leading_coeff(field, fits[i], mu, seqs[i]) for i in range(p)]
    if any(q.sign() <= 0 for q in qs):
        raise _Rejected("a residue subsequence has a nonpositive leading coefficient",
                        unequal=True)
    theta_elt = field.gen
    betas = [qs[i] / qs[i + 1] for i in range(p - 1)]
    betas.append(theta_elt * qs[p - 1] / qs[0])
    for b in betas:
        if b.compare(1) < 0:
            raise _Rejected("a limit ratio falls below 1")
    base = AlternateBase(p=p, betas=tuple(betas), field=field, theta=theta_elt)
    _numeric_containment(sys, base, deg)
    return base


def _numeric_containment(sys: PositionalSystem, base: AlternateBase, deg: int):
    """Cross-check the exact limits against actual term ratios at three
    sample depths; the deviation must not grow."""
    p = base.p
    depths = [3 * deg + 4, 6 * deg + 8, 12 * deg + 16]
    for i, b in enumerate(base.betas):
        mid, _ = b.approx(20)
        devs = []
        for n in depths:
            num = sys.term(n * p - i)
            den = sys.term(n * p - i - 1)
            devs.append(abs(Fraction(num, den) - mid))
        if not (devs[2] <= 2 * devs[1] + Fraction(1, 10**9)
                and devs[1] <= 2 * devs[0] + Fraction(1, 10**9)):
            raise _Rejected(
                f"term ratios for residue {i} do not settle towards the computed limit")
        if devs[2] > Fraction(1, 4):
            raise _Rejected(f"term ratios for residue {i} stay far from the computed limit")
