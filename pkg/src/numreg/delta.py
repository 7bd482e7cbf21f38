"""Integer difference sequences whose ultimate behaviour decides regularity.

Two families of sequences are built from the base sequence and the digits
of the expansions of 1:

* for a shift i whose expansion is infinite (ultimately periodic with
  preperiod q0 and period m0), the two-sided combination
  ``delta_iqm(i, q, m)_n`` compares U_{np-i} against the digit-weighted
  window of length q+m and the same window shifted by m;
* for a shift i whose expansion is finite of length l, the one-sided
  combination ``delta_i(i)_n = U_{np-i} - sum t_{i,l-1} U_{np-i-l}``.

Every such sequence eventually satisfies the recurrence of the base
sequence, so its minimal polynomial divides a known one; fitting it on a
window past the transient and reading the cyclotomic profile of the result
classifies the ultimate behaviour exactly: ultimately zero, ultimately
periodic (simple root-of-unity eigenvalues), ultimately periodic first
difference (root-of-unity eigenvalues of multiplicity at most two), or
none of these.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from .algebra import IntPolynomial, check_annihilates, cyclotomic_profile, min_poly_of_sequence
from .algebra.cyclotomic import CyclotomicProfile
from .altbase import ExpansionRecord, SuccessorGraph, k_and_m
from .errors import (
    NoRecurrenceFound,
    NotDriftStable,
    NotPeriodic,
    UndefinedIndex,
)
from .numeration import PositionalSystem

ULTIMATELY_ZERO = "ultimately_zero"
ULTIMATELY_PERIODIC = "ultimately_periodic"
LINEAR_DRIFT = "linear_drift"
IRREGULAR = "irregular"


class DeltaSeq:
    """A lazily evaluated integer sequence derived from base terms and
    expansion digits, with exact values at every valid index."""

    def __init__(self, sys: PositionalSystem, p: int, label: str, offset: int,
                 shift: int, value_fn):
        self.sys = sys
        self.p = p
        self.label = label
        self.shift = shift
        self._offset = offset  # digits consumed below index np - i
        self._fn = value_fn

    @property
    def min_valid_n(self) -> int:
        # need np - i >= offset
        return max(1, -(-(self._offset + self.shift) // self.p))

    def value(self, n: int) -> int:
        if n < self.min_valid_n:
            raise UndefinedIndex(f"{self.label} undefined at n={n}")
        return self._fn(n)

    def values(self, start: int, count: int) -> list[int]:
        return [self.value(n) for n in range(start, start + count)]

    def __repr__(self):
        return f"DeltaSeq({self.label})"


def delta_iqm_seq(sys: PositionalSystem, p: int, record: ExpansionRecord,
                  i: int, q: int, m: int) -> DeltaSeq:
    """The comparison sequence for an infinite expansion at shift i with
    window split (q, m)."""
    if not record.is_periodic:
        raise UndefinedIndex("the expansion at this shift is not infinite")

    digits = [record.digit(j) for j in range(q + m)]

    def fn(n: int) -> int:
        top = n * p - i
        first = sys.term(top)
        for l in range(1, q + m + 1):
            first -= digits[l - 1] * sys.term(top - l)
        second = sys.term(top - m)
        for l in range(1, q + 1):
            second -= digits[l - 1] * sys.term(top - m - l)
        return first - second

    return DeltaSeq(sys, p, f"delta[{i},{q},{m}]", q + m, i, fn)


def delta_i_seq(sys: PositionalSystem, p: int, record: ExpansionRecord,
                i: int) -> DeltaSeq:
    """The one-sided sequence for a finite expansion at shift i."""
    if not record.is_finite:
        raise UndefinedIndex("the expansion at this shift is not finite")
    digits = record.preperiod
    l_i = record.length

    def fn(n: int) -> int:
        top = n * p - i
        acc = sys.term(top)
        for l in range(1, l_i + 1):
            acc -= digits[l - 1] * sys.term(top - l)
        return acc

    return DeltaSeq(sys, p, f"delta[{i}]", l_i, i, fn)


def delta_iqm(sys: PositionalSystem, p: int, record: ExpansionRecord,
              i: int, q: int, m: int, n: int) -> int:
    return delta_iqm_seq(sys, p, record, i, q, m).value(n)


def delta_i(sys: PositionalSystem, p: int, record: ExpansionRecord,
            i: int, n: int) -> int:
    return delta_i_seq(sys, p, record, i).value(n)


@dataclass
class PeriodicityReport:
    """Certified ultimate behaviour of a difference sequence."""

    status: str
    minpoly: IntPolynomial | None = None
    profile: CyclotomicProfile | None = None
    period: int = 1
    verified_from: int = 0          # behaviour holds at every sampled n >= this
    constants: dict[int, int] = dc_field(default_factory=dict)   # residue -> value
    slopes: dict[int, int] = dc_field(default_factory=dict)      # residue -> per-period drift
    note: str = ""

    @property
    def is_ultimately_periodic(self) -> bool:
        return self.status in (ULTIMATELY_ZERO, ULTIMATELY_PERIODIC)

    @property
    def satisfies_drift_condition(self) -> bool:
        """Eigenvalues all zero or roots of unity with multiplicity <= 2:
        equivalently the M-step first difference is ultimately periodic."""
        return self.status in (ULTIMATELY_ZERO, ULTIMATELY_PERIODIC, LINEAR_DRIFT)


def classify(seq: DeltaSeq, fit_window: int | None = None) -> PeriodicityReport:
    """Fit the minimal polynomial of the tail of ``seq`` and classify its
    ultimate behaviour through the cyclotomic profile.  The fit skips the
    recurrence transient, is verified on a second window of equal size,
    and the per-residue constants (or drifts) are re-checked on a disjoint
    window of at least two periods."""
    order = seq.sys.order
    window = fit_window or 4 * order
    window = max(window, 2 * order + 6)
    start = order + seq.min_valid_n + 2
    vals = seq.values(start, 2 * window)
    try:
        fitted = min_poly_of_sequence(vals[:window], degree_bound=order)
    except NoRecurrenceFound as exc:
        return PeriodicityReport(status=IRREGULAR, note=f"no recurrence fits the tail: {exc}")
    if not check_annihilates(fitted, vals):
        return PeriodicityReport(status=IRREGULAR, minpoly=fitted,
                                 note="fitted recurrence fails on the verification window")
    prof = cyclotomic_profile(fitted)
    if prof.is_pure_power_of_x():
        tail_from = start
        for k in range(len(vals) - 1, -1, -1):
            if vals[k] != 0:
                tail_from = start + k + 1
                break
        return PeriodicityReport(status=ULTIMATELY_ZERO, minpoly=fitted, profile=prof,
                                 period=1, verified_from=tail_from,
                                 constants={0: 0})
    if prof.remainder.degree > 0:
        return PeriodicityReport(status=IRREGULAR, minpoly=fitted, profile=prof,
                                 note="an eigenvalue is neither zero nor a root of unity")
    orders = prof.orders
    M = 1
    for d in orders:
        M = math.lcm(M, d)
    # the verification tail must cover several full periods
    tail = seq.values(start + 2 * window, max(4 * M, 2 * M + window))
    seq_all = vals + tail
    if prof.all_unit_roots_simple():
        constants = {}
        base = len(seq_all) - M
        for e in range(M):
            constants[(start + base + e) % M] = seq_all[base + e]
        verify_from = start + window
        for k in range(window, len(seq_all)):
            if seq_all[k] != constants[(start + k) % M]:
                return PeriodicityReport(status=IRREGULAR, minpoly=fitted, profile=prof,
                                         note="period constants drift inside the window")
        return PeriodicityReport(status=ULTIMATELY_PERIODIC, minpoly=fitted, profile=prof,
                                 period=M, verified_from=verify_from, constants=constants)
    if prof.max_unit_root_multiplicity() <= 2:
        slopes = {}
        base = len(seq_all) - 2 * M
        for e in range(M):
            slopes[(start + base + e) % M] = seq_all[base + e + M] - seq_all[base + e]
        verify_from = start + window
        for k in range(window, len(seq_all) - M):
            if seq_all[k + M] - seq_all[k] != slopes[(start + k) % M]:
                return PeriodicityReport(status=IRREGULAR, minpoly=fitted, profile=prof,
                                         note="first differences are not ultimately periodic")
        return PeriodicityReport(status=LINEAR_DRIFT, minpoly=fitted, profile=prof,
                                 period=M, verified_from=verify_from, slopes=slopes)
    return PeriodicityReport(status=IRREGULAR, minpoly=fitted, profile=prof,
                             note="a root-of-unity eigenvalue has multiplicity above 2")


def ultimate_zero_k(report: PeriodicityReport, p: int, m0: int) -> int | None:
    """Smallest k >= 1 such that summing k copies of the (q0, m0) sequence
    along steps of m0/p telescopes to zero, read off the eigenvalue
    profile: all nonzero eigenvalues must be simple roots of unity whose
    order does not divide m0/p, and k is the least integer making every
    order divide k*(m0/p).  Returns None when no such k exists."""
    if report.status == ULTIMATELY_ZERO:
        return 1
    prof = report.profile
    if prof is None or prof.remainder.degree > 0:
        return None
    if not prof.all_unit_roots_simple():
        return None
    step = m0 // p
    k = 1
    for d, _ in prof.unit_root_orders:
        if step % d == 0:
            return None
        k = math.lcm(k, d // math.gcd(d, step))
    return k


def _constant_of(seq: DeltaSeq, M: int, residue: int, shift_back: int,
                 sample_from: int, samples: int) -> int:
    """Ultimate value of seq at indices n*M + residue - shift_back, checked
    constant over ``samples`` consecutive n."""
    vals = []
    n0 = sample_from
    for n in range(n0, n0 + samples):
        vals.append(seq.value(n * M + residue - shift_back))
    if any(v != vals[0] for v in vals):
        raise NotPeriodic(
            f"{seq.label} is not constant on residue {residue} (mod {M}): {vals}")
    return vals[0]


def cumulative_constants(graph: SuccessorGraph, deltas: dict[int, DeltaSeq],
                         i: int, M: int, depth: int, sample_from: int,
                         samples: int = 3) -> tuple[dict, dict]:
    """Tables of the per-hop ultimate constants and their partial sums
    along the successor orbit of i.

    Returns (hop_constants, partial_sums) where hop_constants[(e, j)] is
    the ultimate value of the j-th orbit sequence sampled at n*M + e minus
    its index shift, and partial_sums[(e, j)] is the sum of the first j of
    them (the empty sum being 0)."""
    hop: dict[tuple[int, int], int] = {}
    sums: dict[tuple[int, int], int] = {}
    for e in range(M):
        sums[(e, 0)] = 0
    for j in range(depth):
        v = graph.sigma(i, j)
        _, m_ij = k_and_m(graph, i, j)
        seq = deltas[v]
        for e in range(M):
            c = _constant_of(seq, M, e, m_ij, sample_from, samples)
            hop[(e, j)] = c
            sums[(e, j + 1)] = sums[(e, j)] + c
    return hop, sums


def gamma_constants(graph: SuccessorGraph, deltas: dict[int, DeltaSeq],
                    i: int, M: int, path_len: int, sample_from: int,
                    samples: int = 3) -> dict[tuple[int, int], int]:
    """Per-residue drift over one M-step of each sequence along the path
    from i: gamma[(e, j)] is the ultimate value of
    seq_j(n M + e - shift) - seq_j((n-1) M + e - shift)."""
    gam: dict[tuple[int, int], int] = {}
    for j in range(path_len):
        v = graph.sigma(i, j)
        _, m_ij = k_and_m(graph, i, j)
        seq = deltas[v]
        for e in range(M):
            diffs = []
            for n in range(sample_from, sample_from + samples):
                diffs.append(seq.value(n * M + e - m_ij)
                             - seq.value((n - 1) * M + e - m_ij))
            if any(d != diffs[0] for d in diffs):
                raise NotDriftStable(
                    f"{seq.label} drift not constant on residue {e} (mod {M}): {diffs}")
            gam[(e, j)] = diffs[0]
    return gam
