"""The decision procedure: is the numeration language regular?

The pipeline extracts the associated alternate base, resolves the greedy
expansions of 1 for all shifts, builds the successor graph, and then
settles each vertex with the criterion matching its category:

* no outgoing edge: some stack of the (q0, m0) comparison sequence must
  telescope to zero, which is read off its eigenvalue profile;
* leads to such a vertex: the one-sided difference sequence must be
  ultimately periodic;
* inside a cycle: all difference sequences around the cycle must be
  ultimately periodic and the cumulative sums over one full period must
  be nonnegative on every residue;
* leads to a cycle: the difference sequence may drift linearly, but each
  negative per-period drift must exactly cancel the cycle's cumulative
  sum, with no other drift along the path.

Vertices are processed terminal-first (cycles and sinks, then increasing
distance), because each criterion assumes its successors were already
found regular.  The overall verdict is REGULAR only when every vertex is;
a single negative vertex settles NOT_REGULAR; UNKNOWN arises only from
budget exhaustion while resolving expansions (or from an extraction that
could not be certified exactly).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from . import delta as dmod
from .altbase import (
    IN_CYCLE,
    LEADS_TO_CYCLE,
    LEADS_TO_NO_SUCCESSOR,
    NO_SUCCESSOR,
    AlternateBase,
    ExpansionBudget,
    ExpansionRecord,
    SuccessorGraph,
    build_graph,
    expand_one,
    extract_base,
    k_and_m,
    quasi_greedy,
)
from .delta import (
    DeltaSeq,
    PeriodicityReport,
    classify,
    cumulative_constants,
    delta_i_seq,
    delta_iqm_seq,
    gamma_constants,
    ultimate_zero_k,
)
from .errors import BaseExtractionError, NotDriftStable, NotPeriodic, NumregError
from .numeration import PositionalSystem

REGULAR = "REGULAR"
NOT_REGULAR = "NOT_REGULAR"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Budgets:
    expansion_steps: int = 10_000
    expansion_coeff_bits: int = 8192
    p_bound: int | None = None
    fit_window: int | None = None

    def expansion_budget(self) -> ExpansionBudget:
        return ExpansionBudget(self.expansion_steps, self.expansion_coeff_bits)


@dataclass
class VertexVerdict:
    vertex: int
    category: str
    result: str                    # 'regular' | 'not_regular' | 'unknown'
    certificate: dict = dc_field(default_factory=dict)
    reason: str = ""

    @property
    def is_regular(self):
        return self.result == "regular"


@dataclass
class AnalysisReport:
    system: PositionalSystem
    budgets: Budgets
    overall: str = UNKNOWN
    reasons: list[str] = dc_field(default_factory=list)
    base: AlternateBase | None = None
    extraction_failure: str | None = None
    records: list[ExpansionRecord] = dc_field(default_factory=list)
    quasi: list[tuple] = dc_field(default_factory=list)
    graph: SuccessorGraph | None = None
    verdicts: dict[int, VertexVerdict] = dc_field(default_factory=dict)
    automaton = None               # Dfa, filled on demand
    decomposition = None           # SlenderDecomposition

    # -- data the automaton compiler needs ---------------------------------

    def vertex_period(self, i: int) -> int:
        cert = self.verdicts[i].certificate
        return int(cert.get("length_period_steps", 1))

    def global_length_period(self) -> int:
        """Eventual period of the maximal-word shapes, in word lengths."""
        if self.overall != REGULAR or self.base is None:
            raise NumregError("a length period is only certified for regular systems")
        m = 1
        for i in range(self.base.p):
            m = math.lcm(m, self.vertex_period(i))
        return m * self.base.p

    def decomposition_scan_limit(self) -> int:
        depth = 0
        for v in self.verdicts.values():
            depth = max(depth, int(v.certificate.get("verified_from", 0)))
        d = self.global_length_period()
        return (depth + 4) * (self.base.p if self.base else 1) + 6 * d + 8


class _Analysis:
    """Scratch state shared by the per-vertex criteria."""

    def __init__(self, sys: PositionalSystem, base: AlternateBase,
                 records: list[ExpansionRecord], graph: SuccessorGraph,
                 budgets: Budgets):
        self.sys = sys
        self.base = base
        self.records = records
        self.graph = graph
        self.budgets = budgets
        self._finite_seqs: dict[int, DeltaSeq] = {}
        self._finite_reports: dict[int, PeriodicityReport] = {}

    def finite_seq(self, i: int) -> DeltaSeq:
        if i not in self._finite_seqs:
            self._finite_seqs[i] = delta_i_seq(self.sys, self.base.p, self.records[i], i)
        return self._finite_seqs[i]

    def finite_report(self, i: int) -> PeriodicityReport:
        if i not in self._finite_reports:
            self._finite_reports[i] = classify(self.finite_seq(i), self.budgets.fit_window)
        return self._finite_reports[i]

    def sample_start(self, vertices, M: int, extra: int = 0) -> int:
        """A sampling index safely inside the ultimate regime for all the
        given vertices at the given common period."""
        n0 = self.sys.order + 4
        for v in vertices:
            rep = self._finite_reports.get(v)
            if rep is not None:
                n0 = max(n0, rep.verified_from)
            n0 = max(n0, self.finite_seq(v).min_valid_n)
        return (n0 + self.base.p + M + extra) // M + 2

    # -- the four criteria ---------------------------------------------------

    def decide_no_successor(self, i: int) -> VertexVerdict:
        rec = self.records[i]
        q0 = len(rec.preperiod)
        m_word = len(rec.period)
        m0 = math.lcm(m_word, self.base.p)
        seq = delta_iqm_seq(self.sys, self.base.p, rec, i, q0, m0)
        rep = classify(seq, self.budgets.fit_window)
        k = ultimate_zero_k(rep, self.base.p, m0)
        cert = {
            "criterion": "vanishing_stack",
            "q0": q0,
            "m0": m0,
            "k": k,
            "delta_status": rep.status,
            "delta_period": rep.period,
            "delta_constants": dict(rep.constants),
            "verified_from": rep.verified_from,
            "length_period_steps": (k or 1) * m0 // self.base.p,
        }
        if rep.profile is not None:
            cert["eigenvalue_orders"] = list(rep.profile.unit_root_orders)
        if k is None:
            return VertexVerdict(i, NO_SUCCESSOR, "not_regular", cert,
                                 "no stack of the comparison sequence telescopes to zero")
        return VertexVerdict(i, NO_SUCCESSOR, "regular", cert,
                             f"stack of {k} copies telescopes to zero")

    def decide_leads_no_successor(self, i: int) -> VertexVerdict:
        rep = self.finite_report(i)
        cls = self.graph.classes[i]
        cert = {
            "criterion": "periodic_difference",
            "distance": cls.distance,
            "delta_status": rep.status,
            "delta_period": rep.period,
            "delta_constants": dict(rep.constants),
            "verified_from": rep.verified_from,
            "length_period_steps": rep.period if rep.is_ultimately_periodic else 1,
        }
        if rep.is_ultimately_periodic:
            return VertexVerdict(i, LEADS_TO_NO_SUCCESSOR, "regular", cert,
                                 "difference sequence is ultimately periodic")
        return VertexVerdict(i, LEADS_TO_NO_SUCCESSOR, "not_regular", cert,
                             f"difference sequence is not ultimately periodic ({rep.status})")

    def decide_cycle(self, cycle: tuple[int, ...]) -> dict[int, VertexVerdict]:
        root = min(cycle)
        r = len(cycle)
        reports = {v: self.finite_report(v) for v in cycle}
        bad = {v: rep for v, rep in reports.items() if not rep.is_ultimately_periodic}
        if bad:
            out = {}
            for v in cycle:
                cert = {"criterion": "cycle_nonnegative_sums",
                        "cycle": list(cycle),
                        "failing_vertex": min(bad),
                        "delta_status": reports[v].status}
                out[v] = VertexVerdict(v, IN_CYCLE, "not_regular", cert,
                                       f"difference sequence at vertex {min(bad)} "
                                       f"is not ultimately periodic")
            return out
        k_cyc, _ = k_and_m(self.graph, root, r)
        assert k_cyc % self.base.p == 0
        M = k_cyc // self.base.p
        for rep in reports.values():
            M = math.lcm(M, rep.period)
        m_prime = M * self.base.p // k_cyc
        depth = m_prime * r
        seqs = {v: self.finite_seq(v) for v in cycle}
        n0 = self.sample_start(cycle, M, extra=depth)
        hop, sums = cumulative_constants(self.graph, seqs, root, M, depth, n0)
        row = {e: sums[(e, depth)] for e in range(k_cyc // self.base.p)}
        # consistency: the full-cycle sums agree along the cycle after the
        # index shift (checked for every rotation)
        for j in range(1, r):
            v = self.graph.sigma(root, j)
            _, m_ij = k_and_m(self.graph, root, j)
            hop_v, sums_v = cumulative_constants(self.graph, seqs, v, M, depth, n0)
            for e in range(M):
                assert sums_v[((e - m_ij) % M, depth)] == sums[(e, depth)], \
                    "cycle rotation consistency failed"
        ok = all(val >= 0 for val in row.values())
        verdicts = {}
        for v in cycle:
            cert = {
                "criterion": "cycle_nonnegative_sums",
                "cycle": list(cycle),
                "root": root,
                "r": r,
                "k_cycle": k_cyc,
                "M": M,
                "M_prime": m_prime,
                "cumulative_row": dict(row),
                "delta_period": reports[v].period,
                "delta_constants": dict(reports[v].constants),
                "verified_from": max(rep.verified_from for rep in reports.values()),
                "length_period_steps": M,
            }
            if ok:
                verdicts[v] = VertexVerdict(v, IN_CYCLE, "regular", cert,
                                            "all cumulative cycle sums are nonnegative")
            else:
                neg = {e: val for e, val in row.items() if val < 0}
                verdicts[v] = VertexVerdict(v, IN_CYCLE, "not_regular", cert,
                                            f"negative cumulative cycle sum at residues {neg}")
        return verdicts

    def decide_leads_cycle(self, i: int) -> VertexVerdict:
        cls = self.graph.classes[i]
        s = cls.distance
        cycle_entry = self.graph.sigma(i, s)
        cycle = next(c for c in self.graph.cycles if cycle_entry in c)
        r = len(cycle)
        rep_i = self.finite_report(i)
        cert: dict = {
            "criterion": "drift_cancels_cycle",
            "distance": s,
            "cycle": list(cycle),
            "delta_status": rep_i.status,
            "verified_from": rep_i.verified_from,
        }
        if not rep_i.satisfies_drift_condition:
            cert["length_period_steps"] = 1
            return VertexVerdict(
                i, LEADS_TO_CYCLE, "not_regular", cert,
                "difference sequence has an eigenvalue that is not a root of "
                "unity of multiplicity at most 2")
        k_cyc, _ = k_and_m(self.graph, cycle_entry, r)
        M = k_cyc // self.base.p
        path = [self.graph.sigma(i, j) for j in range(s)]
        for v in path:
            M = math.lcm(M, self.finite_report(v).period)
        for v in cycle:
            M = math.lcm(M, self.finite_report(v).period)
        m_prime = M * self.base.p // k_cyc
        depth = m_prime * r
        _, m_is = k_and_m(self.graph, i, s)
        seqs = {v: self.finite_seq(v) for v in set(path) | set(cycle)}
        n0 = self.sample_start(list(set(path) | set(cycle)), M, extra=depth + m_is + M)
        try:
            gam = gamma_constants(self.graph, seqs, i, M, s, n0)
            _, sums = cumulative_constants(self.graph, seqs, cycle_entry, M, depth, n0)
        except (NotPeriodic, NotDriftStable) as exc:
            cert["length_period_steps"] = 1
            return VertexVerdict(i, LEADS_TO_CYCLE, "not_regular", cert | {"detail": str(exc)},
                                 "per-residue drift constants do not stabilise")
        cert.update({
            "M": M,
            "M_prime": m_prime,
            "r": r,
            "k_cycle": k_cyc,
            "drift": {f"{e},{j}": gam[(e, j)] for e in range(M) for j in range(s)},
            "cycle_row": {e: sums[(e, depth)] for e in range(M)},
            "length_period_steps": M,
        })
        matches = {}
        for e in range(M):
            g0 = gam[(e, 0)]
            if g0 == 0:
                matches[e] = ("zero_drift", 0, None)
                continue
            e_prime = (e - m_is) % M
            target = sums[(e_prime, depth)]
            rest_zero = all(gam[(e, j)] == 0 for j in range(1, s))
            if g0 == -target and g0 < 0 and rest_zero:
                matches[e] = ("drift_cancels", g0, target)
                continue
            cert["failing_residue"] = e
            cert["gamma"] = g0
            cert["cycle_sum"] = target
            return VertexVerdict(
                i, LEADS_TO_CYCLE, "not_regular", cert,
                f"drift {g0} at residue {e} does not cancel the cycle sum {target}")
        cert["matches"] = {e: kind for e, (kind, _, _) in matches.items()}
        return VertexVerdict(i, LEADS_TO_CYCLE, "regular", cert,
                             "every per-residue drift is zero or cancels the cycle sum")


def analyze(sys: PositionalSystem, budgets: Budgets | None = None,
            exhaustive: bool = False, want_automaton: bool = False) -> AnalysisReport:
    """Run the full decision procedure on a positional system."""
    budgets = budgets or Budgets()
    report = AnalysisReport(system=sys, budgets=budgets)
    try:
        base = extract_base(sys, p_search_bound=budgets.p_bound)
    except BaseExtractionError as exc:
        report.extraction_failure = exc.reason
        if exc.reason == "NotRhoXiStructure":
            report.overall = NOT_REGULAR
            report.reasons.append(
                "the limit ratios required for a regular language do not exist: " + str(exc))
        else:
            report.overall = UNKNOWN
            report.reasons.append(str(exc))
        return report
    report.base = base
    sys.register_alphabet_limit(base.ceiling())
    records = [expand_one(base, i, budgets.expansion_budget()) for i in range(base.p)]
    report.records = records
    unresolved = [r for r in records if r.is_unknown]
    if unresolved:
        report.overall = UNKNOWN
        for r in unresolved:
            report.reasons.append(
                f"expansion of 1 at shift {r.shift} unresolved after {r.steps_used} steps "
                f"(budget {budgets.expansion_steps} steps / {budgets.expansion_coeff_bits} bits)")
        return report
    report.quasi = quasi_greedy(records)
    graph = build_graph(records)
    report.graph = graph
    ana = _Analysis(sys, base, records, graph, budgets)

    # terminal vertices first, then increasing distance
    order: list[tuple[int, object]] = []
    for i in range(base.p):
        if graph.classes[i].kind == NO_SUCCESSOR:
            order.append((0, ("sink", i)))
    for cyc in graph.cycles:
        order.append((0, ("cycle", cyc)))
    for i in range(base.p):
        cls = graph.classes[i]
        if cls.kind in (LEADS_TO_NO_SUCCESSOR, LEADS_TO_CYCLE):
            order.append((cls.distance, ("path", i)))
    order.sort(key=lambda item: item[0])

    stop = False
    for _, task in order:
        if stop and not exhaustive:
            break
        kind = task[0]
        if kind == "sink":
            i = task[1]
            report.verdicts[i] = ana.decide_no_successor(i)
            if not report.verdicts[i].is_regular:
                stop = True
        elif kind == "cycle":
            for v, verdict in ana.decide_cycle(task[1]).items():
                report.verdicts[v] = verdict
                if not verdict.is_regular:
                    stop = True
        else:
            i = task[1]
            cls = graph.classes[i]
            prereq = [graph.sigma(i, j) for j in range(1, cls.distance + 1)]
            missing = [v for v in prereq if v not in report.verdicts]
            bad = [v for v in prereq if v in report.verdicts
                   and report.verdicts[v].result == "not_regular"]
            unknown = [v for v in prereq if v in report.verdicts
                       and report.verdicts[v].result == "unknown"]
            if bad or missing or unknown:
                report.verdicts[i] = VertexVerdict(
                    i, cls.kind, "unknown",
                    {"criterion": "prerequisite", "blocked_by": bad or unknown or missing},
                    "a successor language is not regular (or undecided); either "
                    "outcome remains possible for this vertex")
                continue
            if cls.kind == LEADS_TO_NO_SUCCESSOR:
                report.verdicts[i] = ana.decide_leads_no_successor(i)
            else:
                report.verdicts[i] = ana.decide_leads_cycle(i)
            if not report.verdicts[i].is_regular:
                stop = True

    results = [report.verdicts.get(i) for i in range(base.p)]
    if any(v is not None and v.result == "not_regular" for v in results):
        report.overall = NOT_REGULAR
        neg = [v.vertex for v in report.verdicts.values() if v.result == "not_regular"]
        report.reasons.append(f"vertex {min(neg)} fails its regularity criterion")
    elif all(v is not None and v.result == "regular" for v in results):
        report.overall = REGULAR
    else:
        report.overall = UNKNOWN
        report.reasons.append("some vertices were not decided")

    if want_automaton and report.overall == REGULAR:
        from .automaton import compile_dfa, decompose_max_words

        report.decomposition = decompose_max_words(sys, report)
        report.automaton = compile_dfa(report.decomposition, sys)
    return report


def certificate_replay(report: AnalysisReport, window: int = 6) -> bool:
    """Recompute every certified constant on a fresh index window; any
    mismatch means the certificate (hence the verdict) is wrong."""
    if report.graph is None:
        return True
    sys, base, graph = report.system, report.base, report.graph
    ana = _Analysis(sys, base, report.records, graph, report.budgets)
    for i, verdict in report.verdicts.items():
        cert = verdict.certificate
        crit = cert.get("criterion")
        if crit == "vanishing_stack" and cert.get("k"):
            q0, m0, k = cert["q0"], cert["m0"], cert["k"]
            seq = dmod.delta_iqm_seq(sys, base.p, report.records[i], i, q0, k * m0)
            n1 = cert["verified_from"] + k * m0 + window
            if any(seq.value(n) != 0 for n in range(n1, n1 + window)):
                return False
        elif crit == "periodic_difference" and verdict.is_regular:
            seq = ana.finite_seq(i)
            M = cert["delta_period"]
            n1 = cert["verified_from"] + window * M
            for n in range(n1, n1 + window):
                if seq.value(n) != cert["delta_constants"][n % M]:
                    return False
        elif crit == "cycle_nonnegative_sums" and "cumulative_row" in cert:
            root, M, depth = cert["root"], cert["M"], cert["M_prime"] * cert["r"]
            seqs = {v: ana.finite_seq(v) for v in cert["cycle"]}
            n0 = ana.sample_start(cert["cycle"], M, extra=depth) + 2
            _, sums = cumulative_constants(graph, seqs, root, M, depth, n0)
            for e, val in cert["cumulative_row"].items():
                if sums[(int(e), depth)] != val:
                    return False
        elif crit == "drift_cancels_cycle" and "drift" in cert:
            M, s = cert["M"], cert["distance"]
            vs = set(cert["cycle"]) | {graph.sigma(i, j) for j in range(s)}
            seqs = {v: ana.finite_seq(v) for v in vs}
            n0 = ana.sample_start(list(vs), M, extra=cert["M_prime"] * cert["r"] + M) + 2
            gam = gamma_constants(graph, seqs, i, M, s, n0)
            for key, val in cert["drift"].items():
                e, j = (int(x) for x in key.split(","))
                if gam[(e, j)] != val:
                    return False
    return True
