"""Command line interface.

Systems are described by a small versioned JSON document::

    {
      "format": "numreg-system/1",
      "name": "example",
      "recurrence": [0, 3, 0, 1],      # c_{m-1} ... c_0
      "initial": [1, 2, 5, 7],         # U_0 ... U_{m-1}
      "budgets": {"expansion_steps": 10000}
    }

``analyze`` exits with 0 when the numeration language is regular, 1 when
it is not, 2 when the verdict is unknown at the given budgets, and 3 on
malformed input.  Candidate maximal-word languages use::

    {
      "format": "numreg-maxwords/1",
      "finite": ["", "1", "11", "101"],
      "pieces": [{"x": "21", "y": "11", "z": "00"},
                 {"x": "2101", "y": "01", "z": "1"}]
    }
"""

from __future__ import annotations

import argparse
import json
import sys as _sys
from fractions import Fraction

from .altbase import format_periodic
from .automaton import (
    SlenderDecomposition,
    decompose_max_words,
    dot_export,
    json_export,
    max_words_automaton,
    strip_leading_zero_language,
)
from .decide import NOT_REGULAR, REGULAR, UNKNOWN, AnalysisReport, Budgets, analyze
from .errors import NumregError
from .numeration import PositionalSystem, oracle_language, system_from_max_words, word, word_str

EXIT_REGULAR = 0
EXIT_NOT_REGULAR = 1
EXIT_UNKNOWN = 2
EXIT_INPUT = 3


class InputError(Exception):
    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(path, f"cannot read: {exc}")
    except json.JSONDecodeError as exc:
        raise InputError(path, f"invalid JSON: {exc}")


def load_system(path) -> tuple[PositionalSystem, Budgets]:
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise InputError(path, "document must be a JSON object")
    fmt = doc.get("format")
    if fmt != "numreg-system/1":
        raise InputError(f"{path}#format", f"expected 'numreg-system/1', got {fmt!r}")
    rec = doc.get("recurrence")
    init = doc.get("initial")
    if not isinstance(rec, list) or not all(isinstance(c, int) for c in rec):
        raise InputError(f"{path}#recurrence", "must be a list of integers")
    if not isinstance(init, list) or not all(isinstance(c, int) for c in init):
        raise InputError(f"{path}#initial", "must be a list of integers")
    budgets = doc.get("budgets", {}) or {}
    if not isinstance(budgets, dict):
        raise InputError(f"{path}#budgets", "must be an object")
    known = {"expansion_steps", "expansion_coeff_bits", "p_bound", "fit_window"}
    for key in budgets:
        if key not in known:
            raise InputError(f"{path}#budgets.{key}", "unknown budget")
    try:
        system = PositionalSystem(rec, init, name=doc.get("name"))
    except (NumregError, ValueError) as exc:
        raise InputError(f"{path}#initial", str(exc))
    return system, Budgets(**budgets)


def _parse_word(obj, where):
    if isinstance(obj, str):
        if not all(ch.isdigit() for ch in obj):
            raise InputError(where, f"word {obj!r} must be a digit string")
        return word(obj)
    if isinstance(obj, list) and all(isinstance(d, int) and d >= 0 for d in obj):
        return tuple(obj)
    raise InputError(where, "word must be a digit string or list of nonnegative ints")


def load_maxwords(path) -> SlenderDecomposition:
    doc = _load_json(path)
    if doc.get("format") != "numreg-maxwords/1":
        raise InputError(f"{path}#format", "expected 'numreg-maxwords/1'")
    finite = [_parse_word(w, f"{path}#finite[{k}]")
              for k, w in enumerate(doc.get("finite", []))]
    pieces = []
    raw = doc.get("pieces")
    if not isinstance(raw, list) or not raw:
        raise InputError(f"{path}#pieces", "must be a nonempty list")
    for k, item in enumerate(raw):
        x = _parse_word(item.get("x", ""), f"{path}#pieces[{k}].x")
        y = _parse_word(item.get("y", ""), f"{path}#pieces[{k}].y")
        z = _parse_word(item.get("z", ""), f"{path}#pieces[{k}].z")
        if not x:
            raise InputError(f"{path}#pieces[{k}].x", "must be nonempty")
        if not y:
            raise InputError(f"{path}#pieces[{k}].y", "must be nonempty")
        pieces.append((x, y, z))
    d = len(pieces[0][1])
    if any(len(y) != d for _, y, _ in pieces):
        raise InputError(f"{path}#pieces", "all y blocks must share one length")
    start = min(len(x) + len(z) for x, _, z in pieces)
    return SlenderDecomposition(d=d, start_length=start, finite_part=finite,
                                pieces=pieces, name=doc.get("name"))


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _dec_string(x: Fraction, digits: int) -> str:
    sign = "-" if x < 0 else ""
    x = abs(x)
    whole = int(x)
    frac = x - whole
    ds = []
    for _ in range(digits):
        frac *= 10
        d = int(frac)
        ds.append(str(d))
        frac -= d
    return f"{sign}{whole}." + "".join(ds)


def _field_elt_json(b, digits=12):
    mid, err = b.approx(digits)
    return {
        "coords": [f"{c.numerator}/{c.denominator}" if c.denominator != 1
                   else str(c.numerator) for c in b.coords],
        "decimal": _dec_string(mid, digits),
        "error_bound": f"1e-{digits}",
    }


def _jsonify(x):
    if isinstance(x, dict):
        return {str(k): _jsonify(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_jsonify(v) for v in x]
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


def report_json_dict(report: AnalysisReport, digits=12) -> dict:
    sys_ = report.system
    doc = {
        "format": "numreg-report/1",
        "system": {
            "name": sys_.name,
            "recurrence": list(sys_.recurrence),
            "initial": list(sys_.initial),
        },
        "budgets": {
            "expansion_steps": report.budgets.expansion_steps,
            "expansion_coeff_bits": report.budgets.expansion_coeff_bits,
            "p_bound": report.budgets.p_bound,
            "fit_window": report.budgets.fit_window,
        },
        "verdict": report.overall,
        "reasons": list(report.reasons),
    }
    if report.extraction_failure:
        doc["extraction_failure"] = report.extraction_failure
    if report.base is not None:
        base = report.base
        doc["base"] = {
            "p": base.p,
            "field_poly": str(base.field.minpoly),
            "betas": [_field_elt_json(b, digits) for b in base.betas],
        }
    if report.records:
        doc["expansions"] = [
            {"shift": r.shift, "status": r.status,
             "preperiod": word_str(r.preperiod) if r.preperiod else "",
             "period": word_str(r.period) if r.period else "",
             "steps_used": r.steps_used}
            for r in report.records]
    if report.quasi:
        doc["quasi_greedy"] = [format_periodic(*q) for q in report.quasi]
    if report.graph is not None:
        doc["graph"] = {
            "edges": [[a, b] for a, b in report.graph.edges()],
            "categories": {str(i): c.kind for i, c in sorted(report.graph.classes.items())},
        }
    if report.verdicts:
        doc["vertices"] = {
            str(i): {"category": v.category, "result": v.result,
                     "reason": v.reason, "certificate": _jsonify(v.certificate)}
            for i, v in sorted(report.verdicts.items())}
    if report.decomposition is not None:
        dec = report.decomposition
        doc["max_word_decomposition"] = {
            "d": dec.d,
            "start_length": dec.start_length,
            "finite": [word_str(w) if w else "" for w in dec.finite_part],
            "pieces": [{"x": word_str(x), "y": word_str(y),
                        "z": word_str(z) if z else ""} for x, y, z in dec.pieces],
        }
    if report.automaton is not None:
        doc["automaton"] = json.loads(json_export(report.automaton))
    return doc


def render_json(report: AnalysisReport) -> str:
    return json.dumps(report_json_dict(report), sort_keys=True, indent=2) + "\n"


def render_text(report: AnalysisReport, digits=12) -> str:
    sys_ = report.system
    lines = []
    name = f" {sys_.name!r}" if sys_.name else ""
    lines.append(f"system{name}: order {sys_.order}")
    lines.append(f"  recurrence coefficients: {list(sys_.recurrence)}")
    lines.append(f"  initial terms:           {list(sys_.initial)}")
    if report.extraction_failure:
        lines.append(f"base extraction failed: {report.extraction_failure}")
    if report.base is not None:
        base = report.base
        lines.append(f"associated base: p = {base.p}, generator root of {base.field.minpoly}")
        for i, b in enumerate(base.betas):
            info = _field_elt_json(b, digits)
            coords = ", ".join(info["coords"])
            lines.append(f"  beta_{i} = [{coords}]  ~ {info['decimal']} (+- {info['error_bound']})")
    if report.records:
        lines.append("expansions of 1:")
        for r in report.records:
            if r.is_unknown:
                lines.append(f"  d_{r.shift} = unknown after {r.steps_used} steps")
            else:
                lines.append(f"  d_{r.shift} = {format_periodic(r.preperiod, r.period)}")
    if report.quasi:
        lines.append("maximal expansions of 1:")
        for i, q in enumerate(report.quasi):
            lines.append(f"  d*_{i} = {format_periodic(*q)}")
    if report.graph is not None:
        edges = ", ".join(f"{a}->{b}" for a, b in report.graph.edges()) or "(none)"
        lines.append(f"successor graph: {edges}")
        for i, c in sorted(report.graph.classes.items()):
            extra = ""
            if c.distance:
                extra = f" (distance {c.distance})"
            if c.cycle_length:
                extra += f" (cycle length {c.cycle_length})"
            lines.append(f"  vertex {i}: {c.kind}{extra}")
    for i, v in sorted(report.verdicts.items()):
        lines.append(f"vertex {i}: {v.result} [{v.certificate.get('criterion', '?')}] {v.reason}")
        interesting = {k: val for k, val in v.certificate.items()
                       if k in ("q0", "m0", "k", "M", "M_prime", "r", "delta_constants",
                                "cumulative_row", "drift", "failing_residue",
                                "gamma", "cycle_sum")}
        if interesting:
            lines.append(f"  parameters: {_jsonify(interesting)}")
    for reason in report.reasons:
        lines.append(f"note: {reason}")
    lines.append(f"verdict: {report.overall}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _budget_overrides(args, budgets: Budgets) -> Budgets:
    kw = {}
    for field in ("expansion_steps", "expansion_coeff_bits", "p_bound", "fit_window"):
        v = getattr(args, field, None)
        if v is not None:
            kw[field] = v
    if not kw:
        return budgets
    merged = {
        "expansion_steps": budgets.expansion_steps,
        "expansion_coeff_bits": budgets.expansion_coeff_bits,
        "p_bound": budgets.p_bound,
        "fit_window": budgets.fit_window,
    }
    merged.update(kw)
    return Budgets(**merged)


def cmd_analyze(args) -> int:
    system, budgets = load_system(args.system)
    budgets = _budget_overrides(args, budgets)
    report = analyze(system, budgets, exhaustive=args.exhaustive,
                     want_automaton=args.automaton)
    out = render_json(report) if args.json else render_text(report)
    print(out, end="")
    if report.overall == REGULAR:
        return EXIT_REGULAR
    if report.overall == NOT_REGULAR:
        return EXIT_NOT_REGULAR
    return EXIT_UNKNOWN


def cmd_terms(args) -> int:
    system, _ = load_system(args.system)
    for n in range(args.start, args.start + args.count):
        print(f"U_{n} = {system.term(n)}")
    return 0


def cmd_rep(args) -> int:
    system, _ = load_system(args.system)
    for x in args.values:
        print(f"rep({x}) = {word_str(system.rep(x))}")
    return 0


def cmd_maxwords(args) -> int:
    system, _ = load_system(args.system)
    for n in range(args.upto + 1):
        w = system.max_word(n)
        print(f"{system.term(n) - 1}\t{word_str(w)}")
    return 0


def cmd_base(args) -> int:
    system, budgets = load_system(args.system)
    budgets = _budget_overrides(args, budgets)
    from .altbase import extract_base

    base = extract_base(system, p_search_bound=budgets.p_bound)
    print(f"p = {base.p}")
    print(f"field generator: root of {base.field.minpoly}")
    for i, b in enumerate(base.betas):
        info = _field_elt_json(b, args.precision)
        print(f"beta_{i} = [{', '.join(info['coords'])}] "
              f"~ {info['decimal']} (+- {info['error_bound']})")
    return 0


def _resolved_report(args):
    system, budgets = load_system(args.system)
    budgets = _budget_overrides(args, budgets)
    return analyze(system, budgets)


def cmd_expansions(args) -> int:
    report = _resolved_report(args)
    if report.base is None:
        print(f"base extraction failed: {report.reasons}")
        return EXIT_UNKNOWN
    for r in report.records:
        if r.is_unknown:
            print(f"d_{r.shift}  = unknown after {r.steps_used} steps")
        else:
            print(f"d_{r.shift}  = {format_periodic(r.preperiod, r.period)}")
    for i, q in enumerate(report.quasi):
        print(f"d*_{i} = {format_periodic(*q)}")
    return 0 if report.quasi else EXIT_UNKNOWN


def cmd_graph(args) -> int:
    report = _resolved_report(args)
    if report.graph is None:
        print(f"graph unavailable: {report.reasons}")
        return EXIT_UNKNOWN
    g = report.graph
    if args.dot:
        lines = ["digraph successors {"]
        for i in range(g.p):
            lines.append(f"  v{i} [label=\"{i}\"];")
        for a, b in g.edges():
            lines.append(f"  v{a} -> v{b};")
        lines.append("}")
        print("\n".join(lines))
        return 0
    for a, b in g.edges():
        print(f"{a} -> {b}")
    for i, c in sorted(g.classes.items()):
        print(f"vertex {i}: {c.kind} distance={c.distance} cycle={c.cycle_length}")
    return 0


def cmd_automaton(args) -> int:
    system, budgets = load_system(args.system)
    budgets = _budget_overrides(args, budgets)
    report = analyze(system, budgets, want_automaton=True)
    if report.overall != REGULAR:
        print(f"no automaton: verdict is {report.overall}", file=_sys.stderr)
        return EXIT_NOT_REGULAR if report.overall == NOT_REGULAR else EXIT_UNKNOWN
    dfa = report.automaton
    if args.max_words:
        dfa = max_words_automaton(dfa)
    if args.no_leading_zeros:
        dfa = strip_leading_zero_language(dfa)
    print(dot_export(dfa) if args.dot else json_export(dfa), end="")
    return 0


def cmd_oracle_check(args) -> int:
    system, budgets = load_system(args.system)
    budgets = _budget_overrides(args, budgets)
    report = analyze(system, budgets, want_automaton=True)
    if report.overall != REGULAR:
        print(f"verdict is {report.overall}; nothing to check")
        return EXIT_NOT_REGULAR if report.overall == NOT_REGULAR else EXIT_UNKNOWN
    dfa = report.automaton
    oracle = oracle_language(system, args.maxlen)
    counts = dfa.count_per_length(args.maxlen)
    by_len = [0] * (args.maxlen + 1)
    for w in oracle:
        by_len[len(w)] += 1
    missing = [w for w in sorted(oracle) if not dfa.accepts(w)]
    if missing:
        print(f"MISMATCH: {word_str(missing[0])} in language but rejected")
        return EXIT_NOT_REGULAR
    if by_len != counts:
        print(f"MISMATCH: per-length counts differ: oracle {by_len}, automaton {counts}")
        return EXIT_NOT_REGULAR
    print(f"automaton agrees with the oracle on all {sum(by_len)} words "
          f"of length <= {args.maxlen}")
    return 0


def cmd_from_maxwords(args) -> int:
    decomp = load_maxwords(args.document)
    system = system_from_max_words(decomp)
    print(f"order: {system.order}")
    print(f"recurrence coefficients: {list(system.recurrence)}")
    print(f"initial terms: {list(system.initial)}")
    doc = {
        "format": "numreg-system/1",
        "name": decomp.name,
        "recurrence": list(system.recurrence),
        "initial": list(system.initial),
    }
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="numreg",
        description="Decide regularity of the numeration language of a "
                    "linear positional numeration system.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_budget_flags(p):
        p.add_argument("--expansion-steps", dest="expansion_steps", type=int)
        p.add_argument("--expansion-coeff-bits", dest="expansion_coeff_bits", type=int)
        p.add_argument("--p-bound", dest="p_bound", type=int)
        p.add_argument("--fit-window", dest="fit_window", type=int)

    p = sub.add_parser("analyze", help="run the full decision procedure")
    p.add_argument("system")
    p.add_argument("--json", action="store_true")
    p.add_argument("--exhaustive", action="store_true",
                   help="keep testing independent branches after a negative vertex")
    p.add_argument("--automaton", action="store_true",
                   help="compile the accepting automaton when regular")
    add_budget_flags(p)
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("terms", help="print base-sequence terms")
    p.add_argument("system")
    p.add_argument("-n", "--count", type=int, default=10)
    p.add_argument("--start", type=int, default=0)
    p.set_defaults(fn=cmd_terms)

    p = sub.add_parser("rep", help="greedy representations of given values")
    p.add_argument("system")
    p.add_argument("values", nargs="+", type=int)
    p.set_defaults(fn=cmd_rep)

    p = sub.add_parser("maxwords", help="largest word of each length")
    p.add_argument("system")
    p.add_argument("--upto", type=int, default=12)
    p.set_defaults(fn=cmd_maxwords)

    p = sub.add_parser("base", help="associated alternate base, exactly")
    p.add_argument("system")
    p.add_argument("--precision", type=int, default=12)
    add_budget_flags(p)
    p.set_defaults(fn=cmd_base)

    p = sub.add_parser("expansions", help="greedy and maximal expansions of 1")
    p.add_argument("system")
    add_budget_flags(p)
    p.set_defaults(fn=cmd_expansions)

    p = sub.add_parser("graph", help="successor graph and vertex categories")
    p.add_argument("system")
    p.add_argument("--dot", action="store_true")
    add_budget_flags(p)
    p.set_defaults(fn=cmd_graph)

    p = sub.add_parser("automaton", help="compile and export the accepting automaton")
    p.add_argument("system")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--max-words", action="store_true",
                   help="export the maximal-words automaton instead")
    p.add_argument("--no-leading-zeros", action="store_true",
                   help="restrict to representations without padding")
    add_budget_flags(p)
    p.set_defaults(fn=cmd_automaton)

    p = sub.add_parser("oracle-check", help="diff the automaton against brute force")
    p.add_argument("system")
    p.add_argument("--maxlen", type=int, default=10)
    add_budget_flags(p)
    p.set_defaults(fn=cmd_oracle_check)

    p = sub.add_parser("from-maxwords",
                       help="reconstruct the system from candidate maximal words")
    p.add_argument("document")
    p.add_argument("--out", help="write the system document here")
    p.set_defaults(fn=cmd_from_maxwords)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2, which collides with UNKNOWN
        return EXIT_INPUT if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"input error: {exc}", file=_sys.stderr)
        return EXIT_INPUT
    except NumregError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
