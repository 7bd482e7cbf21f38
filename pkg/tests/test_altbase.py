from fractions import Fraction

import pytest

from fixtures import (
    base_one_two_system,
    chain_system,
    deg8_system,
    drift_system,
    golden_one_system,
    golden_squared_pair_system,
    integer_base_system,
    loop_negative_system,
    rational_p4_system,
    running_system,
    sink_positive_system,
    slow_growth_system,
    sqrt13_system,
    zeckendorf_system,
)
from numreg.altbase import (
    ExpansionBudget,
    build_graph,
    expand_one,
    extract_base,
    format_periodic,
    intermediate_w,
    k_and_m,
    minimal_period_form,
    periodic_prefix,
    quasi_greedy,
    verify_record,
)
from numreg.errors import BaseExtractionError
from numreg.numeration import word


def expansions(base):
    return [expand_one(base, i) for i in range(base.p)]


class TestExtraction:
    def test_sqrt13(self):
        base = extract_base(sqrt13_system())
        assert base.p == 2
        k = base.field
        assert k.minpoly.coeffs == (-1, -3, 1)
        assert base.betas[0] == k.gen - 1            # (1+sqrt13)/2
        assert base.betas[1] == (k.gen + 1) / 3      # (5+sqrt13)/6

    def test_integer_base(self):
        base = extract_base(integer_base_system(7))
        assert base.p == 1
        assert base.betas[0] == 7

    def test_rational_p4(self):
        base = extract_base(rational_p4_system())
        assert base.p == 4
        assert [b.as_fraction() for b in base.betas] == [
            Fraction(4, 3), Fraction(3, 2), Fraction(8, 3), Fraction(3)]

    def test_running_field(self):
        base = extract_base(running_system())
        assert base.p == 5
        k = base.field
        assert k.minpoly.coeffs == (9, -16, 1)       # theta = 8 + sqrt55
        t = k.gen
        assert base.betas[0] == (3 * t - 13) / 17    # (11+3sqrt55)/17
        assert base.betas[1] == (t - 6) / 6          # (2+sqrt55)/6
        assert base.betas[2] == k.from_rational(2)
        assert base.betas[3] == (3 * t - 18) / 17    # (6+3sqrt55)/17
        assert base.betas[4] == (3 * t - 13) / 22    # (11+3sqrt55)/22

    def test_loop_negative_base(self):
        base = extract_base(loop_negative_system())
        assert base.p == 3
        t = base.field.gen                           # (23+sqrt541)/2
        assert base.field.minpoly.coeffs == (-3, -23, 1)
        assert base.betas[0] == (2 * t - 4) / 15     # (19+sqrt541)/15
        assert base.betas[1] == (t - 6) / 7          # (11+sqrt541)/14
        assert base.betas[2] == (t - 3) / 6          # (17+sqrt541)/12

    def test_sink_positive_base(self):
        base = extract_base(sink_positive_system())
        assert base.p == 3
        t = base.field.gen                           # (23+sqrt489)/2
        assert base.field.minpoly.coeffs == (10, -23, 1)
        assert base.betas[0] == (t - 2) / 8          # (19+sqrt489)/16
        assert base.betas[1] == (2 * t + 30) / 29    # (53+sqrt489)/29
        assert base.betas[2] == (t - 9) / 4          # (5+sqrt489)/8

    def test_golden_one(self):
        base = extract_base(golden_one_system())
        assert base.p == 2
        # product of the entries is phi, so the field is Q(phi)
        assert base.field.minpoly.coeffs == (-1, -1, 1)
        assert base.betas[1] == 1
        assert base.betas[0] == base.field.gen

    def test_degenerate_dominant_one(self):
        base = extract_base(slow_growth_system())
        assert base.p == 1
        assert base.is_degenerate

    def test_mixed_degree_field(self):
        base = extract_base(deg8_system((1, 2, 4, 6, 12, 17, 34, 47), "A"))
        assert base.p == 2
        assert base.field.minpoly.coeffs == (-2, 0, -2, -2, 1)
        assert base.betas[0] == 2
        assert base.betas[1] == base.field.gen / 2

    def test_degree_four_coordinates(self):
        base = extract_base(deg8_system((1, 2, 3, 5, 8, 13, 21, 34), "B"))
        assert base.p == 2
        d = base.field.gen
        expected = (d * Fraction(371, 755) + Fraction(81, 755)
                    - d * d * Fraction(28, 755) + d * d * d * Fraction(18, 755))
        assert base.betas[0] == expected

    def test_golden_squared_pair(self):
        base = extract_base(golden_squared_pair_system())
        assert base.p == 3
        assert base.betas[0] == 3

    def test_quotient_bound_registered(self):
        s = sqrt13_system()
        base = extract_base(s)
        s.register_alphabet_limit(base.ceiling())
        assert s.alphabet_max() == 2

    def test_not_rho_xi_structure(self):
        # eigenvalues 2 and -3: dominant is -3, no positive-real alignment
        s = None
        from numreg.numeration import PositionalSystem

        s = PositionalSystem([-1, 6], [1, 2], name="misaligned")
        with pytest.raises(BaseExtractionError) as err:
            extract_base(s)
        assert err.value.reason == "NotRhoXiStructure"

    def test_product_equals_generator(self):
        for system in (sqrt13_system(), running_system(), loop_negative_system()):
            base = extract_base(system)
            prod = base.field.one
            for b in base.betas:
                prod = prod * b
            assert prod == base.theta
            for b in base.betas:
                assert b.compare(1) >= 0

    def test_numeric_containment(self):
        base = extract_base(sqrt13_system())
        s = sqrt13_system()
        for i, b in enumerate(base.betas):
            mid, _ = b.approx(18)
            prev = None
            for n in (12, 24, 48):
                dev = abs(Fraction(s.term(n * 2 - i), s.term(n * 2 - i - 1)) - mid)
                if prev is not None:
                    assert dev <= prev + Fraction(1, 10**9)
                prev = dev


class TestExpansion:
    def test_sqrt13_both_shifts(self):
        base = extract_base(sqrt13_system())
        recs = expansions(base)
        assert recs[0].status == "finite" and recs[0].preperiod == (2, 0, 1)
        assert recs[1].status == "finite" and recs[1].preperiod == (1, 1)
        assert recs[0].length == 3 and recs[1].length == 2

    def test_golden_one_shift_one(self):
        base = extract_base(golden_one_system())
        recs = expansions(base)
        assert recs[0].preperiod == (1, 0, 1)
        assert recs[1].preperiod == (1,)
        assert recs[1].length == 1

    def test_running_tables(self):
        base = extract_base(running_system())
        recs = expansions(base)
        words = [format_periodic(r.preperiod, r.period) for r in recs]
        assert words == ["1110^w", "11(00010)^w", "20^w", "110^w", "110^w"]

    def test_budget_exhaustion(self):
        base = extract_base(deg8_system((1, 2, 3, 5, 8, 13, 21, 34), "B"))
        rec = expand_one(base, 0, ExpansionBudget(steps=50, coefficient_bits=10**6))
        assert rec.status == "unknown"
        assert rec.steps_used == 50

    def test_coefficient_bits_budget(self):
        base = extract_base(deg8_system((1, 2, 3, 5, 8, 13, 21, 34), "B"))
        rec = expand_one(base, 0, ExpansionBudget(steps=10**6, coefficient_bits=64))
        assert rec.status == "unknown"
        assert rec.steps_used < 100

    def test_degenerate_fixed_record(self):
        base = extract_base(slow_growth_system())
        rec = expand_one(base, 0)
        assert rec.status == "finite" and rec.preperiod == (1,)

    def test_records_evaluate_to_one(self):
        for system in (sqrt13_system(), running_system(), sink_positive_system(),
                       golden_one_system(), rational_p4_system()):
            base = extract_base(system)
            for rec in expansions(base):
                assert verify_record(base, rec)

    def test_periodic_record_minimal_form(self):
        base = extract_base(running_system())
        rec = expand_one(base, 1)
        assert rec.status == "ultimately_periodic"
        assert rec.preperiod == (1, 1)
        assert rec.period == (0, 0, 0, 1, 0)


class TestQuasiGreedy:
    def test_sqrt13(self):
        base = extract_base(sqrt13_system())
        q = quasi_greedy(expansions(base))
        assert q[0] == ((2,), (0, 1)) or periodic_prefix(*q[0], 8) == word("20010101")
        assert periodic_prefix(*q[1], 8) == word("10101010")

    def test_golden_one_leading_zero(self):
        base = extract_base(golden_one_system())
        q = quasi_greedy(expansions(base))
        assert periodic_prefix(*q[0], 8) == word("10001000")
        assert periodic_prefix(*q[1], 9) == word("010001000")

    def test_running_table(self):
        base = extract_base(running_system())
        q = quasi_greedy(expansions(base))
        rendered = [format_periodic(*w) for w in q]
        assert rendered[0] == "(11010)^w"
        assert rendered[1] == "11(00010)^w"
        assert rendered[2] == "1(10110)^w"
        assert rendered[3] == "(10110)^w"
        assert rendered[4] == "1011(00010)^w"


class TestGraph:
    def test_running_graph(self):
        base = extract_base(running_system())
        g = build_graph(expansions(base))
        assert g.edges() == [(0, 3), (2, 3), (3, 0), (4, 1)]
        kinds = {i: c.kind for i, c in g.classes.items()}
        assert kinds == {0: "in_cycle", 1: "no_successor", 2: "leads_to_cycle",
                         3: "in_cycle", 4: "leads_to_no_successor"}

    def test_loop_negative_graph(self):
        base = extract_base(loop_negative_system())
        g = build_graph(expansions(base))
        assert g.edges() == [(0, 2), (1, 2), (2, 1)]
        assert g.classes[0].kind == "leads_to_cycle"
        assert set(g.cycles[0]) == {1, 2}

    def test_self_loop(self):
        base = extract_base(integer_base_system(2))
        g = build_graph(expansions(base))
        assert g.classes[0].kind == "in_cycle"
        assert g.classes[0].cycle_length == 1

    def test_chain_graph(self):
        base = extract_base(chain_system(1))
        g = build_graph(expansions(base))
        assert g.edges() == [(0, 1)]
        assert g.classes[0].kind == "leads_to_no_successor"
        assert g.classes[1].kind == "no_successor"


class TestIntermediate:
    def test_running_w02(self):
        base = extract_base(running_system())
        recs = expansions(base)
        g = build_graph(recs)
        w, k, m = intermediate_w(recs, g, 0, 2, 12)
        assert w == word("110101110000")
        assert (k, m) == (5, 1)

    def test_j_zero_is_the_expansion(self):
        base = extract_base(running_system())
        recs = expansions(base)
        g = build_graph(recs)
        w, k, m = intermediate_w(recs, g, 2, 0, 6)
        assert w == word("200000")
        assert (k, m) == (0, 0)

    def test_zeckendorf_family(self):
        base = extract_base(zeckendorf_system())
        recs = expansions(base)
        g = build_graph(recs)
        for j in range(4):
            w, k, m = intermediate_w(recs, g, 0, j, 2 * j + 4)
            assert w == word("10" * j + "1100")
            assert k == 2 * j and m == 2 * j

    def test_k_and_m_drift(self):
        base = extract_base(drift_system())
        recs = expansions(base)
        g = build_graph(recs)
        assert k_and_m(g, 1, 1) == (1, 1)
        assert k_and_m(g, 0, 1) == (2, 1)


class TestPeriodicWords:
    def test_minimal_form_rolls_back(self):
        assert minimal_period_form(word("200"), word("10")) == ((2, 0), (0, 1))

    def test_reduces_repeated_period(self):
        assert minimal_period_form((), (1, 0, 1, 0)) == ((), (1, 0))

    def test_finite_strips_zeros(self):
        assert minimal_period_form((2, 1, 0, 0), ()) == ((2, 1), ())
