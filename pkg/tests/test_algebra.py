from fractions import Fraction

import pytest

from numreg.algebra import (
    IntPolynomial,
    NumberField,
    RealAlgebraic,
    cyclotomic_poly,
    cyclotomic_profile,
    field_arith,
    field_compare,
    field_floor,
    isolate_real_roots,
    min_poly_of_sequence,
    power_transform,
)
from numreg.errors import NoRecurrenceFound

X = IntPolynomial([0, 1])


def poly(*ascending):
    return IntPolynomial(ascending)


class TestMinPoly:
    def test_constant_sequence(self):
        assert min_poly_of_sequence([1, 1, 1, 1, 1, 1]) == poly(-1, 1)

    def test_fibonacci_like(self):
        # 2x2 Hankel system by hand: a = b = 1
        assert min_poly_of_sequence([1, 2, 3, 5, 8, 13, 21, 34]) == poly(-1, -1, 1)

    def test_start_offset(self):
        seq = [99, 7] + [2**n for n in range(10)]
        assert min_poly_of_sequence(seq, start=2) == poly(-2, 1)

    def test_degree_bound_violation(self):
        with pytest.raises(NoRecurrenceFound):
            min_poly_of_sequence([1, 2, 3, 5, 8], degree_bound=1)

    def test_loop_negative_minimal_polynomial_factors(self):
        from fixtures import loop_negative_system

        m = loop_negative_system().min_poly()
        inner = poly(-3, -23, 7, 46, -5, -23, 1)
        assert m == inner.compose_power(3)

    def test_sink_positive_minimal_polynomial_factors(self):
        from fixtures import sink_positive_system

        m = sink_positive_system().min_poly()
        expected = (X**2 * poly(1, 1) * poly(1, -1, 1) * poly(1, 1, 1)
                    * poly(10, 0, 0, -23, 0, 0, 1))
        assert m == expected


class TestRootIsolation:
    def test_two_real_roots(self):
        roots = isolate_real_roots(poly(-1, -3, 1))
        assert len(roots) == 2
        pos = roots[1]
        pos.refine_below(Fraction(1, 10**6))
        assert Fraction(33, 10) < pos.lo < pos.hi < Fraction(331, 100)

    def test_no_real_roots(self):
        assert isolate_real_roots(poly(1, 0, 1)) == []

    def test_quartic_two_roots_dominant(self):
        roots = isolate_real_roots(poly(-2, 0, -2, -2, 1))
        assert len(roots) == 2
        dom = roots[-1]
        assert dom.compare(Fraction(28, 10)) > 0
        assert dom.compare(Fraction(281, 100)) < 0

    def test_ordering_and_disjointness(self):
        roots = isolate_real_roots(poly(0, -1, 0, 1) * poly(-4, 1))  # 0, +-1, 4
        vals = [float(r) for r in roots]
        assert vals == sorted(vals)
        assert len(roots) == 4
        for a, b in zip(roots, roots[1:]):
            assert a.hi <= b.lo

    def test_rational_roots_exact(self):
        roots = isolate_real_roots(poly(-6, 11, -6, 1))  # 1, 2, 3
        assert [r.as_fraction() for r in roots] == [1, 2, 3]


class TestPowerTransform:
    def test_linear(self):
        assert power_transform(poly(-2, 1), 3) == poly(-8, 1)

    def test_golden_square(self):
        assert power_transform(poly(-1, -1, 1), 2) == poly(1, -3, 1)

    def test_running_fifth_power(self):
        m = poly(9, 0, 0, 0, 0, -16, 0, 0, 0, 0, 1)
        hp = power_transform(m, 5)
        target = poly(9, -16, 1)
        assert target.multiplicity_in(hp) == 5

    def test_multiplicities_preserved(self):
        p = poly(-1, 1) ** 2 * poly(-3, 1)
        hp = power_transform(p, 2)
        assert hp == poly(-1, 1) ** 2 * poly(-9, 1)


class TestCyclotomicProfile:
    def test_double_fifth_roots(self):
        p = poly(-1, 0, 0, 0, 0, 1) ** 2  # (X^5-1)^2
        prof = cyclotomic_profile(p)
        assert prof.power_of_x == 0
        assert prof.unit_root_orders == [(1, 2), (5, 2)]
        assert prof.remainder == poly(1)

    def test_pure_power_of_x(self):
        prof = cyclotomic_profile(poly(0, 0, 0, 1))
        assert prof.power_of_x == 3
        assert prof.unit_root_orders == []
        assert prof.is_pure_power_of_x()

    def test_no_cyclotomic_part(self):
        prof = cyclotomic_profile(poly(-1, -3, 1))
        assert prof.unit_root_orders == []
        assert prof.remainder == poly(-1, -3, 1)

    def test_non_monotone_totient_order(self):
        # Phi_12 has degree 4 < phi(11) = 10: the scan must not stop early
        prof = cyclotomic_profile(cyclotomic_poly(12))
        assert prof.unit_root_orders == [(12, 1)]

    def test_reconstruction_identity(self):
        p = (poly(0, 1) ** 2 * cyclotomic_poly(3) * cyclotomic_poly(4) ** 2
             * poly(-1, -1, 1)) * 6
        prof = cyclotomic_profile(p)
        assert prof.reconstruct() == p


def sqrt13_field():
    theta = isolate_real_roots(poly(-1, -3, 1))[-1]  # (3+sqrt13)/2
    return NumberField(theta)


class TestFieldArithmetic:
    def test_floor_of_generator_combination(self):
        k = sqrt13_field()
        beta0 = k.gen - 1                      # (1+sqrt13)/2
        assert field_floor(beta0) == 2

    def test_floor_rational(self):
        k = sqrt13_field()
        assert field_floor(k.from_rational(Fraction(7, 2))) == 3

    def test_floor_between_one_and_two(self):
        k = sqrt13_field()
        beta1 = (k.gen + 1) / 3                # (5+sqrt13)/6
        assert field_floor(beta1) == 1

    def test_product_of_base_entries(self):
        k = sqrt13_field()
        beta0 = k.gen - 1
        beta1 = (k.gen + 1) / 3
        assert field_arith(beta0, beta1, "mul") == k.gen

    def test_subtraction_cancels(self):
        k = sqrt13_field()
        a = (k.gen * 7 - 3) / 5
        assert (a - a).is_zero()

    def test_compare_against_one(self):
        theta = isolate_real_roots(poly(10, -23, 1))[-1]   # (23+sqrt489)/2
        k = NumberField(theta)
        beta0 = (k.gen - 2) / 8               # (19+sqrt489)/16
        assert field_compare(beta0, 1) > 0

    def test_division_roundtrip(self):
        k = sqrt13_field()
        a = k.gen * 2 - 5
        b = (k.gen + 7) / 3
        assert (a / b) * b == a

    def test_floor_respects_order(self):
        k = sqrt13_field()
        vals = [k.gen - 1, k.gen * 2, k.from_rational(5), (1 - k.gen) / 7]
        for v in vals:
            f = field_floor(v)
            assert v.compare(f) >= 0
            assert v.compare(f + 1) < 0


class TestRealAlgebraicCompare:
    def test_equality_same_root(self):
        a = isolate_real_roots(poly(-1, -1, 1))[-1]
        b = isolate_real_roots(poly(-1, -1, 1) * poly(-5, 1))[1]
        assert a.compare(b) == 0

    def test_distinct_roots_of_same_polynomial(self):
        lo, hi = isolate_real_roots(poly(-1, 0, 1))
        assert lo.compare(hi) < 0

    def test_rational_vs_irrational(self):
        phi = isolate_real_roots(poly(-1, -1, 1))[-1]
        assert phi.compare(Fraction(8, 5)) > 0
        assert phi.compare(Fraction(13, 8)) < 0
