import pytest

from fixtures import (
    base_one_two_system,
    candidate_maxwords_system,
    integer_base_system,
    n_3n_system,
    period_two_irrational_system,
    running_system,
    slow_growth_system,
    sqrt13_system,
    zeckendorf_system,
)
from numreg.automaton import SlenderDecomposition
from numreg.errors import InvalidCandidate, NotIncreasing, OutOfRange
from numreg.numeration import PositionalSystem, oracle_language, system_from_max_words, word


class TestTerms:
    def test_running_table(self):
        s = running_system()
        assert s.terms(10) == [1, 2, 3, 6, 10, 19, 29, 48, 96, 151]
        assert s.term(9) == 151

    def test_term_zero(self):
        assert sqrt13_system().term(0) == 1

    def test_recurrence_step(self):
        assert sqrt13_system().term(4) == 16  # 3*5 + 1

    def test_not_increasing_rejected(self):
        s = PositionalSystem([1], [1])   # U_{n+1} = U_n stalls
        with pytest.raises(NotIncreasing):
            s.term(3)

    def test_initial_constraints(self):
        with pytest.raises(ValueError):
            PositionalSystem([2], [2])
        with pytest.raises(NotIncreasing):
            PositionalSystem([0, 1], [1, 1])


class TestValRep:
    def test_val_paper_word(self):
        assert sqrt13_system().val(word("2001")) == 15

    def test_val_empty(self):
        assert sqrt13_system().val(()) == 0

    def test_val_zeckendorf(self):
        assert zeckendorf_system().val(word("10101")) == 12

    def test_rep_slow_convergence_row(self):
        assert n_3n_system().rep(15309) == word("3123333")

    def test_rep_zero(self):
        assert sqrt13_system().rep(0) == ()

    def test_rep_small(self):
        assert sqrt13_system().rep(6) == word("101")

    def test_rep_negative_rejected(self):
        with pytest.raises(OutOfRange):
            sqrt13_system().rep(-1)

    def test_round_trip(self):
        s = sqrt13_system()
        for x in range(200):
            assert s.val(s.rep(x)) == x


class TestIsGreedy:
    def test_candidate_111_rejected(self):
        assert not candidate_maxwords_system().is_greedy(word("111"))

    def test_zero_words(self):
        s = zeckendorf_system()
        assert s.is_greedy(())
        assert s.is_greedy(word("0000"))

    def test_zeckendorf_adjacent_ones(self):
        assert not zeckendorf_system().is_greedy(word("110"))

    def test_padded_valid_word(self):
        assert sqrt13_system().is_greedy(word("00101"))

    def test_agrees_with_oracle(self):
        s = sqrt13_system()
        lang = oracle_language(s, 6)
        digits = s.alphabet_max() + 1
        words = [()]
        for _ in range(6):
            words = [w + (d,) for w in words for d in range(digits)]
            for w in words:
                assert s.is_greedy(w) == (w in lang)


class TestMaxWord:
    def test_mixed_p2_length_seven(self):
        assert period_two_irrational_system().max_word(7) == word("1110000")

    def test_empty(self):
        assert running_system().max_word(0) == ()

    def test_running_length_five(self):
        s = running_system()
        assert s.max_word(5) == s.rep(18) == word("11010")

    def test_is_lexicographic_maximum(self):
        s = sqrt13_system()
        lang = oracle_language(s, 7)
        for n in range(8):
            best = max(w for w in lang if len(w) == n)
            assert s.max_word(n) == best


class TestRepIc:
    def test_padded_when_base_entry_one(self):
        s = base_one_two_system()
        for n in range(3, 7):
            assert s.rep_ic(2, 0, 2, n) == word("011" + "0" * (2 * n - 3))

    def test_no_padding_for_c_one(self):
        s = base_one_two_system()
        for n in range(1, 6):
            assert s.rep_ic(2, 0, 1, n) == s.rep(s.term(2 * n) - 1)

    def test_odd_shift(self):
        assert base_one_two_system().rep_ic(2, 1, 2, 3) == word("10110")

    def test_out_of_range(self):
        s = base_one_two_system()
        with pytest.raises(OutOfRange):
            s.rep_ic(2, 0, s.term(4) + 1, 2)


class TestOracle:
    def test_slow_growth_language_shape(self):
        s = slow_growth_system()
        lang = oracle_language(s, 10)
        expected = set()
        base_words = {()}
        base_words |= {(1,) + (0,) * k for k in range(10)}
        base_words |= {(1,) + (0,) * (2 * j) + (1,) for j in range(5)}
        for w in base_words:
            for pad in range(10 - len(w) + 1):
                expected.add((0,) * pad + w)
        assert lang == {w for w in expected if len(w) <= 10}

    def test_trivial(self):
        assert oracle_language(sqrt13_system(), 0) == {()}

    def test_zeckendorf_no_adjacent_ones(self):
        lang = oracle_language(zeckendorf_system(), 4)
        expected = set()
        for n in range(5):
            for bits in range(2**n):
                w = tuple((bits >> (n - 1 - k)) & 1 for k in range(n))
                if not any(a == b == 1 for a, b in zip(w, w[1:])):
                    expected.add(w)
        assert lang == expected


class TestSystemFromMaxWords:
    def test_candidate_language(self):
        doc = SlenderDecomposition(
            d=2, start_length=4,
            finite_part=[(), word("1"), word("11"), word("101")],
            pieces=[(word("21"), word("11"), word("00")),
                    (word("2101"), word("01"), word("1"))])
        s = system_from_max_words(doc)
        assert s.initial == (1, 2, 4, 6, 17, 44, 116, 286, 760)
        ts = s.terms(40)
        assert all(ts[n + 9] == 8 * ts[n + 7] - 10 * ts[n + 5] + 2 * ts[n + 3]
                   for n in range(31))

    def test_binary(self):
        doc = SlenderDecomposition(d=1, start_length=1, finite_part=[()],
                                   pieces=[(word("1"), word("1"), ())])
        s = system_from_max_words(doc)
        assert [s.term(n) for n in range(8)] == [2**n for n in range(8)]

    def test_sqrt13_from_its_max_words(self):
        doc = SlenderDecomposition(
            d=2, start_length=1, finite_part=[()],
            pieces=[(word("20"), word("01"), ()), (word("1"), word("01"), ())])
        s = system_from_max_words(doc)
        assert s.initial == (1, 2, 5, 7)
        assert s.recurrence == (0, 3, 0, 1)

    def test_leading_zero_rejected(self):
        doc = SlenderDecomposition(
            d=1, start_length=1, finite_part=[()],
            pieces=[(word("01"), word("1"), ())])
        with pytest.raises(InvalidCandidate):
            system_from_max_words(doc)

    def test_suffix_condition_rejected(self):
        # length-2 word "12" has suffix "2" beating the length-1 word "1"
        doc = SlenderDecomposition(
            d=1, start_length=1, finite_part=[(), word("1"), word("12")],
            pieces=[(word("12"), word("1"), word("2"))])
        with pytest.raises(InvalidCandidate) as err:
            system_from_max_words(doc)
        assert err.value.lengths is not None

    def test_reproduces_max_words(self):
        doc = SlenderDecomposition(
            d=2, start_length=4,
            finite_part=[(), word("1"), word("11"), word("101")],
            pieces=[(word("21"), word("11"), word("00")),
                    (word("2101"), word("01"), word("1"))])
        s = system_from_max_words(doc)
        for n in range(16):
            assert s.max_word(n) == doc.word(n)


class TestAlphabet:
    def test_integer_base(self):
        assert integer_base_system(10).alphabet_max() == 9

    def test_n3n_includes_digit_four(self):
        assert n_3n_system().alphabet_max() >= 4
