from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coevents.algebra import Coevent, evaluation_map, event, one, upper_star
from coevents.expr import parse_coevent
from coevents.integral import (
    closed_form,
    double_integral,
    inner_integrals,
    pair_function,
    point_function,
    q_integral,
    q_integral_lebesgue,
    q_integral_nonneg,
    q_integral_over,
    split_sign,
)

from conftest import coevent_value_fn, mask_points, naive_double, naive_integral

F = Fraction

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)
nonneg = st.fractions(min_value=0, max_value=6, max_denominator=4)


def coevents(n):
    return st.integers(0, (1 << ((1 << n) - 1)) - 1).map(lambda k: Coevent.from_table(n, k << 1))


class TestPointFunctions:
    def test_length_checked(self):
        with pytest.raises(ValueError):
            point_function([1, 2], n=3)

    def test_pair_function_symmetric(self):
        with pytest.raises(ValueError):
            pair_function([[1, 2], [3, 1]])
        with pytest.raises(ValueError):
            pair_function([[1, 2]])

    def test_nonneg_rejects_negative(self):
        with pytest.raises(ValueError):
            q_integral_nonneg([1, -1], one(2))

    def test_split_sign(self):
        pos, neg = split_sign([2, -3, 0])
        assert pos == (2, 0, 0) and neg == (0, 3, 0)


class TestIntegral:
    @given(st.lists(rationals, min_size=3, max_size=3), st.integers(0, 2))
    def test_evaluation_map_picks_value(self, f, i):
        assert q_integral(f, evaluation_map(3, i)) == f[i]

    @given(st.lists(rationals, min_size=3, max_size=3))
    def test_zero_coevent(self, f):
        assert q_integral(f, Coevent.zero(3)) == 0

    @given(coevents(3), st.integers(1, 7))
    def test_negative_indicator(self, phi, a):
        f = [-1 if a >> i & 1 else 0 for i in range(3)]
        assert q_integral(f, phi) == -phi(a)
        assert q_integral_lebesgue(f, phi) == -phi(a)

    @given(coevents(3), st.integers(1, 7))
    def test_indicator(self, phi, a):
        f = [1 if a >> i & 1 else 0 for i in range(3)]
        assert q_integral(f, phi) == phi(a)

    @settings(max_examples=300)
    @given(coevents(4), st.lists(rationals, min_size=4, max_size=4))
    def test_signed_agrees_with_layer_cake(self, phi, f):
        assert q_integral(f, phi) == q_integral_lebesgue(f, phi)

    @settings(max_examples=300)
    @given(coevents(4), st.lists(nonneg, min_size=4, max_size=4), st.integers(0, 15))
    def test_restricted_matches_naive(self, phi, f, a):
        assert q_integral_over(a, f, phi) == naive_integral(f, coevent_value_fn(phi), mask_points(a))

    @given(coevents(3), st.lists(nonneg, min_size=3, max_size=3), st.fractions(0, 5, max_denominator=3))
    def test_shift_identity(self, phi, f, alpha):
        shifted = [alpha + v for v in f]
        assert q_integral(shifted, phi) == alpha * phi(7) + q_integral(f, phi)

    @given(coevents(3), st.lists(nonneg, min_size=3, max_size=3), st.fractions(0, 5, max_denominator=3))
    def test_positive_homogeneous(self, phi, f, c):
        assert q_integral([c * v for v in f], phi) == c * q_integral(f, phi)

    def test_singleton_domain(self):
        phi = parse_coevent("w1 + w1*w2", 2)
        assert q_integral_over(event(1), [3, 5], phi) == 3 * phi(event(1))
        assert q_integral_over(event(2), [3, 5], phi) == 0

    @given(coevents(3), st.integers(0, 7))
    def test_constant_one(self, phi, a):
        assert q_integral_over(a, [1, 1, 1], phi) == phi(a)

    def test_lower_star_worked_value(self):
        from coevents.algebra import lower_star

        assert q_integral([1, 2, 3, 4, 5], lower_star(5, event(3, 4, 5))) == 3

    def test_max_over_event(self):
        f = [F(1), F(4), F(2)]
        assert q_integral_over(event(1, 3), f, one(3)) == 2
        assert q_integral_over(7, f, upper_star(3, event(1, 3))) == 2


class TestClosedForms:
    def test_two_point_chain(self):
        assert closed_form("additive-chain", [2, 5], points=[0, 1]) == 3

    def test_lower_star_top_outside(self):
        assert closed_form("lower-star", [1, 5, 5], event=event(1, 2)) == 0

    def test_atom_not_tail(self):
        assert closed_form("atom", [1, 2, 3], event=event(1, 3)) == 0
        assert closed_form("atom", [1, 2, 3], event=event(2, 3)) == 1

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            closed_form("monomial", [-1, 2], points=[0, 1])

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            closed_form("nope", [1])


class TestDoubleIntegral:
    def two_atom(self):
        M = 4
        return [[1, 3], [3, 2]], M

    def test_singleton(self):
        phi = parse_coevent("w1 + w2", 2)
        F2 = [[2, 7], [7, 3]]
        assert double_integral(event(2), F2, phi) == 3

    def test_two_point_construction(self):
        F2, _ = self.two_atom()
        phi = parse_coevent("w1 + w2 + w1*w2", 2)
        assert double_integral(3, F2, phi) == 3
        assert double_integral(event(1), F2, phi) == 1

    def test_three_point_construction_with_new_point(self):
        F2 = [[1, 3, 4], [3, 2, 4], [4, 4, 4]]
        phi = parse_coevent("w1 + w2 + w1*w2", 3)
        assert double_integral(event(1, 3), F2, phi) == 1
        assert double_integral(event(1), F2, phi) == 1
        assert double_integral(7, F2, phi) == 3

    @settings(max_examples=200)
    @given(coevents(3), st.lists(st.fractions(1, 6, max_denominator=3), min_size=6, max_size=6), st.integers(0, 7))
    def test_matches_naive(self, phi, vals, a):
        it = iter(vals)
        F2 = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(i, 3):
                F2[i][j] = F2[j][i] = next(it)
        assert double_integral(a, F2, phi) == naive_double(F2, coevent_value_fn(phi), mask_points(a))
        g = inner_integrals(a, F2, phi)
        for j in range(3):
            column = [F2[i][j] for i in range(3)]
            assert g[j] == naive_integral(column, coevent_value_fn(phi), mask_points(a))
