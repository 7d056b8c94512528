"""Series arithmetic: worked values, precision rules and field axioms."""

from __future__ import annotations

import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from novlink.errors import InexactDivisionError, NotInvertibleError, PrecisionError
from novlink.novikov import (
    INFINITY,
    NovikovSeries,
    arithmetic,
    as_fraction,
    divide,
    val,
)

from strategies import nonzero_series, series


def S(*pairs, prec=INFINITY):
    return NovikovSeries([(F(c), F(e)) for c, e in pairs], prec)


class TestValuation:
    def test_min_of_exponents(self):
        assert val(S((3, F(1, 2)), (-1, 2))) == F(1, 2)

    def test_exact_zero_is_infinity(self):
        assert val(NovikovSeries.zero()) is INFINITY

    def test_monomial_product_adds_valuations(self):
        x = NovikovSeries.monomial(1, F(1, 3))
        y = NovikovSeries.monomial(1, F(2, 3))
        assert val(x * y) == 1

    def test_zero_mod_precision_reports_infinity_with_bound(self):
        z = NovikovSeries.zero(5)
        assert val(z) is INFINITY
        assert z.val_lower_bound() == 5


class TestArithmetic:
    def test_add_cancels_constant(self):
        assert S((1, 0), (1, 1)) + S((-1, 0)) == S((1, 1))

    def test_mul_at_precision_five(self):
        a = NovikovSeries([(1, 0), (1, 1)], 5)
        b = NovikovSeries([(1, 0), (-1, 1)], 5)
        assert a * b == NovikovSeries([(1, 0), (-1, 2)], 5)

    def test_mul_precision_shifts_by_valuation(self):
        a = NovikovSeries([(1, 0)], 2)
        t = NovikovSeries.monomial(1, 1)
        prod = a * t
        assert prod.terms == ((F(1), F(1)),)
        assert prod.precision == 3

    def test_terms_beyond_precision_dropped(self):
        s = NovikovSeries([(1, 0), (1, 7)], 5)
        assert s == NovikovSeries([(1, 0)], 5)

    def test_scalar_coercion(self):
        assert 1 + S((1, 1)) == S((1, 0), (1, 1))
        assert S((1, 1)) * 3 == S((3, 1))

    def test_negative_exponents_allowed(self):
        s = S((1, F(-1, 2)), (2, 1))
        assert val(s) == F(-1, 2)

    def test_named_dispatch(self):
        x, y = S((1, 0), (1, 1)), S((1, 1))
        assert arithmetic(x, y, "add") == x + y
        assert arithmetic(x, y, "sub") == x - y
        assert arithmetic(x, y, "mul") == x * y
        with pytest.raises(ValueError):
            arithmetic(x, y, "div")


class TestInvert:
    def test_geometric_series(self):
        inv = S((1, 0), (-1, 1)).invert(3)
        assert inv == NovikovSeries([(1, 0), (1, 1), (1, 2)], 3)

    def test_exact_monomial(self):
        assert NovikovSeries.monomial(1, 1).invert() == \
            NovikovSeries.monomial(1, -1)

    def test_zero_mod_precision_rejected(self):
        with pytest.raises(NotInvertibleError, match="not invertible"):
            NovikovSeries.zero(5).invert()

    def test_exact_multiterm_needs_target(self):
        with pytest.raises(PrecisionError):
            S((1, 0), (-1, 1)).invert()

    def test_valuation_negated(self):
        x = S((2, F(3, 2)), (1, 2))
        assert val(x.invert(4)) == F(-3, 2)

    def test_finite_precision_limits_inverse(self):
        x = NovikovSeries([(1, 1)], 3)  # T + O(T^3): relative precision 2
        inv = x.invert(10)
        assert inv.precision == 1  # -v + rel = -1 + 2


class TestDivide:
    def test_exact_division(self):
        num = S((1, 0), (-1, 2))  # 1 - T^2
        den = S((1, 0), (-1, 1))  # 1 - T
        assert divide(num, den) == S((1, 0), (1, 1))

    def test_inexact_division_raises(self):
        with pytest.raises(InexactDivisionError):
            divide(S((1, 0)), S((1, 0), (-1, 1)))

    def test_division_by_zero_mod_precision(self):
        with pytest.raises(NotInvertibleError):
            divide(S((1, 0)), NovikovSeries.zero(4))


class TestPrecisionManagement:
    def test_truncate_only_lowers(self):
        s = NovikovSeries([(1, 0), (1, 3)], 5)
        assert s.truncate(2) == NovikovSeries([(1, 0)], 2)
        assert s.truncate(9) == s

    def test_assume_precision_raises_bound(self):
        s = NovikovSeries([(1, 0), (1, 3)], 5)
        widened = s.assume_precision(10)
        assert widened.precision == 10
        assert widened.terms == s.terms


class TestSerialization:
    def test_round_trip(self):
        s = NovikovSeries([(F(3, 2), F(-1, 2)), (-1, 2)], F(7, 2))
        assert NovikovSeries.from_obj(s.to_obj()) == s

    def test_exact_strings_not_floats(self):
        obj = S((F(1, 3), F(1, 2))).to_obj()
        blob = json.dumps(obj)
        assert '"1/3"' in blob and '"1/2"' in blob
        assert obj["prec"] == "inf"

    def test_accepts_bare_term_list(self):
        s = NovikovSeries.from_obj([{"c": "2", "e": "1/4"}])
        assert s == S((2, F(1, 4)))

    def test_fraction_parsing(self):
        assert as_fraction("-3/7") == F(-3, 7)
        assert as_fraction(4) == 4


@given(x=nonzero_series(), y=nonzero_series())
def test_val_additive_on_products(x, y):
    assert val(x * y) == val(x) + val(y)


@given(x=series(), y=series())
def test_ultrametric_inequality(x, y):
    s = x + y
    lo = min(x.val_lower_bound(), y.val_lower_bound())
    assert s.val_lower_bound() >= lo
    if (not x.is_zero() and not y.is_zero()
            and val(x) != val(y) and min(val(x), val(y)) < s.precision):
        assert val(s) == min(val(x), val(y))


@given(x=series(), y=series())
def test_commutativity(x, y):
    assert x + y == y + x
    assert x * y == y * x


@given(x=series(), y=series(), z=series())
@settings(max_examples=60)
def test_associativity_and_distributivity_mod_precision(x, y, z):
    left = (x * y) * z
    right = x * (y * z)
    prec = min(left.precision, right.precision)
    assert left.eq_mod(right, prec)
    lhs = x * (y + z)
    rhs = x * y + x * z
    prec2 = min(lhs.precision, rhs.precision)
    assert lhs.eq_mod(rhs, prec2)


@given(x=nonzero_series())
@settings(max_examples=60)
def test_invert_is_two_sided_inverse(x):
    target = -x.valuation() + 3
    inv = x.invert(target)
    goal = min(target, (x * inv).precision)
    assert (x * inv).eq_mod(1, goal)
    assert (inv * x).eq_mod(1, goal)
