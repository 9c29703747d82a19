"""Series arithmetic: exactness, valuations, precision bookkeeping."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from henselk import (DEFAULT_PRECISION, DivisionByZero, IndeterminatePrecision,
                     InverseOfZero, LaurentSeries, PolyK, Valuation, divide)

import oracles


def L(pairs, precision=None):
    return LaurentSeries(pairs, precision)


def test_zero_and_one():
    z = LaurentSeries.zero()
    assert z.is_exact_zero and z.is_exact
    assert str(z.valuation()) == "inf"
    assert z.order_lower_bound() is None
    one = LaurentSeries.one()
    assert one.coefficient(0) == 1 and one.valuation().value == 0


def test_valuation_kinds():
    assert str(L({2: 1}).valuation()) == "2"
    assert str(L({}, precision=5).valuation()) == ">=5"
    assert str(L({-3: Fraction(1, 2)}).valuation()) == "-3"


def test_addition_cancellation_is_exact():
    a = L({0: 1, 1: 2})
    b = L({1: -2, 3: 5})
    c = a + b
    assert c == L({0: 1, 3: 5})
    assert c.is_exact


def test_truncated_addition_precision():
    a = L({0: 1}, precision=4)
    b = L({6: 1})
    c = a + b
    assert c.precision == 4
    assert c.coefficient(0) == 1


def test_mul_valuation_adds():
    a = L({-1: 2, 1: 3})
    b = L({2: Fraction(1, 2)})
    assert (a * b).valuation().value == 1


def test_divide_exact_terminating_stays_exact():
    q = divide(L({3: 6}), L({1: 3}), 8)
    assert q == L({2: 2})
    assert q.is_exact


def test_divide_nonterminating_truncates_at_relative_width():
    q = divide(LaurentSeries.one(), L({0: 1, 1: 1}), 6)
    assert not q.is_exact
    assert q.precision == 6
    for k in range(6):
        assert q.coefficient(k) == (-1) ** k


def test_divide_by_zero_raises():
    with pytest.raises(DivisionByZero):
        divide(LaurentSeries.one(), LaurentSeries.zero(), 4)


def test_inverse_of_indeterminate_order():
    hidden = L({}, precision=3)
    with pytest.raises((InverseOfZero, IndeterminatePrecision,
                        DivisionByZero)):
        divide(LaurentSeries.one(), hidden, 4)


def test_stretch_scales_exponents():
    a = L({1: 1, 3: 2})
    assert a.stretch(2) == L({2: 1, 6: 2})


def test_pow():
    a = L({0: 1, 1: 1})
    assert a ** 3 == L({0: 1, 1: 3, 2: 3, 3: 1})


def test_default_precision_value():
    assert DEFAULT_PRECISION == 32


def test_polyk_horner_and_derivative():
    # y^2 - (1+t)
    F = PolyK([L({0: -1, 1: -1}), LaurentSeries.zero(), LaurentSeries.one()])
    assert F.degree == 2
    val = F(L({0: 1}))
    assert val == L({1: -1})
    assert F.derivative() == PolyK([LaurentSeries.zero(), L({0: 2})])


def test_polyk_str_roundtrip_shape():
    F = PolyK([L({1: -1}), LaurentSeries.one()])
    assert str(F) == "y - t"


# -- randomized properties against the dict-series oracle -------------------


coeffs_st = st.integers(min_value=-9, max_value=9)
series_st = st.dictionaries(st.integers(min_value=-4, max_value=8),
                            coeffs_st, max_size=5)


def as_pair(d):
    clean = {e: Fraction(c) for e, c in d.items() if c}
    return LaurentSeries(clean), clean


@settings(max_examples=200, deadline=None)
@given(series_st, series_st)
def test_ultrametric_and_product_valuation(da, db):
    a, ra = as_pair(da)
    b, rb = as_pair(db)
    va = oracles.s_val(ra)
    vb = oracles.s_val(rb)
    s = a + b
    vs = s.valuation()
    if va is not None and vb is not None:
        assert vs.kind == "infinite" or vs.value >= min(va, vb)
    p = a * b
    if va is None or vb is None:
        assert p.is_exact_zero
    else:
        assert p.valuation().value == va + vb
        assert p.angular_component() == ra[va] * rb[vb]


@settings(max_examples=200, deadline=None)
@given(series_st, series_st)
def test_arithmetic_matches_oracle(da, db):
    a, ra = as_pair(da)
    b, rb = as_pair(db)
    assert dict((a + b).terms) == oracles.s_add(ra, rb)
    assert dict((a - b).terms) == oracles.s_sub(ra, rb)
    assert dict((a * b).terms) == oracles.s_mul(ra, rb)


@settings(max_examples=200, deadline=None)
@given(series_st, series_st, st.integers(min_value=1, max_value=10))
def test_precision_soundness_of_truncated_product(da, db, p):
    a, ra = as_pair(da)
    b, rb = as_pair(db)
    ta = a.truncate(p)
    prod = ta * b
    exact = oracles.s_mul(ra, rb)
    if prod.precision is not None:
        for e in range(-20, prod.precision):
            assert prod.coefficient(e) == exact.get(e, Fraction(0))
