"""Arc selection on plane sets, division certificates, anisotropic forms."""

import random
from fractions import Fraction as F

import pytest

from henselk import (
    AnisotropicForm,
    BivarPoly,
    LaurentSeries,
    NoArcFound,
    PolyK,
    VCompare,
    VZero,
    anisotropic_form,
    loja_exponent,
    parity_check,
    plane_and,
    select_arc,
)
from henselk.errors import HypothesisFails, InvalidInput

from oracles import from_polyk, poly_mul, poly_pow, poly_sub

L = LaurentSeries
X = BivarPoly({(1, 0): 1})
Y = BivarPoly({(0, 1): 1})
ONE = BivarPoly({(0, 0): 1})
XSQ = BivarPoly({(2, 0): 1})
CUSP = BivarPoly({(0, 2): 1, (3, 0): -1})
NODE = BivarPoly({(0, 2): 1, (2, 0): -1, (3, 0): -1})


def ypoly(*coeffs) -> PolyK:
    return PolyK([c if isinstance(c, L) else L.constant(F(c)) for c in coeffs])


T = L({1: F(1)})


# ---------------------------------------------------------------------------
# select_arc
# ---------------------------------------------------------------------------


def test_arc_on_cusp_is_the_exact_parametrization():
    a = select_arc(VZero(CUSP))
    assert dict(a.components[0].terms) == {2: F(1)}
    assert dict(a.components[1].terms) == {3: F(1)}
    assert a.domain == "-v(z) <= 0, ac(z) = 1"
    assert a.order == 16
    res = CUSP.evaluate(*a.components)
    assert res.is_exact_zero


def test_arc_inside_valuation_wedge():
    # v(y) >= 2 v(x) and v(x) >= 1
    a = select_arc(plane_and(VCompare(XSQ, "le", Y), VCompare(ONE, "le", X, -1)))
    assert dict(a.components[0].terms) == {1: F(1)}
    assert dict(a.components[1].terms) == {2: F(1)}
    assert a.domain == "-v(z) + 1 <= 0, ac(z) = 1"


def test_arc_along_node_branch():
    a = select_arc(VZero(NODE))
    phi1, phi2 = a.components
    assert dict(phi1.terms) == {1: F(1)}
    want = {1: F(1), 2: F(1, 2), 3: F(-1, 8), 4: F(1, 16), 5: F(-5, 128)}
    assert {e: phi2.coefficient(e) for e in range(1, 6)} == want
    lb = NODE.evaluate(phi1, phi2).order_lower_bound()
    assert lb is None or lb >= a.order


def test_arc_on_diagonal():
    a = select_arc(VCompare(Y, "eq", X))
    assert dict(a.components[0].terms) == {1: F(1)}
    assert dict(a.components[1].terms) == {1: F(1)}


def test_arc_atoms_hold_at_sampled_parameters():
    """Substituting z = t^k must satisfy the defining comparison."""
    a = select_arc(plane_and(VCompare(XSQ, "le", Y), VCompare(ONE, "le", X, -1)))
    for k in (1, 2, 5):
        x = a.components[0].stretch(k)
        y = a.components[1].stretch(k)
        vx, vy = x.valuation(), y.valuation()
        assert vx.kind == "finite" and vy.kind == "finite"
        assert vy.value >= 2 * vx.value and vx.value >= 1


def test_arc_search_reports_its_bounds():
    # v(x) = 0 keeps every arc away from the origin
    r = select_arc(VCompare(ONE, "eq", X))
    assert isinstance(r, NoArcFound)
    assert r.exponent_bound == 12 and r.order == 16
    assert "exhausted" in r.reason


# ---------------------------------------------------------------------------
# loja_exponent
# ---------------------------------------------------------------------------


def test_division_pure_powers():
    c = loja_exponent(ypoly(0, 1), ypoly(0, 0, 0, 1))
    assert (c.s, c.gamma0, c.slack) == (3, -1, F(0))
    assert str(c.h) == "1"
    assert [(str(r.root), r.mult_f, r.mult_g) for r in c.common_roots] == [
        ("0", 1, 3)]
    assert c.minimality is not None and "s = 2" in c.minimality


def test_division_with_polynomial_quotient():
    c = loja_exponent(ypoly(0, 0, 1), ypoly(0, 0, 0, 1))
    assert c.s == 2 and str(c.h) == "y"
    assert "ord f^s = 4 >= ord g = 3" in c.h_spec


def test_division_split_roots():
    f = PolyK([L.zero(), L({1: F(-1)}), L.one()])     # y (y - t)
    c = loja_exponent(f, ypoly(0, 0, 0, 1))
    assert c.s == 3
    assert str(c.h) == "y^3 + (-3*t)*y^2 + 3*t^2*y - t^3"
    assert [(str(r.root), r.mult_f, r.mult_g) for r in c.common_roots] == [
        ("0", 1, 3)]


def test_division_with_series_slack():
    c = loja_exponent(ypoly(0, 1), PolyK([L.zero(), T]))
    assert (c.s, c.slack) == (1, F(1))
    assert str(c.h) == "t^-1"
    assert c.minimality is None


def test_division_requires_zero_inclusion():
    with pytest.raises(HypothesisFails):
        loja_exponent(PolyK([L({1: F(-1)}), L.one()]), ypoly(0, 1))


DIVISION_PAIRS = [
    (ypoly(0, 1), ypoly(0, 0, 0, 1)),
    (ypoly(0, 0, 1), ypoly(0, 0, 0, 1)),
    (PolyK([L.zero(), L({1: F(-1)}), L.one()]), ypoly(0, 0, 0, 1)),
    (ypoly(0, 1), PolyK([L.zero(), T])),
]


@pytest.mark.parametrize("f,g", DIVISION_PAIRS)
def test_certificate_identity(f, g):
    """f^s = h * g coefficient-exactly, checked with the oracle arithmetic."""
    c = loja_exponent(f, g)
    assert c.h is not None
    lhs = poly_pow(from_polyk(f), c.s)
    rhs = poly_mul(from_polyk(c.h), from_polyk(g))
    assert all(not d for d in poly_sub(lhs, rhs))


@pytest.mark.parametrize("f,g", DIVISION_PAIRS[:3])
def test_minimality_fails_one_step_down(f, g):
    """v(f^(s-1)) < v(g) along y = t^m, so s - 1 admits no bounded h."""
    c = loja_exponent(f, g)
    assert c.s > 1
    for m in (4, 7):
        y = L({m: F(1)})
        fy = f(y)
        gy = g(y)
        assert fy.valuation().kind == "finite"
        assert (c.s - 1) * fy.valuation().value < gy.valuation().value


def test_threshold_bounds_the_growth():
    """Past gamma0, v(g(y)) <= s*v(f(y)) + slack on sampled points."""
    for f, g in DIVISION_PAIRS:
        c = loja_exponent(f, g)
        for m in (2, 5, 9):
            y = L({m: F(1)})
            vf, vg = f(y).valuation(), g(y).valuation()
            if vf.kind == "finite" and vf.value > c.gamma0:
                assert vg.value <= c.s * vf.value + c.slack


# ---------------------------------------------------------------------------
# anisotropic_form / parity_check
# ---------------------------------------------------------------------------


def test_form_level_one_is_the_coordinate():
    gf = anisotropic_form(1)
    assert dict(gf.poly) == {(1,): L.one()}
    assert gf.degrees == (1,) and parity_check(gf)


def test_form_level_two():
    gf = anisotropic_form(2)
    assert dict(gf.poly) == {(2, 0): L.one(), (0, 2): L({1: F(-1)})}
    assert gf.degrees == (1, 2)
    assert parity_check(gf)


def test_form_level_three():
    gf = anisotropic_form(3)
    assert dict(gf.poly) == {
        (4, 0, 0): L.one(),
        (2, 2, 0): L({1: F(-2)}),
        (0, 4, 0): L({2: F(1)}),
        (0, 0, 4): L({1: F(-1)}),
    }
    assert gf.degrees == (1, 2, 4)
    assert len(gf.levels) == 3
    assert parity_check(gf)


def test_form_vanishes_only_at_origin_on_samples():
    rng = random.Random(20260815)
    for r in (1, 2, 3):
        gf = anisotropic_form(r)
        assert gf.evaluate([L.zero()] * r).is_exact_zero
        for _ in range(10):
            vals = []
            for _ in range(r):
                terms = {e: F(rng.randint(-3, 3)) for e in range(-2, 3)}
                vals.append(L({e: c for e, c in terms.items() if c}))
            if all(v.is_exact_zero for v in vals):
                continue
            assert not gf.evaluate(vals).is_exact_zero


def test_parity_check_detects_tampering():
    gf = anisotropic_form(2)
    bad = AnisotropicForm(2, {(2, 0): L.one(), (0, 2): L.one()},
                          gf.degrees, gf.levels)
    assert not parity_check(bad)


def test_form_input_validation():
    with pytest.raises(InvalidInput):
        anisotropic_form(0)
    with pytest.raises(InvalidInput):
        anisotropic_form(2).evaluate([L.one()])
