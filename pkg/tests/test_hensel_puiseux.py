"""Root lifting, factor splitting, polygon shapes, and branch expansion.

Frozen coefficient values come from the Newton-iteration oracle in
oracles.py; each frozen test also cross-checks against that oracle so a
regression in either side shows up as a disagreement.
"""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from henselk import (
    AT_INFINITY,
    BivarPoly,
    LaurentSeries,
    PolyK,
    branch_limits,
    hensel_decompose,
    hensel_lift,
    newton_polygon,
    puiseux_expand,
)
from henselk.errors import (
    IndeterminatePrecision,
    InvalidInput,
    LeadingCoefficientVanishes,
    NotARoot,
    NotASimpleRoot,
)

from oracles import from_polyk, newton_root, s_trunc


L = LaurentSeries


def _poly(*cols) -> PolyK:
    return PolyK([L({e: F(c) for e, c in col.items()}) if col else L.zero()
                  for col in cols])


# ---------------------------------------------------------------------------
# hensel_lift
# ---------------------------------------------------------------------------


def test_lift_square_root():
    F2 = _poly({0: -1, 1: -1}, {}, {0: 1})
    y = hensel_lift(F2, 1, 4)
    assert y.precision == 4
    assert {e: y.coefficient(e) for e in range(4)} == {
        0: F(1), 1: F(1, 2), 2: F(-1, 8), 3: F(1, 16)}

    y8 = hensel_lift(F2, 1, 8)
    assert {e: y8.coefficient(e) for e in range(8)} == {
        0: F(1), 1: F(1, 2), 2: F(-1, 8), 3: F(1, 16),
        4: F(-5, 128), 5: F(7, 256), 6: F(-21, 1024), 7: F(33, 2048)}
    oracle = newton_root(from_polyk(F2), F(1), 8)
    assert s_trunc(oracle, 8) == dict(y8.terms)


def test_lift_cube_root():
    F3 = _poly({0: -1, 1: -1}, {}, {}, {0: 1})
    y = hensel_lift(F3, 1, 3)
    assert {e: y.coefficient(e) for e in range(3)} == {
        0: F(1), 1: F(1, 3), 2: F(-1, 9)}
    y6 = hensel_lift(F3, 1, 6)
    assert {e: y6.coefficient(e) for e in range(6)} == {
        0: F(1), 1: F(1, 3), 2: F(-1, 9), 3: F(5, 81),
        4: F(-10, 243), 5: F(22, 729)}


def test_lift_scaled_radicand():
    y = hensel_lift(_poly({0: -1, 1: -2}, {}, {0: 1}), 1, 6)
    assert {e: y.coefficient(e) for e in range(6)} == {
        0: F(1), 1: F(1), 2: F(-1, 2), 3: F(1, 2), 4: F(-5, 8), 5: F(7, 8)}


def test_lift_catalan_roots():
    """y^2 - y - t has one root near 0 and one near 1; the coefficients of
    the first are signed Catalan numbers and the two roots sum to 1."""
    Fc = _poly({1: -1}, {0: -1}, {0: 1})
    y0 = hensel_lift(Fc, 0, 7)
    assert {e: y0.coefficient(e) for e in range(7)} == {
        0: F(0), 1: F(-1), 2: F(1), 3: F(-2), 4: F(5), 5: F(-14), 6: F(42)}
    y1 = hensel_lift(Fc, 1, 7)
    assert {e: y1.coefficient(e) for e in range(7)} == {
        0: F(1), 1: F(1), 2: F(-1), 3: F(2), 4: F(-5), 5: F(14), 6: F(-42)}
    s = y0 + y1
    assert all(s.coefficient(e) == (1 if e == 0 else 0) for e in range(7))


def test_lift_exact_root_terminates():
    y = hensel_lift(_poly({0: -1}, {}, {0: 1}), 1, 32)
    assert y.is_exact and dict(y.terms) == {0: F(1)}
    # one Newton step: answer is t on the nose, reported modulo t^32
    y2 = hensel_lift(_poly({1: -1}, {0: 1}), 0, 32)
    assert y2.precision == 32 and dict(y2.terms) == {1: F(1)}


def test_lift_rejects_bad_start():
    F2 = _poly({0: -1, 1: -1}, {}, {0: 1})
    with pytest.raises(NotARoot):
        hensel_lift(F2, 2, 4)
    with pytest.raises(NotASimpleRoot):
        hensel_lift(_poly({2: -1}, {}, {0: 1}), 0, 4)
    with pytest.raises(ValueError):
        hensel_lift(F2, 1, 0)


@settings(max_examples=60, deadline=None)
@given(a=st.integers(-6, 6), b=st.integers(-6, 6),
       c=st.integers(-3, 3), d=st.integers(-3, 3))
def test_lift_residual_meets_target(a, b, c, d):
    # monic quadratic with distinct residue roots, t-perturbed
    if a == b:
        b = a + 1
    P = _poly({0: a * b, 1: c}, {0: -(a + b), 1: d}, {0: 1})
    y = hensel_lift(P, a, 16)
    lb = P(y).order_lower_bound()
    assert lb is None or lb >= 16
    assert y.coefficient(0) == a


# ---------------------------------------------------------------------------
# hensel_decompose
# ---------------------------------------------------------------------------


def test_decompose_unit_split():
    P = _poly({0: -1, 1: -1}, {}, {0: 1})
    fz = hensel_decompose(P, 12)
    assert fz.unit.is_exact and dict(fz.unit.terms) == {0: F(1)}
    assert [f.residue for f in fz.factors] == [[F(-1), F(1)], [F(1), F(1)]]
    assert [f.center for f in fz.factors] == [F(1), F(-1)]
    prod = PolyK([fz.unit])
    for f in fz.factors:
        prod = prod * f.poly
    diff = P - prod
    for c in diff.coefficients:
        lb = c.order_lower_bound()
        assert lb is None or lb >= 12


def test_decompose_constant_coefficients_split_exactly():
    P = _poly({0: 2}, {0: -3}, {0: 1})
    fz = hensel_decompose(P, 8)
    polys = sorted(str(f.poly) for f in fz.factors)
    assert polys == ["y - 1", "y - 2"]
    assert all(c.is_exact for f in fz.factors for c in f.poly.coefficients)


def test_decompose_single_weierstrass_block():
    P = _poly({1: -1}, {}, {0: 1})
    fz = hensel_decompose(P, 8)
    assert len(fz.factors) == 1
    f = fz.factors[0]
    assert f.residue == [0, 1] and f.multiplicity == 2 and f.center == 0
    assert str(f.poly) == "y^2 - t"


def test_decompose_normalizes_unit_leading_coefficient():
    # 2(1+t) y^2 - 2(1+t): unit pulled out, factors stay monic
    P = _poly({0: -2, 1: -2}, {}, {0: 2, 1: 2})
    fz = hensel_decompose(P, 8)
    assert dict(fz.unit.terms) == {0: F(2), 1: F(2)}
    assert all(str(f.poly.leading) == "1" for f in fz.factors)


def test_decompose_rejects_vanishing_lead():
    with pytest.raises(LeadingCoefficientVanishes):
        hensel_decompose(_poly({0: 1}, {0: 1}, {1: 1}), 8)


# ---------------------------------------------------------------------------
# newton_polygon
# ---------------------------------------------------------------------------


def test_polygon_cusp():
    np_ = newton_polygon(BivarPoly({(0, 2): 1, (3, 0): -1}))
    assert np_.vertices == ((0, 3), (2, 0))
    (e,) = np_.edges
    assert (e.slope, e.start, e.end, e.length) == (F(-3, 2), (0, 3), (2, 0), 2)


def test_polygon_node():
    np_ = newton_polygon(BivarPoly({(0, 2): 1, (2, 0): -1, (3, 0): -1}))
    assert np_.vertices == ((0, 2), (2, 0))
    assert np_.edges[0].slope == -1


def test_polygon_two_residue_roots():
    np_ = newton_polygon(BivarPoly({(0, 2): 1, (0, 1): -1, (1, 0): -1}))
    assert np_.vertices == ((0, 1), (1, 0), (2, 0))
    assert [e.slope for e in np_.edges] == [F(-1), F(0)]
    assert [e.length for e in np_.edges] == [1, 1]


def test_polygon_accepts_series_coefficients():
    np_ = newton_polygon(_poly({3: -1}, {}, {0: 1}))
    assert np_.vertices == ((0, 3), (2, 0))
    with pytest.raises(IndeterminatePrecision):
        newton_polygon(PolyK([L({}, precision=5), L.one()]))


# ---------------------------------------------------------------------------
# puiseux_expand / branch_limits
# ---------------------------------------------------------------------------


CUSP = BivarPoly({(0, 2): 1, (3, 0): -1})
NODE = BivarPoly({(0, 2): 1, (2, 0): -1, (3, 0): -1})
SHIFTED = BivarPoly({(0, 2): 1, (0, 1): -2, (0, 0): 1, (1, 0): -1})
HYPERBOLA = BivarPoly({(1, 1): 1, (0, 0): -1})
IRRATIONAL = BivarPoly({(0, 2): 1, (0, 0): -2, (1, 0): -1})


def _residual_order(P: BivarPoly, branch) -> int | None:
    x = L({branch.ram_index: F(1)})
    return P.evaluate(x, branch.series).order_lower_bound()


def test_expand_cusp():
    (b,) = puiseux_expand(CUSP, 8)
    assert b.ram_index == 2
    assert b.series.is_exact and dict(b.series.terms) == {3: F(1)}
    assert b.limit == 0 and b.is_K_rational
    assert b.covers == 2 and b.multiplicity == 1
    assert b.slope_line == (3, 2, F(0))


def test_expand_node_two_rational_branches():
    bs = puiseux_expand(NODE, 6)
    assert len(bs) == 2 and all(b.ram_index == 1 for b in bs)
    got = sorted(tuple(b.series.coefficient(e) for e in range(6)) for b in bs)
    root = newton_root([{0: F(-1), 1: F(-1)}, {}, {0: F(1)}], F(1), 8)
    plus = {k + 1: v for k, v in s_trunc(root, 5).items()}
    want = tuple(plus.get(e, F(0)) for e in range(6))
    assert got == sorted((tuple(-c for c in want), want))
    assert all(b.limit == 0 and b.slope_line == (1, 1, F(0)) for b in bs)


def test_expand_shifted_double_cover():
    (b,) = puiseux_expand(SHIFTED, 8)
    assert b.ram_index == 2 and b.covers == 2
    assert dict(b.series.terms) == {0: F(1), 1: F(1)}
    assert b.limit == 1 and b.slope_line == (1, 2, F(0))


def test_expand_hyperbola_at_infinity():
    (b,) = puiseux_expand(HYPERBOLA, 8)
    assert b.limit is AT_INFINITY
    assert dict(b.series.terms) == {-1: F(1)}
    assert b.slope_line == (-1, 1, F(0))


def test_expand_irrational_limit():
    (b,) = puiseux_expand(IRRATIONAL, 8)
    assert b.field is not None and list(b.field.min_poly) == [F(-2), F(0), F(1)]
    assert b.covers == 2 and not b.is_K_rational
    assert b.limit == b.field.gen
    # series = a * sqrt(1 + t/2) with a^2 = 2
    a = b.field.gen
    assert b.series.coefficient(0) == a
    assert b.series.coefficient(1) == a / 4
    assert b.series.coefficient(2) == -a / 32


def test_expand_quartic_cover_count():
    bs = puiseux_expand(BivarPoly({(0, 4): 1, (2, 0): -1}), 8)
    assert sum(b.covers * b.multiplicity for b in bs) == 4
    fields = sorted("Q" if b.field is None else str(list(b.field.min_poly))
                    for b in bs)
    assert fields[0] == "Q" and "1" in fields[1]


def test_expand_records_multiplicity():
    # (y - x)^2 (y + x)
    P = BivarPoly({(0, 3): 1, (1, 2): -1, (2, 1): -1, (3, 0): 1})
    bs = puiseux_expand(P, 8)
    assert sorted((str(b.series), b.multiplicity) for b in bs) == [
        ("-t", 1), ("t", 2)]
    assert sum(b.covers * b.multiplicity for b in bs) == 3


def test_expand_rejects_constant_in_y():
    with pytest.raises(InvalidInput):
        puiseux_expand(BivarPoly({(2, 0): 1}), 8)


@pytest.mark.parametrize("P", [CUSP, NODE, SHIFTED, HYPERBOLA, IRRATIONAL])
def test_expand_residual_invariant(P):
    for b in puiseux_expand(P, 12):
        lb = _residual_order(P, b)
        assert lb is None or lb >= 12


def test_limits_match_fiber_roots():
    """Finite limits are the roots of P(0, y), counted with covers."""
    recs = branch_limits(NODE, 6)
    assert sorted(r.limit for r in recs if r.limit is not AT_INFINITY) == [0, 0]
    recs = branch_limits(IRRATIONAL, 6)
    (r,) = recs
    assert r.covers == 2 and not r.is_K_rational
    recs = branch_limits(HYPERBOLA, 6)
    assert recs[0].limit is AT_INFINITY


def test_slope_line_agrees_with_sampled_valuations():
    """v(y(x) - limit) = (p/q) v(x) + beta at v(x) = 2, 4, 6."""
    for P in (SHIFTED, NODE, CUSP):
        for b in puiseux_expand(P, 16):
            p, q, beta = b.slope_line
            tail = b.series - L.constant(b.limit)
            tv = tail.valuation()
            assert tv.kind == "finite"
            for vx in (2, 4, 6):
                # parameter order vx/q, so the tail has order tv.value*vx/q
                assert F(tv.value, b.ram_index) * vx == F(p, q) * vx + beta
