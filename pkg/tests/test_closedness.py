"""Closure-point construction, membership certificates, and fiber shrinking."""

from fractions import Fraction as F

import pytest

from henselk import (
    Atom,
    CellCondition,
    CellSet,
    LaurentSeries,
    LinTerm,
    NoShrink,
    NotInClosure,
    construct_closure_point,
    evaluate,
    fiber_shrink,
    is_in_closure,
    land,
)
from henselk.closedness import YVAR, _eq, _ge, _le, xvar
from henselk.errors import InvalidInput, UnsupportedSet


L = LaurentSeries
VX = xvar(1)


def ge(v: str, k: int) -> Atom:
    return _ge(LinTerm.var(v), k)


def cell(center, formula, ac=None, n=1) -> CellSet:
    return CellSet(n, (CellCondition(n, center, formula, ac or {}),))


# B: v(y) = 2 v(x) and ac(y) = 3 and v(x) >= 1
GROWTH = cell(L.zero(),
              land(Atom("eq", LinTerm.make({YVAR: 1, VX: -2}, 0)), ge(VX, 1)),
              {"y": F(3)})
# B: v(y - (1+t)) >= 2 v(x) and v(x) >= 1
NEAR_UNIT = cell(L({0: F(1), 1: F(1)}),
                 land(_ge(LinTerm.make({YVAR: 1, VX: -2}, 0), 0), ge(VX, 1)))
# B: v(y - t) = 3 v(x) and v(x) even and v(x) >= 2
CONGRUENT = cell(L({1: F(1)}),
                 land(Atom("eq", LinTerm.make({YVAR: 1, VX: -3}, 0)),
                      Atom("cong", LinTerm.var(VX), 2), ge(VX, 2)))
# bounded projection: v(x) <= 5
BOUNDED = cell(L.zero(), land(_le(LinTerm.var(VX), 5), ge(YVAR, 0)))


def _zero_point(n: int, w: LaurentSeries) -> tuple:
    return tuple([L.zero()] * n) + (w,)


# ---------------------------------------------------------------------------
# construct_closure_point
# ---------------------------------------------------------------------------


def test_growth_set_closes_at_zero():
    r = construct_closure_point(GROWTH, 8)
    assert r.w.is_exact_zero
    assert r.trace.outcome == "converged" and r.trace.steps == ()
    assert len(r.certificates) == 8


def test_center_is_recovered_digit_by_digit():
    r = construct_closure_point(NEAR_UNIT, 8)
    assert dict(r.w.terms) == {0: F(1), 1: F(1)}
    assert [(s.level, s.digit) for s in r.trace.steps] == [(0, F(1)), (1, F(1))]
    assert r.trace.outcome == "converged"


def test_congruence_set_closes_at_center():
    r = construct_closure_point(CONGRUENT, 8)
    assert dict(r.w.terms) == {1: F(1)}
    assert [c[0] for c in r.certificates] == list(range(1, 9))
    # each witness satisfies the defining formula with v(x) pushed past nu
    for nu, wit in r.certificates:
        assert wit[VX] >= nu and wit[YVAR] == 3 * wit[VX]
        assert evaluate(CONGRUENT.disjuncts[0].val_formula, wit)


def test_multi_digit_center():
    B = cell(L({0: F(2), 2: F(-1)}),
             land(Atom("eq", LinTerm.make({YVAR: 1, VX: -4}, 0)), ge(VX, 1)))
    r = construct_closure_point(B, 8)
    assert dict(r.w.terms) == {0: F(2), 2: F(-1)}
    assert [(s.level, s.digit) for s in r.trace.steps] == [(0, F(2)),
                                                           (2, F(-1))]
    levels = [s.level for s in r.trace.steps]
    assert levels == sorted(levels) and len(set(levels)) == len(levels)


def test_ac_constraint_fixes_the_digit():
    B = cell(L.zero(), land(_eq(LinTerm.var(YVAR), 3), ge(VX, 1)), {"y": F(2)})
    r = construct_closure_point(B, 8)
    assert dict(r.w.terms) == {3: F(2)}
    assert [(s.level, s.digit) for s in r.trace.steps] == [(3, F(2))]


def test_two_x_variables():
    f = land(_ge(LinTerm.make({YVAR: 1, VX: -1, xvar(2): -1}, 0), 0),
             ge(VX, 1), ge(xvar(2), 1))
    B = cell(L.zero(), f, n=2)
    r = construct_closure_point(B, 6)
    assert r.w.is_exact_zero
    for nu, wit in r.certificates:
        assert wit[VX] >= nu and wit[xvar(2)] >= nu and wit[YVAR] >= nu


def test_bounded_projection_is_rejected():
    r = construct_closure_point(BOUNDED, 8)
    assert isinstance(r, NotInClosure)
    assert r.bound == 5
    assert "punctured neighborhood" in r.detail


def test_first_successful_disjunct_wins():
    both = CellSet(1, (BOUNDED.disjuncts[0], NEAR_UNIT.disjuncts[0]))
    r = construct_closure_point(both, 8)
    assert dict(r.w.terms) == {0: F(1), 1: F(1)} and r.disjunct == 1
    flipped = CellSet(1, (NEAR_UNIT.disjuncts[0], BOUNDED.disjuncts[0]))
    r2 = construct_closure_point(flipped, 8)
    assert r2.w == r.w and r2.disjunct == 0


def test_unconstrained_y_closes_at_zero():
    B = cell(L({0: F(2), 1: F(-1)}), ge(VX, 1))
    r = construct_closure_point(B, 8)
    assert r.w.is_exact_zero


@pytest.mark.parametrize("B", [GROWTH, NEAR_UNIT, CONGRUENT])
def test_soundness_via_membership(B):
    r = construct_closure_point(B, 8)
    m = is_in_closure(B, _zero_point(B.n, r.w))
    assert m.value


@pytest.mark.parametrize("B", [NEAR_UNIT, CONGRUENT])
def test_refinement_extends_the_trace(B):
    small = construct_closure_point(B, 4)
    large = construct_closure_point(B, 12)
    assert small.w == large.w
    ps = [(s.level, s.digit) for s in small.trace.steps]
    pl = [(s.level, s.digit) for s in large.trace.steps]
    k = min(len(ps), len(pl))
    assert ps[:k] == pl[:k]
    assert len(small.certificates) == 4 and len(large.certificates) == 12


# ---------------------------------------------------------------------------
# is_in_closure
# ---------------------------------------------------------------------------


def test_membership_shifted_center():
    B = cell(L({1: F(1)}), _ge(LinTerm.make({YVAR: 1, VX: -1}, 0), 0))
    assert is_in_closure(B, (L.zero(), L({1: F(1)}))).value


def test_membership_unit_circle_excludes_small_points():
    B = cell(L.zero(), _eq(LinTerm.var(YVAR), 0))
    m = is_in_closure(B, (L.zero(), L({1: F(1)})))
    assert not m.value
    assert m.failed_at == 1


def test_membership_agrees_with_construction():
    m = is_in_closure(NEAR_UNIT, (L.zero(), L({0: F(1), 1: F(1)})))
    assert m.value and m.disjunct == 0
    assert len(m.certificates) > 0


# ---------------------------------------------------------------------------
# input validation
# ---------------------------------------------------------------------------


def test_center_outside_valuation_ring_rejected():
    with pytest.raises(UnsupportedSet):
        CellCondition(1, L({-1: F(1)}), ge(VX, 1), {})


def test_inexact_center_rejected():
    with pytest.raises(UnsupportedSet):
        CellCondition(1, L({0: F(1)}, precision=3), ge(VX, 1), {})


def test_zero_ac_rejected():
    with pytest.raises(UnsupportedSet):
        CellCondition(1, L.zero(), ge(VX, 1), {"y": F(0)})


def test_foreign_formula_variable_rejected():
    with pytest.raises(InvalidInput):
        CellCondition(1, L.zero(), ge("vz9", 1), {})


def test_cellset_shape_validation():
    with pytest.raises(InvalidInput):
        CellSet(1, ())
    with pytest.raises(InvalidInput):
        CellSet(2, (CellCondition(1, L.zero(), ge(VX, 1), {}),))


# ---------------------------------------------------------------------------
# fiber_shrink
# ---------------------------------------------------------------------------


def test_shrink_along_double_slope():
    A = CellSet(2, (CellCondition(
        2, L.zero(),
        land(Atom("eq", LinTerm.make({xvar(2): 1, VX: -2}, 0)), ge(VX, 1)),
        {}),))
    s = fiber_shrink(A, 8)
    assert s.permutation == (1, 2)
    assert s.ray.base == (1, 2) and s.ray.direction == (1, 2)
    assert s.step == 1 and s.direction == (1, 2)
    # every ray point stays inside the set
    for r in range(6):
        assert evaluate(A.disjuncts[0].val_formula, s.ray.point(r))


def test_shrink_congruence_forces_step_two():
    A = CellSet(2, (CellCondition(
        2, L.zero(),
        land(Atom("cong", LinTerm.make({VX: 1}, -1), 2),
             _ge(LinTerm.make({xvar(2): 1, VX: -1}, 0), 0)),
        {}),))
    s = fiber_shrink(A, 8)
    assert s.ray.base == (1, 1)
    assert s.step == 2 and s.direction == (1, 1)
    assert s.ray.direction == (2, 2)
    for r in range(6):
        assert evaluate(A.disjuncts[0].val_formula, s.ray.point(r))


def test_single_variable_set_shrinks_itself():
    A = cell(L.zero(), ge(VX, 0))
    s = fiber_shrink(A, 8)
    assert s.permutation == (1,)
    assert s.ray.base == (0,) and s.ray.direction == (1,) and s.step == 1


def test_shrink_requires_accumulation():
    A = CellSet(2, (CellCondition(
        2, L.zero(), land(_le(LinTerm.var(VX), 4), ge(xvar(2), 0)), {}),))
    s = fiber_shrink(A, 8)
    assert isinstance(s, NoShrink) and s.bound == 4


def test_shrink_rejects_y_formulas():
    with pytest.raises(InvalidInput):
        fiber_shrink(cell(L.zero(), ge(YVAR, 0)), 8)
