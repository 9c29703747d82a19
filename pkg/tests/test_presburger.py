"""Integer linear arithmetic: elimination, satisfiability, extrema, rays."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from henselk.presburger import (FALSE, TRUE, Atom, Exists, Forall, LinTerm,
                                NoRay, Ray, evaluate, exists, extremum,
                                find_ray, forall, free_vars, land, lnot, lor,
                                qe, render, sat, simplify, substitute)
from henselk.presburger import And, Bool, Not, Or

import oracles


def x_ge(v, k):
    return Atom("le", LinTerm.make({v: -1}, k))


def test_qe_even_example():
    f = exists("n", land(Atom("eq", LinTerm.make({"x": 1, "n": -2})),
                         x_ge("x", 3)))
    out = simplify(qe(f))
    assert render(out) == "-x + 3 <= 0 & x === 0 mod 2"


def test_qe_removes_all_quantifiers():
    f = forall("a", exists("b", Atom("eq", LinTerm.make({"a": 1, "b": -1}))))
    out = qe(f)
    assert out == TRUE


def test_qe_unsat_exists():
    f = exists("n", land(Atom("eq", LinTerm.make({"n": 2}, 1))))
    assert qe(f) == FALSE


def test_sat_returns_model_or_none():
    f = land(x_ge("x", 3), Atom("cong", LinTerm.make({"x": 1}), 2))
    model = sat(f)
    assert model is not None
    assert evaluate(f, model)
    g = land(x_ge("x", 3), Atom("le", LinTerm.make({"x": 1})))
    assert sat(g) is None


def test_land_empty_is_true():
    assert land() == TRUE


def test_extremum_finite_sup():
    f = land(x_ge("x", 2), Atom("le", LinTerm.make({"x": 1}, -9)))
    got = extremum(f, LinTerm.var("x"), "sup")
    assert got.kind == "finite" and got.value == 9
    assert got.witness is not None and got.witness["x"] == 9


def test_extremum_unbounded_with_ray():
    f = x_ge("x", 2)
    got = extremum(f, LinTerm.var("x"), "sup")
    assert got.kind == "unbounded"
    assert got.ray is not None


def test_extremum_empty():
    f = land(x_ge("x", 2), Atom("le", LinTerm.make({"x": 1}, -1)))
    got = extremum(f, LinTerm.var("x"), "sup")
    assert got.kind == "empty"


def test_find_ray_returns_universal_ray():
    f = land(x_ge("x", 1), Atom("le", LinTerm.make({"x": 2, "y": -1})))
    ray = find_ray(f, ["x", "y"])
    assert isinstance(ray, Ray)
    for r in range(0, 12):
        assert evaluate(f, ray.point(r))


def test_find_ray_reports_obstruction():
    f = land(x_ge("x", 1), Atom("le", LinTerm.make({"x": 1}, -4)))
    got = find_ray(f, ["x"])
    assert isinstance(got, NoRay)


def test_render_parse_shapes():
    f = lor(land(x_ge("x", 1), Atom("cong", LinTerm.make({"x": 1}, -1), 3)),
            Atom("eq", LinTerm.make({"y": 1})))
    text = render(f)
    assert "|" in text and "mod 3" in text


def test_substitute_then_evaluate():
    f = Atom("le", LinTerm.make({"x": 1, "y": -2}))
    g = substitute(f, "x", LinTerm.make({"z": 3}, 1))
    assert free_vars(g) == frozenset({"z", "y"})
    assert evaluate(g, {"z": 1, "y": 2}) == (3 * 1 + 1 - 2 * 2 <= 0)


# -- randomized agreement with the brute-force oracle ------------------------


def test_qe_matches_brute_force_small():
    rng = random.Random(20260815)
    for _ in range(60):
        f, free = oracles.random_guarded_formula(rng, lo=-12, hi=12)
        g = qe(f)
        assert not _has_quantifier(g)
        for _ in range(8):
            env = {v: rng.randint(-12, 12) for v in free}
            assert oracles.brute_truth(f, env, -12, 12) == \
                oracles.brute_truth(g, env, -12, 12), render(g)


def _has_quantifier(f) -> bool:
    if isinstance(f, (Exists, Forall)):
        return True
    if isinstance(f, (And, Or)):
        return any(_has_quantifier(g) for g in f.args)
    if isinstance(f, Not):
        return _has_quantifier(f.arg)
    return False


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_qe_idempotent(seed):
    rng = random.Random(seed)
    f, _ = oracles.random_guarded_formula(rng, lo=-8, hi=8)
    g = qe(f)
    assert qe(g) == g


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_simplify_preserves_truth(seed):
    rng = random.Random(seed)
    f = oracles.random_matrix(rng, ["x", "y"], depth=2)
    g = simplify(f)
    for _ in range(6):
        env = {"x": rng.randint(-20, 20), "y": rng.randint(-20, 20)}
        assert evaluate(f, env) == evaluate(g, env)
