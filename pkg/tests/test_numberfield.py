"""Residue-field extensions: arithmetic, factoring, root adjunction."""

from fractions import Fraction

import pytest

import henselk.numberfield as nf
from henselk import DegreeCapExceeded, FieldMismatch
from henselk.numberfield import (NFElement, NumberField, adjoin_root,
                                 factor_over_field, factor_rationals,
                                 is_irreducible_rational)


def F(*xs):
    return [Fraction(x) for x in xs]


def test_factor_rationals_splits_integer_roots():
    # y^2 - 4 = (y - 2)(y + 2)
    c, facs = factor_rationals(F(-4, 0, 1))
    assert c == 1
    assert sorted((tuple(f), m) for f, m in facs) == [
        ((Fraction(-2), Fraction(1)), 1), ((Fraction(2), Fraction(1)), 1)]


def test_factor_rationals_multiplicity():
    # (y - 1)^2 * (y + 3)
    p = F(3, -5, 1, 1)
    c, facs = factor_rationals(p)
    got = sorted((tuple(f), m) for f, m in facs)
    assert got == [((Fraction(-1), Fraction(1)), 2),
                   ((Fraction(3), Fraction(1)), 1)]


def test_irreducibility():
    assert is_irreducible_rational(F(-2, 0, 1))          # y^2 - 2
    assert not is_irreducible_rational(F(-1, 0, 1))      # y^2 - 1
    assert is_irreducible_rational(F(1, 1, 1))           # y^2 + y + 1
    assert is_irreducible_rational(F(-2, 0, 0, 0, 1))    # y^4 - 2


def test_number_field_requires_irreducible():
    with pytest.raises(ValueError):
        NumberField(F(-1, 0, 1))


def test_degree_cap_error():
    p = [Fraction(0)] * 18
    p[0] = Fraction(-2)
    p.append(Fraction(1))                                # y^18 - 2
    with pytest.raises(DegreeCapExceeded) as e:
        NumberField(p)
    assert e.value.kind == "degree-cap-exceeded"


def test_adjoin_sqrt2_and_split():
    fld, root, embed = adjoin_root(F(-2, 0, 1), None, "a")
    assert fld.min_poly == F(-2, 0, 1)
    assert root * root == fld.from_rational(2)
    assert not root.is_rational()
    unit, facs = factor_over_field(F(-2, 0, 1), fld)
    roots = []
    for f, m in facs:
        assert m == 1 and len(f) == 2
        roots.append(-f[0])
    assert sorted(str(r) for r in roots) == ["-a", "a"]


def test_nfelement_arithmetic_and_inverse():
    fld = NumberField(F(-2, 0, 1), "a")
    a = fld.gen
    x = a + 1
    y = x * (a - 1)                      # (a+1)(a-1) = a^2 - 1 = 1
    assert y == fld.from_rational(1)
    inv = x.inverse()
    assert x * inv == fld.from_rational(1)


def test_rational_detection():
    fld = NumberField(F(-2, 0, 1), "a")
    assert fld.from_rational(Fraction(3, 7)).is_rational()
    assert not fld.gen.is_rational()
    assert (fld.gen * fld.gen).is_rational()


def test_field_mismatch():
    f1 = NumberField(F(-2, 0, 1), "a")
    f2 = NumberField(F(-3, 0, 1), "b")
    with pytest.raises(FieldMismatch):
        f1.gen + f2.gen


def test_tower_via_adjoin_over_field():
    fld, r2, _ = adjoin_root(F(-2, 0, 1), None, "a")
    g = [fld.from_rational(-3), fld.zero(), fld.one()]   # y^2 - 3 over Q(a)
    top, r3, embed = adjoin_root(g, fld, "b")
    assert top is not None
    assert r3 * r3 == top.from_rational(3)
    # the embedding carries old elements into the top field
    lifted = embed(r2)
    assert lifted * lifted == top.from_rational(2)


def test_adjoin_rational_root_needs_no_extension():
    fld, root, embed = adjoin_root(F(-9, 0, 1), None, "a")   # y^2 - 9
    assert fld is None
    assert root == Fraction(3) or root == Fraction(-3) or \
        (isinstance(root, NFElement) and root.is_rational())


def test_factor_over_field_product_reconstructs():
    fld = NumberField(F(-2, 0, 1), "a")
    # (y^2 - 2)(y^2 - 3) over Q(a): first splits, second stays quadratic
    p = F(6, 0, -5, 0, 1)
    unit, facs = factor_over_field(p, fld)
    total_deg = sum((len(f) - 1) * m for f, m in facs)
    assert total_deg == 4
    # multiply the factors back together
    prod = [fld.from_rational(1)]
    for f, m in facs:
        for _ in range(m):
            new = [fld.zero()] * (len(prod) + len(f) - 1)
            for i, x in enumerate(prod):
                for j, y in enumerate(f):
                    yy = y if isinstance(y, NFElement) else fld.from_rational(y)
                    new[i + j] = new[i + j] + x * yy
            prod = new
    want = [fld.from_rational(c) for c in p]
    got = [c * unit if isinstance(unit, NFElement) else c for c in prod]
    assert len(got) == len(want)
    for x, y in zip(got, want):
        assert x == y


def test_degree_cap_module_global_is_consulted():
    assert nf.DEGREE_CAP == 16
