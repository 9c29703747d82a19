"""Hensel lifting, Weierstrass-style decomposition, and branch expansion.

Lifting refines a simple residue root of a polynomial over Q[[t]] by Newton
iteration with quadratic convergence.  Decomposition splits a polynomial with
unit leading coefficient into factors grouped by the irreducible factors of
its residue polynomial, via linearized two-factor lifting.

Branch expansion solves P(x, y) = 0 near x = 0: Newton polygon edges give
candidate leading exponents p/q, the edge's characteristic polynomial gives
leading coefficients (adjoining number-field roots as needed), and recursion
or direct lifting produces the tails.  Branches are reported one per
conjugacy class: a branch with ramification q over a coefficient field
encodes all its rotations s -> zeta*s and field embeddings; the `covers`
field records how many distinct roots the class accounts for, and these
counts weighted by multiplicity sum to deg_y P.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Sequence

from . import polyutil as pu
from .errors import (InvalidInput, LeadingCoefficientVanishes, NotARoot,
                     NotASimpleRoot)
from .numberfield import (NFElement, NumberField, adjoin_root,
                          factor_over_field, factor_rationals)
from .series import DEFAULT_PRECISION, LaurentSeries, PolyK, divide


class AtInfinity:
    """Marker for the point at infinity (limits and degenerate slope lines)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "AtInfinity"


AT_INFINITY = AtInfinity()


# ---------------------------------------------------------------------------
# Hensel lifting
# ---------------------------------------------------------------------------


def _check_integral(F: PolyK) -> None:
    for c in F.coefficients:
        lb = c.order_lower_bound()
        if lb is not None and lb < 0:
            raise InvalidInput("coefficients must lie in Q[[t]]")


def hensel_lift(F: PolyK, r0, N: int = DEFAULT_PRECISION) -> LaurentSeries:
    """Refine a simple residue root r0 of F to a root modulo t^N.

    Requires v(F(r0)) >= 1 and v(F'(r0)) = 0; returns y* with
    v(F(y*)) >= N and y* = r0 + O(t).
    """
    _check_integral(F)
    if N < 1:
        raise ValueError("precision must be positive")
    y = r0 if isinstance(r0, LaurentSeries) else LaurentSeries.constant(
        r0 if isinstance(r0, (Fraction, NFElement)) else Fraction(r0))
    Fy = F(y)
    v0 = Fy.order_lower_bound()
    if v0 is not None and v0 < 1:
        raise NotARoot(f"residue value {Fy.coefficient(0)} is nonzero at the start point")
    deriv = F.derivative()
    dv = deriv(y).valuation()
    if not (dv.kind == "finite" and dv.value == 0):
        raise NotASimpleRoot("derivative is not a unit at the start point")
    steps = 0
    while True:
        Fy = F(y)
        if Fy.is_exact_zero:
            return y
        lb = Fy.order_lower_bound()
        if lb is not None and lb >= N:
            break
        steps += 1
        if steps > 2 * N + 8:
            raise RuntimeError("Newton iteration failed to converge")
        y = (y - divide(Fy, deriv(y), N)).truncate(N)
    return y.truncate(N)


# ---------------------------------------------------------------------------
# Hensel decomposition
# ---------------------------------------------------------------------------


@dataclass
class HenselFactor:
    poly: PolyK                      # Weierstrass-style factor, precision N
    residue: list                    # monic irreducible residue poly over Q
    multiplicity: int                # its power in the residue factorization
    center: object                   # root of the residue poly (Fraction | NFElement)
    field: NumberField | None


@dataclass
class HenselFactorization:
    unit: LaurentSeries
    factors: list
    precision: int


def _qpoly_to_polyk(p: Sequence, shift: int = 0) -> PolyK:
    return PolyK([LaurentSeries({shift: c}) if c != 0 else LaurentSeries.zero()
                  for c in p])


def _residue_poly(P: PolyK) -> list[Fraction]:
    out = []
    for c in P.coefficients:
        v = c.coefficient(0)
        out.append(v if isinstance(v, Fraction) else Fraction(v))
    return pu.trim(out)


def _lift_pair(Pstar: PolyK, A: list, B: list, N: int) -> tuple[PolyK, PolyK]:
    """Lift the coprime residue split A*B of Pstar to precision N.

    Factors stay exact when the lift terminates (residual hits zero);
    otherwise they carry O(t^N) markers.
    """
    g, sigma, tau = pu.xgcd(A, B)
    if pu.deg(g) != 0:
        raise RuntimeError("residue factors are not coprime")
    G = _qpoly_to_polyk(A)
    H = _qpoly_to_polyk(B)
    R = Pstar - G * H
    for k in range(1, N):
        if R.is_zero:
            return G, H
        delta = pu.trim([R.coefficient(i).coefficient(k)
                         for i in range(Pstar.degree + 1)])
        if not delta:
            continue
        q_, a = pu.divmod_poly(pu.mul(tau, delta), A)
        b = pu.add(pu.mul(sigma, delta), pu.mul(q_, B))
        dG = _qpoly_to_polyk(a, shift=k)
        dH = _qpoly_to_polyk(b, shift=k)
        R = R - dG * H - dH * G - dG * dH
        G = G + dG
        H = H + dH
    if R.is_zero:
        return G, H
    return G.truncate(N), H.truncate(N)


def hensel_decompose(P: PolyK, N: int = DEFAULT_PRECISION) -> HenselFactorization:
    """Split P over Q[[t]] into the unit times factors with coprime residues.

    Factors are grouped by the irreducible factors of the residue polynomial:
    one factor per irreducible-power block, each monic of degree
    multiplicity * deg(irreducible), congruent to that block mod t.
    """
    _check_integral(P)
    if P.is_zero:
        raise InvalidInput("cannot decompose the zero polynomial")
    lead = P.leading.valuation()
    if not (lead.kind == "finite" and lead.value == 0):
        raise LeadingCoefficientVanishes(
            "leading coefficient must be a unit of Q[[t]]")
    unit = P.leading
    if P.degree == 0:
        return HenselFactorization(unit, [], N)
    coeffs = []
    for i, c in enumerate(P.coefficients):
        if i == P.degree:
            coeffs.append(LaurentSeries.one())
        elif c.is_exact_zero:
            coeffs.append(c)
        else:
            coeffs.append(divide(c, unit, N + 1))
    Pstar = PolyK(coeffs)
    res = _residue_poly(Pstar)
    _, blocks = factor_rationals(res)
    block_polys = [pu.power(m, e) for m, e in blocks]

    factors: list[PolyK] = []
    current = Pstar
    remaining = list(block_polys)
    while len(remaining) > 1:
        A = remaining[0]
        B = [Fraction(1)]
        for q_ in remaining[1:]:
            B = pu.mul(B, q_)
        G, H = _lift_pair(current, A, B, N)
        factors.append(G)
        current = H
        remaining = remaining[1:]
    factors.append(current)

    out = []
    for (m, e), fac in zip(blocks, factors):
        if pu.deg(m) == 1:
            center = -m[0]
            field = None
        else:
            field = NumberField(m, name="w", _trusted=True)
            center = field.gen
        out.append(HenselFactor(fac, m, e, center, field))
    return HenselFactorization(unit, out, N)


# ---------------------------------------------------------------------------
# bivariate polynomials and Newton polygons
# ---------------------------------------------------------------------------


class BivarPoly:
    """Polynomial in x and y over Q, stored as {(deg_x, deg_y): coefficient}."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients):
        clean = {}
        for (i, j), c in dict(coefficients).items():
            c = Fraction(c) if not isinstance(c, Fraction) else c
            if c != 0:
                clean[(int(i), int(j))] = c
        if not clean:
            raise InvalidInput("bivariate polynomial must be nonzero")
        self.coefficients = clean

    @property
    def deg_x(self) -> int:
        return max(i for i, _ in self.coefficients)

    @property
    def deg_y(self) -> int:
        return max(j for _, j in self.coefficients)

    def y_coefficients(self) -> list[list[Fraction]]:
        """List over y-degree of x-coefficient lists."""
        out = [[] for _ in range(self.deg_y + 1)]
        for (i, j), c in self.coefficients.items():
            col = out[j]
            while len(col) <= i:
                col.append(Fraction(0))
            col[i] = c
        return [pu.trim(col) for col in out]

    def evaluate(self, xs: LaurentSeries, ys: LaurentSeries) -> LaurentSeries:
        acc = LaurentSeries.zero()
        for col in reversed(self.y_coefficients()):
            xval = LaurentSeries.zero()
            for c in reversed(col):
                xval = xval * xs + c
            acc = acc * ys + xval
        return acc

    def __str__(self) -> str:
        parts = []
        for (i, j) in sorted(self.coefficients):
            c = self.coefficients[(i, j)]
            bits = []
            if abs(c) != 1 or (i == 0 and j == 0):
                bits.append(str(abs(c)))
            if i:
                bits.append("x" if i == 1 else f"x^{i}")
            if j:
                bits.append("y" if j == 1 else f"y^{j}")
            parts.append(("-" if c < 0 else "+", "*".join(bits)))
    # sign-folded join
        sign, body = parts[0]
        outp = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            outp += f" {sign} {body}"
        return outp


@dataclass(frozen=True)
class Edge:
    slope: Fraction
    start: tuple[int, int]
    end: tuple[int, int]
    length: int


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple[tuple[int, int], ...]
    vertices: tuple[tuple[int, int], ...]
    edges: tuple[Edge, ...]


def _lower_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    pts = sorted(points)
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it turns strictly left
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) > 0:
                break
            hull.pop()
        hull.append(p)
    return hull


def _polygon_from_points(points: list[tuple[int, int]]) -> NewtonPolygon:
    verts = _lower_hull(points)
    edges = []
    for a, b in zip(verts, verts[1:]):
        slope = Fraction(b[1] - a[1], b[0] - a[0])
        edges.append(Edge(slope, a, b, b[0] - a[0]))
    return NewtonPolygon(tuple(sorted(points)), tuple(verts), tuple(edges))


def newton_polygon(P) -> NewtonPolygon:
    """Lower hull of {(y-degree, x-order of that coefficient)}."""
    if isinstance(P, BivarPoly):
        cols = P.y_coefficients()
        points = []
        for j, col in enumerate(cols):
            ords = [i for i, c in enumerate(col) if c != 0]
            if ords:
                points.append((j, min(ords)))
    elif isinstance(P, PolyK):
        points = []
        for j, c in enumerate(P.coefficients):
            v = c.valuation()
            if v.kind == "finite":
                points.append((j, v.value))
            elif v.kind == "at-least":
                from .errors import IndeterminatePrecision
                raise IndeterminatePrecision(
                    f"coefficient of y^{j} has no known leading term")
    else:
        raise TypeError("expected BivarPoly or PolyK")
    if not points:
        raise InvalidInput("zero polynomial has no Newton polygon")
    return _polygon_from_points(points)


# ---------------------------------------------------------------------------
# branch expansion
# ---------------------------------------------------------------------------


@dataclass
class Branch:
    ram_index: int                   # q with x = s^q
    series: LaurentSeries            # y(s)
    field: NumberField | None        # coefficient field (None = Q)
    limit: object                    # Fraction | NFElement | AT_INFINITY
    is_K_rational: bool
    multiplicity: int                # power of this branch's squarefree part
    covers: int                      # distinct roots in the conjugacy class
    slope_line: object               # (p, q, beta) or AT_INFINITY


@dataclass
class _Level:
    q: int
    p: int
    xi: object                       # element of the next field
    embed: Callable                  # previous field -> next field


@dataclass
class _Leaf:
    levels: list
    field: NumberField | None
    hpoly: PolyK | None              # None when the tail is exactly zero
    class_size: int


def _series_field_elems(F, values):
    if F is None:
        return [Fraction(v) if not isinstance(v, Fraction) else v
                for v in values]
    return [v if isinstance(v, NFElement) else F.from_rational(v)
            for v in values]


def _transform(H: PolyK, q: int, p: int, xi, embed) -> PolyK:
    """H(x^q, x^p*(xi + y1)) divided by its minimal x-order."""
    emb_coeffs = [c.map_coefficients(embed) for c in H.coefficients]
    stretched = [c.stretch(q) for c in emb_coeffs]
    # (xi + y1)^j expanded incrementally
    base = PolyK([LaurentSeries.constant(xi), LaurentSeries.one()])
    acc = PolyK([LaurentSeries.one()])
    total = PolyK(())
    for j, cj in enumerate(stretched):
        if j > 0:
            acc = acc * base
        if cj.is_exact_zero:
            continue
        total = total + acc.scale(cj.shift(p * j))
    orders = [c.order_lower_bound() for c in total.coefficients
              if not c.is_exact_zero]
    L = min(o for o in orders if o is not None)
    return PolyK([c.shift(-L) for c in total.coefficients])


def _char_poly_reduced(H: PolyK, edge: Edge, field) -> tuple[list, int, int]:
    """Edge characteristic polynomial in w = z^q, plus (q, p)."""
    (i0, v0), (i1, _) = edge.start, edge.end
    num, den = -edge.slope.numerator, edge.slope.denominator
    p, q = num, den  # slope = -p/q with q >= 1, gcd(|p|, q) = 1
    coeffs = []
    for k in range((i1 - i0) // q + 1):
        j = i0 + k * q
        ordline = v0 - k * p
        c = H.coefficient(j).coefficient(ordline) if j <= H.degree else 0
        coeffs.append(c)
    return _series_field_elems(field, coeffs), q, p


def _spread_exponents(m: Sequence, q: int, field) -> list:
    """m(z^q) as a polynomial in z."""
    out = []
    zero = Fraction(0) if field is None else field.zero()
    for c in m:
        out.append(c)
        out.extend([zero] * (q - 1))
    return pu.trim(out[: (len(m) - 1) * q + 1])


_FIELD_NAMES = "abcdefgh"


def _expand(H: PolyK, field, depth: int, name_idx: int) -> list[_Leaf]:
    """All branch classes of H with y -> 0 as x -> 0 (all limits at depth 0)."""
    if depth > 64:
        raise RuntimeError("branch expansion did not terminate")
    leaves: list[_Leaf] = []
    coeffs = list(H.coefficients)
    if coeffs and coeffs[0].is_exact_zero:
        # y = 0 exactly is a branch (input squarefree: single power)
        leaves.append(_Leaf([], field, None, 1))
        H = PolyK(coeffs[1:])
        if H.degree < 1:
            return leaves
    polygon = newton_polygon(H)
    for edge in polygon.edges:
        if depth > 0 and edge.slope >= 0:
            continue
        phi, q, p = _char_poly_reduced(H, edge, field)
        _, mu_factors = factor_over_field(phi, field)
        for mu, mult in mu_factors:
            if q == 1:
                nu = mu
            else:
                spread = _spread_exponents(mu, q, field)
                _, nu_factors = factor_over_field(spread, field)
                nu = nu_factors[0][0]
            name = _FIELD_NAMES[name_idx % len(_FIELD_NAMES)] + (
                str(name_idx // len(_FIELD_NAMES)) if name_idx >= len(_FIELD_NAMES) else "")
            field2, xi, embed = adjoin_root(nu, field, name=name)
            cls = q * pu.deg(mu)
            level = _Level(q, p, xi, embed)
            H2 = _transform(H, q, p, xi, embed)
            if mult == 1:
                if H2.coefficient(0).is_exact_zero:
                    leaves.append(_Leaf([level], field2, None, cls))
                else:
                    leaves.append(_Leaf([level], field2, H2, cls))
            else:
                for sub in _expand(H2, field2, depth + 1, name_idx + 1):
                    leaves.append(_Leaf([level] + sub.levels, sub.field,
                                        sub.hpoly, cls * sub.class_size))
    return leaves


def _compose_embeds(levels: list) -> list:
    """xi of each level mapped into the leaf field."""
    images = [None] * len(levels)
    emb_acc = lambda x: x
    for i in range(len(levels) - 1, -1, -1):
        images[i] = emb_acc(levels[i].xi)
        prev_emb = levels[i].embed
        inner = emb_acc
        emb_acc = (lambda e, f: lambda x: f(e(x)))(prev_emb, inner)
    return images


def _assemble(leaf: _Leaf, order: int) -> tuple[int, LaurentSeries]:
    """(total ramification Q, series y(s)) for one leaf at the given order."""
    m = 1
    shift_sum = 0
    for lvl in reversed(leaf.levels):
        shift_sum += m * lvl.p
        m *= lvl.q
    Q = m
    if leaf.hpoly is None:
        tail = LaurentSeries.zero()
    else:
        need = max(order - shift_sum, 1) + 2
        tail = hensel_lift(leaf.hpoly, Fraction(0), need)
    images = _compose_embeds(leaf.levels)
    y = tail
    m = 1
    for i in range(len(leaf.levels) - 1, -1, -1):
        lvl = leaf.levels[i]
        y = (LaurentSeries.constant(images[i]) + y).shift(m * lvl.p)
        m *= lvl.q
    return Q, y


def _limit_of(series: LaurentSeries):
    v = series.valuation()
    if v.kind == "infinite":
        return Fraction(0)
    if v.kind == "at-least":
        if v.value is not None and v.value > 0:
            return Fraction(0)
        raise RuntimeError("insufficient precision to read the limit")
    if v.value < 0:
        return AT_INFINITY
    if v.value > 0:
        return Fraction(0)
    return series.coefficient(0)


def _is_rational_value(x) -> bool:
    if x is AT_INFINITY:
        return True
    if isinstance(x, Fraction):
        return True
    return isinstance(x, NFElement) and x.is_rational()


def _slope_line(series: LaurentSeries, limit, Q: int):
    tail = series if limit is AT_INFINITY else series - LaurentSeries.constant(limit)
    tv = tail.valuation()
    if tv.kind == "infinite":
        return AT_INFINITY
    if tv.kind == "at-least":
        return None
    sl = Fraction(tv.value, Q)
    return (sl.numerator, sl.denominator, Fraction(0))


def _branch_sort_key(b: Branch):
    if b.slope_line is AT_INFINITY or b.slope_line is None:
        sl = Fraction(10 ** 9)
    else:
        sl = Fraction(b.slope_line[0], b.slope_line[1])
    limit_key = ("inf",) if b.limit is AT_INFINITY else (
        "nf", str(b.field.min_poly) if b.field else "",
        str(b.limit))
    return (b.limit is AT_INFINITY, sl, b.ram_index, limit_key,
            str(b.series))


def _squarefree_parts_bivar(P: BivarPoly) -> list[tuple[list[list[Fraction]], int]]:
    """Yun decomposition in y over Q(x), parts cleared back to Q[x][y]."""
    cols = P.y_coefficients()
    ypoly = [pu.RatFunc.from_poly(col) for col in cols]
    parts = pu.squarefree_decomposition(ypoly)
    out = []
    for part, mult in parts:
        part = [c if isinstance(c, pu.RatFunc) else pu.RatFunc([Fraction(c)])
                for c in part]
        dens = [Fraction(1)]
        for rf in part:
            if not rf.is_zero:
                g = pu.gcd(dens, rf.den)
                dens = pu.pdiv(pu.mul(dens, rf.den), g)
        cleared = [pu.mul(rf.num, pu.pdiv(dens, rf.den))
                   if not rf.is_zero else [] for rf in part]
        # strip common x-content so vertical components disappear
        xg: list[Fraction] = []
        for col in cleared:
            if col:
                xg = pu.gcd(xg, col) if xg else pu.monic(col)
        if xg and pu.deg(xg) > 0:
            cleared = [pu.pdiv(col, xg) if col else [] for col in cleared]
        out.append((cleared, mult))
    return out


def puiseux_expand(P: BivarPoly, order: int = 16) -> list[Branch]:
    """All branch classes of P(x, y) = 0 above x = 0.

    Multiplicities come from the squarefree decomposition in y; per branch,
    covers * multiplicity summed over all branches equals deg_y P.
    """
    if P.deg_y < 1:
        raise InvalidInput("polynomial must involve y")
    branches: list[Branch] = []
    for cols, mult in _squarefree_parts_bivar(P):
        H = PolyK([LaurentSeries({i: c for i, c in enumerate(col) if c != 0})
                   for col in cols])
        for leaf in _expand(H, None, 0, 0):
            Q, series = _assemble(leaf, order)
            limit = _limit_of(series)
            fld = leaf.field
            if fld is not None and fld.degree == 1:
                fld = None
            branches.append(Branch(
                ram_index=Q,
                series=series,
                field=fld,
                limit=limit,
                is_K_rational=_is_rational_value(limit),
                multiplicity=mult,
                covers=leaf.class_size,
                slope_line=_slope_line(series, limit, Q)))
    branches.sort(key=_branch_sort_key)
    return branches


@dataclass
class LimitRecord:
    limit: object
    is_K_rational: bool
    slope_line: object
    field: NumberField | None
    multiplicity: int
    covers: int


def branch_limits(P: BivarPoly, order: int = 16) -> list[LimitRecord]:
    """Limit of y along each branch as x -> 0, with the slope-line data."""
    return [LimitRecord(b.limit, b.is_K_rational, b.slope_line, b.field,
                        b.multiplicity, b.covers)
            for b in puiseux_expand(P, order)]
