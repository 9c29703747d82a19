"""Arc selection for plane sets, division exponents, and anisotropic forms.

select_arc parametrizes a path into a plane set defined by valuation
comparisons of polynomials: candidate arcs come from branch expansions of
the polynomials' zero loci and from monomial pairs, and each candidate is
accepted only when the defining conditions reduce to Presburger facts
about v(z) that hold on an unbounded domain of valuations.

loja_exponent computes, for one-variable f and g with Z(g) meeting the
valuation ring only inside Z(f), the least power s making f^s/g extend
continuously, together with the valuation threshold above which
v(g(y)) <= s*v(f(y)).  The analysis is exact: near a root rho at distance
lambda the valuation of f is min_k(v(f^(k)(rho)) + k*lambda), so the full
image of y -> (v(f(y)), v(g(y))) is a finite union of explicit strata.

anisotropic_form builds polynomials vanishing only at the origin by the
recursion G_{r+1} = G_r^2 - t * x_{r+1}^(2*deg G_r), certified level by
level through the valuation parity argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Callable, Mapping, Sequence

from .errors import HypothesisFails, InvalidInput
from .hensel_puiseux import AT_INFINITY, BivarPoly, puiseux_expand
from .presburger import (TRUE, Atom, Exists, Forall, LinTerm, fresh_var,
                         land, lnot, lor, qe, render, simplify)
from .series import LaurentSeries, PolyK, divide


# ---------------------------------------------------------------------------
# plane-set conditions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VCompare:
    """v(left) op v(right) + offset with op in {"le", "lt", "eq"}."""

    left: BivarPoly
    op: str
    right: BivarPoly
    offset: int = 0


@dataclass(frozen=True)
class VZero:
    """The zero locus: v(poly) is infinite."""

    poly: BivarPoly


@dataclass(frozen=True)
class PlaneAnd:
    parts: tuple


@dataclass(frozen=True)
class PlaneOr:
    parts: tuple


@dataclass(frozen=True)
class PlaneNot:
    part: object


def plane_and(*parts) -> PlaneAnd:
    return PlaneAnd(tuple(parts))


def plane_or(*parts) -> PlaneOr:
    return PlaneOr(tuple(parts))


def plane_not(part) -> PlaneNot:
    return PlaneNot(part)


def _condition_atoms(cond) -> list:
    if isinstance(cond, (VCompare, VZero)):
        return [cond]
    if isinstance(cond, (PlaneAnd, PlaneOr)):
        out = []
        for p in cond.parts:
            out.extend(_condition_atoms(p))
        return out
    if isinstance(cond, PlaneNot):
        return _condition_atoms(cond.part)
    raise InvalidInput(f"unknown plane condition {cond!r}")


def _condition_polys(cond) -> list[BivarPoly]:
    out = []
    for a in _condition_atoms(cond):
        if isinstance(a, VZero):
            out.append(a.poly)
        else:
            out.extend((a.left, a.right))
    return out


# ---------------------------------------------------------------------------
# arcs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Arc:
    components: tuple[LaurentSeries, LaurentSeries]   # (x(z), y(z))
    domain_formula: object          # Presburger formula over v(z)
    domain: str                     # rendered description incl. ac(z) = 1
    order: int                      # verified precision


@dataclass(frozen=True)
class NoArcFound:
    reason: str
    exponent_bound: int
    order: int


_MVAR = "m"  # the valuation of the arc parameter inside domain formulas


def _arc_atom_formula(atom, phi1: LaurentSeries, phi2: LaurentSeries):
    """The atom's truth along the arc, as a formula over m = v(z) >= 1.

    Valuations compose exactly: with rational coefficients, distinct
    z-powers have distinct valuations once m >= 1, so v(p(phi(z))) is
    ord_z(p o phi) * m.  Returns None when a truncated composition leaves
    the order unknown.
    """
    mvar = LinTerm.var(_MVAR)

    def ord_of(p: BivarPoly):
        val = p.evaluate(phi1, phi2).valuation()
        if val.kind == "at-least":
            return "unknown"
        if val.kind == "infinite":
            return None
        return val.value

    if isinstance(atom, VZero):
        o = ord_of(atom.poly)
        if o is None or o == "unknown":
            # exactly zero, or zero to the verified order
            return TRUE
        return _false()
    o1, o2 = ord_of(atom.left), ord_of(atom.right)
    if o1 == "unknown" or o2 == "unknown":
        return "unknown"
    if o1 is None and o2 is None:
        return TRUE if atom.op in ("le", "eq") else _false()
    if o1 is None:                  # v(left) infinite
        return _false()
    if o2 is None:                  # v(right) infinite: left always smaller
        return TRUE if atom.op in ("le", "lt") else _false()
    diff = LinTerm.make({_MVAR: o1 - o2}, -atom.offset)
    if atom.op == "le":
        return Atom("le", diff)
    if atom.op == "lt":
        return Atom("le", diff.add(LinTerm.constant(1)))
    if atom.op == "eq":
        return Atom("eq", diff)
    raise InvalidInput(f"unknown comparison {atom.op!r}")


def _false():
    from .presburger import FALSE
    return FALSE


def _arc_condition_formula(cond, phi1, phi2):
    if isinstance(cond, (VCompare, VZero)):
        return _arc_atom_formula(cond, phi1, phi2)
    if isinstance(cond, PlaneAnd):
        parts = [_arc_condition_formula(p, phi1, phi2) for p in cond.parts]
        if any(p == "unknown" for p in parts):
            return "unknown"
        return land(*parts)
    if isinstance(cond, PlaneOr):
        parts = [_arc_condition_formula(p, phi1, phi2) for p in cond.parts]
        if any(p == "unknown" for p in parts):
            return "unknown"
        return lor(*parts)
    if isinstance(cond, PlaneNot):
        inner = _arc_condition_formula(cond.part, phi1, phi2)
        return inner if inner == "unknown" else lnot(inner)
    raise InvalidInput(f"unknown plane condition {cond!r}")


def _has_compare(cond) -> bool:
    return any(isinstance(a, VCompare) for a in _condition_atoms(cond))


def _domain_accumulates(E) -> bool:
    b = fresh_var("b")
    claim = Forall(b, Exists(_MVAR, land(
        E, Atom("le", LinTerm.make({b: 1, _MVAR: -1})))))
    return qe(claim) == TRUE


def _try_arc(cond, phi1, phi2, order: int):
    F = _arc_condition_formula(cond, phi1, phi2)
    if F == "unknown":
        return None
    floor = 1 if _has_compare(cond) else 0
    E = simplify(land(F, Atom("le", LinTerm.make({_MVAR: -1}, floor))))
    if E == _false() or not _domain_accumulates(E):
        return None
    # residual check: every atom holds over all of E
    for atom in _condition_atoms(cond):
        af = _arc_atom_formula(atom, phi1, phi2)
        if af == "unknown":
            return None
        holds = qe(Forall(_MVAR, lor(lnot(E), af)))
        negated = qe(Forall(_MVAR, lor(lnot(E), lnot(af))))
        if holds != TRUE and negated != TRUE:
            return None
    text = render(E).replace(_MVAR, "v(z)") + ", ac(z) = 1"
    return Arc((phi1, phi2), E, text, order)


def _branch_candidates(polys: Sequence[BivarPoly], order: int,
                       swap: bool) -> list:
    out = []
    for p in polys:
        q = p
        if swap:
            q = BivarPoly({(j, i): c for (i, j), c in p.coefficients.items()})
        if q.deg_y < 1:
            continue
        for b in puiseux_expand(q, order):
            if b.field is not None or b.limit is AT_INFINITY or b.limit != 0:
                continue
            lb = b.series.order_lower_bound()
            if lb is not None and lb < 1:
                continue
            xs = LaurentSeries({b.ram_index: Fraction(1)})
            pair = (b.series, xs) if swap else (xs, b.series)
            out.append(pair)

    def sign_key(pair):
        ser = pair[1] if not swap else pair[0]
        lb = ser.order_lower_bound()
        return 0 if lb is None or ser.coefficient(lb) > 0 else 1

    out.sort(key=sign_key)
    return out


def select_arc(cond, order: int = 16, exponent_bound: int = 12):
    """Arc z -> (x(z), y(z)) into the plane set, valid on an unbounded
    family of parameter valuations; candidates are monomial pairs
    (z^r1, z^r2) in increasing total exponent, then zero-locus branches."""
    polys = _condition_polys(cond)
    if not polys:
        raise InvalidInput("plane condition mentions no polynomials")
    for total in range(2, 2 * exponent_bound + 1):
        for r1 in range(1, total):
            r2 = total - r1
            if r1 > exponent_bound or r2 > exponent_bound:
                continue
            phi1 = LaurentSeries({r1: Fraction(1)})
            phi2 = LaurentSeries({r2: Fraction(1)})
            got = _try_arc(cond, phi1, phi2, order)
            if got is not None:
                return got
    for swap in (False, True):
        for phi1, phi2 in _branch_candidates(polys, order, swap):
            got = _try_arc(cond, phi1, phi2, order)
            if got is not None:
                return got
    return NoArcFound("candidate family exhausted (monomials with exponents "
                      f"up to {exponent_bound}, then zero-locus branches); "
                      "this is a search bound, not a disproof",
                      exponent_bound, order)


# ---------------------------------------------------------------------------
# division exponents
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootData:
    root: LaurentSeries             # truncated series for the common root
    mult_f: int
    mult_g: int
    c_f: Fraction                   # v(f^(mult_f)(root) / mult_f!)
    c_g: Fraction


@dataclass(frozen=True)
class LojaCertificate:
    s: int
    gamma0: int            # past this v(f)-threshold, v(g) - s*v(f) <= slack
    slack: Fraction        # 0 unless an equal-slope root tail forces excess
    common_roots: tuple[RootData, ...]
    h_spec: str            # h as f^s/g with the local order data
    h: PolyK | None        # exact quotient f^s // g when the division splits
    minimality: str | None          # why s - 1 fails (None when s = 1)


def _exact_quotient(p: PolyK, q: PolyK) -> PolyK | None:
    """Quotient p // q in K[y] when it exists exactly, else None."""
    rem = list(p.coefficients)
    dq = q.degree
    lead = q.coefficient(dq)
    if not lead.is_exact:
        return None
    quo = [LaurentSeries.zero()] * max(1, len(rem) - dq)
    while len(rem) - 1 >= dq:
        top = rem[-1]
        if top.is_exact_zero:
            rem.pop()
            continue
        c = divide(top, lead, 1)
        if not c.is_exact:
            return None
        k = len(rem) - 1 - dq
        quo[k] = c
        for i, qc in enumerate(q.coefficients):
            rem[k + i] = rem[k + i] - c * qc
        rem.pop()
    if any(not r.is_exact_zero for r in rem):
        return None
    return PolyK(quo)


def _polyk_to_bivar(f: PolyK) -> tuple[BivarPoly, int]:
    """Clear t-denominators: returns (poly in Q[x,y] with x = t, shift)."""
    shift = 0
    for c in f.coefficients:
        lb = c.order_lower_bound()
        if lb is not None and lb < -shift:
            shift = -lb
    coeffs = {}
    for j, c in enumerate(f.coefficients):
        for e, val in c.terms.items():
            if not isinstance(val, (Fraction, int)):
                raise InvalidInput("coefficients must be rational series")
            coeffs[(e + shift, j)] = val
    return BivarPoly(coeffs), shift


def _rational_R_branches(f: PolyK, order: int):
    """K-rational roots with nonnegative valuation, as truncated series."""
    bv, _ = _polyk_to_bivar(f)
    if bv.deg_y < 1:
        return []
    out = []
    for b in puiseux_expand(bv, order):
        if b.ram_index != 1 or b.field is not None:
            continue
        lb = b.series.order_lower_bound()
        if lb is not None and lb < 0:
            continue
        out.append(b)
    return out


def _series_agree(a: LaurentSeries, b: LaurentSeries) -> bool:
    horizon = min(p for p in (a.precision, b.precision) if p is not None) \
        if (a.precision is not None or b.precision is not None) else None
    exps = set(a.terms) | set(b.terms)
    for e in exps:
        if horizon is not None and e >= horizon:
            continue
        if a.coefficient(e) != b.coefficient(e):
            return False
    return True


def _taylor_valuations(f: PolyK, rho: LaurentSeries, q: int = 1) -> list:
    """v(f^(k)(rho)/k!) in t-units for k = 0..deg f.

    Dividing by k! never moves a valuation in characteristic zero.  None
    marks an exactly-zero derivative; ("at-least", b) records a truncated
    evaluation whose true valuation is at least b.
    """
    cur = f
    if q > 1:
        cur = PolyK([c.stretch(q) for c in f.coefficients])
    out = []
    for _ in range(f.degree + 1):
        val = cur(rho).valuation()
        if val.kind == "finite":
            out.append(Fraction(val.value, q))
        elif val.kind == "infinite":
            out.append(None)
        else:
            out.append(("at-least", Fraction(val.value, q)))
        cur = cur.derivative()
    return out


def _branch_depth(b) -> Fraction | None:
    """First exponent (t-units) where the root leaves K, None if rational."""
    if b.ram_index == 1 and b.field is None:
        return None
    best = None
    for e, c in sorted(b.series.terms.items()):
        from .numberfield import NFElement
        nonrat = isinstance(c, NFElement) and not c.is_rational()
        if e % b.ram_index != 0 or nonrat:
            best = Fraction(e, b.ram_index)
            break
    if best is None:
        # leaving K only through the truncation horizon
        if b.series.precision is not None:
            return Fraction(b.series.precision, b.ram_index)
        raise RuntimeError("non-rational branch with no visible obstruction")
    return best


def _stratum_value(vk: list, lam: Fraction) -> Fraction | None:
    """min_k (v_k + k*lambda); None means infinite (exact root)."""
    best = None
    for k, v in enumerate(vk):
        if v is None or isinstance(v, tuple):
            continue
        cand = v + k * lam
        if best is None or cand < best:
            best = cand
    for k, v in enumerate(vk):
        if isinstance(v, tuple) and (best is None or v[1] + k * lam <= best):
            raise RuntimeError(
                "insufficient precision in root data; raise the order")
    return best


def loja_exponent(f: PolyK, g: PolyK, order: int = 32) -> LojaCertificate:
    """Least s with f^s/g continuous on the valuation ring (one variable).

    Raises HypothesisFails when g has a root in R that f misses.  The
    threshold gamma0 is the least integer with v(g(y)) <= s*v(f(y)) for
    every y in R with v(f(y)) > gamma0.
    """
    if f.is_zero or g.is_zero:
        raise InvalidInput("f and g must be nonzero")
    for p in (f, g):
        for c in p.coefficients:
            if not c.is_exact:
                raise InvalidInput("coefficients must be exact")
    fb = _rational_R_branches(f, order) if f.degree >= 1 else []
    gb = _rational_R_branches(g, order) if g.degree >= 1 else []

    common: list[RootData] = []
    for bg in gb:
        match = None
        for bf in fb:
            if _series_agree(bf.series, bg.series):
                match = bf
                break
        if match is None:
            raise HypothesisFails(
                "g vanishes at a point of R where f does not",
                root=str(bg.series))
        vkf = _taylor_valuations(f, bg.series)
        vkg = _taylor_valuations(g, bg.series)
        mf, mg = match.multiplicity, bg.multiplicity
        cf = vkf[mf]
        cg = vkg[mg]
        if cf is None or cg is None or isinstance(cf, tuple) \
                or isinstance(cg, tuple):
            raise RuntimeError("insufficient precision at a common root")
        common.append(RootData(bg.series, mf, mg, cf, cg))

    s = 1
    for rd in common:
        s = max(s, ceil(Fraction(rd.mult_g, rd.mult_f)))

    # equal-slope tails leave a constant valuation gap that no finite
    # threshold can remove; the certificate carries it as slack
    slack = Fraction(0)
    for rd in common:
        if s * rd.mult_f == rd.mult_g:
            slack = max(slack, rd.c_g - s * rd.c_f)

    gamma0 = _gamma_threshold(f, g, s, slack, order)

    fs = PolyK([LaurentSeries.one()])
    for _ in range(s):
        fs = fs * f
    h = _exact_quotient(fs, g)

    h_parts = [f"h = f^{s}/g" if h is None else f"h = f^{s}/g = {h}"]
    for rd in common:
        h_parts.append(
            f"at root {rd.root}: ord f^s = {s * rd.mult_f} >= "
            f"ord g = {rd.mult_g}")
    minimality = None
    if s > 1:
        worst = max(common, key=lambda rd: Fraction(rd.mult_g, rd.mult_f))
        minimality = (
            f"for s = {s - 1}, along y = ({worst.root}) + c*t^m the "
            f"valuation of f^{s - 1} grows like {(s - 1) * worst.mult_f}*m "
            f"while v(g) grows like {worst.mult_g}*m, so f^{s - 1}/g is "
            "unbounded")
    return LojaCertificate(s, gamma0, slack, tuple(common),
                           "; ".join(h_parts), h, minimality)


def _gamma_threshold(f: PolyK, g: PolyK, s: int, slack: Fraction,
                     order: int) -> int:
    """Least integer with v(g(y)) <= s*v(f(y)) + slack past it.

    Every y in R sits at some distance lambda from a root of f*g (or from
    0 when it is far from every root), and there the pair of valuations is
    (min_k(vf_k + k*lambda), min_k(vg_k + k*lambda)) from the Taylor data
    at that root.  Enumerating the finitely many strata per root gives the
    whole image; non-integral stratum values are unreachable coincidences
    already covered by a deeper attachment, so they are skipped.
    """
    fgb, _ = _polyk_to_bivar(f * g)
    attach: list[tuple[list, list, Fraction | None]] = []

    zero = LaurentSeries.zero()
    attach.append((_taylor_valuations(f, zero), _taylor_valuations(g, zero),
                   None))
    seen = [zero]
    branches = puiseux_expand(fgb, order) if fgb.deg_y >= 1 else []
    for b in branches:
        lb = b.series.order_lower_bound()
        if (lb is not None and lb < 0) or b.limit is AT_INFINITY:
            continue
        if b.ram_index == 1 and b.field is None:
            if any(_series_agree(b.series, s0) for s0 in seen):
                continue
            seen.append(b.series)
            attach.append((_taylor_valuations(f, b.series),
                           _taylor_valuations(g, b.series), None))
        else:
            attach.append((_taylor_valuations(f, b.series, b.ram_index),
                           _taylor_valuations(g, b.series, b.ram_index),
                           _branch_depth(b)))

    gamma0 = -1
    for vkf, vkg, dep in attach:
        finite = [v for vk in (vkf, vkg) for v in vk
                  if v is not None and not isinstance(v, tuple)]
        if not finite:
            continue
        # beyond this lambda both minima have settled on their final
        # slopes and any equal-slope gap is within the declared slack
        spread = max(abs(v) for v in finite)
        burn = int(ceil((s + 1) * spread + slack)) + f.degree + g.degree + 4
        lams: list[Fraction] = [Fraction(k) for k in range(0, burn + 1)]
        if dep is not None:
            lams = [l for l in lams if l <= dep]
            if dep not in lams:
                lams.append(dep)
        for lam in lams:
            gam = _stratum_value(vkf, lam)
            delt = _stratum_value(vkg, lam)
            if gam is None or delt is None:
                continue
            if gam.denominator != 1 or delt.denominator != 1:
                continue
            if delt > s * gam + slack:
                gamma0 = max(gamma0, int(gam))
    return gamma0


# ---------------------------------------------------------------------------
# anisotropic forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParityLevel:
    level: int
    degree: int
    statement: str


@dataclass(frozen=True)
class AnisotropicForm:
    r: int
    poly: Mapping[tuple, LaurentSeries]   # exponent tuple -> Q[t] coefficient
    degrees: tuple[int, ...]              # deg G_k for k = 1..r
    levels: tuple[ParityLevel, ...]

    def evaluate(self, values: Sequence[LaurentSeries]) -> LaurentSeries:
        if len(values) != self.r:
            raise InvalidInput(f"need {self.r} values")
        acc = LaurentSeries.zero()
        for expo, c in self.poly.items():
            term = c
            for e, vv in zip(expo, values):
                if e:
                    term = term * vv ** e
            acc = acc + term
        return acc


def _mv_mul(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            prev = out.get(key)
            out[key] = ca * cb if prev is None else prev + ca * cb
    return {k: v for k, v in out.items() if not v.is_exact_zero}


def _mv_pad(p: Mapping, r: int) -> dict:
    return {tuple(list(k) + [0] * (r - len(k))): v for k, v in p.items()}


def anisotropic_form(r: int) -> AnisotropicForm:
    """G_r with no zero on K^r besides the origin.

    G_1 = x1, G_2 = x1^2 - t*x2^2, and G_{k+1} = G_2(G_k, x_{k+1}^(deg G_k));
    at every level the two summands have valuations of opposite parity
    (after scaling by the level degree), so they cannot cancel.
    """
    if r < 1:
        raise InvalidInput("need at least one variable")
    one = LaurentSeries.one()
    t = LaurentSeries({1: Fraction(1)})
    poly: dict = {(1,): one}
    degrees = [1]
    levels = [ParityLevel(1, 1, "G_1 = x1 vanishes only at x1 = 0")]
    for k in range(2, r + 1):
        d = degrees[-1]
        padded = _mv_pad(poly, k)
        sq = _mv_mul(padded, padded)
        mono = tuple([0] * (k - 1) + [2 * d])
        sq[mono] = sq.get(mono, LaurentSeries.zero()) - t
        poly = {key: v for key, v in sq.items() if not v.is_exact_zero}
        degrees.append(2 * d)
        levels.append(ParityLevel(
            k, 2 * d,
            f"G_{k} = G_{k - 1}^2 - t*x{k}^{2 * d}: if the arguments are "
            f"not all zero, v(G_{k - 1}^2) is even while "
            f"v(t*x{k}^{2 * d}) is odd, so the difference is nonzero"))
    return AnisotropicForm(r, poly, tuple(degrees), tuple(levels))


def parity_check(form: AnisotropicForm) -> bool:
    """Structural verification of the recursion and its parity argument."""
    expect = anisotropic_form(form.r)
    if dict(expect.poly) != dict(form.poly):
        return False
    if expect.degrees != form.degrees:
        return False
    for k in range(1, len(form.degrees)):
        if form.degrees[k] != 2 * form.degrees[k - 1]:
            return False
    return True
