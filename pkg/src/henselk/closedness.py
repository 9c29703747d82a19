"""Closure points of definable sets given in cell form.

A cell condition constrains a tuple (x_1, ..., x_n, y) through a Presburger
formula over the valuations v(x_1), ..., v(x_n), v(y - c) for a constant
center c, plus optional constant leading-coefficient (angular component)
constraints.  Within this fragment every question the closure-point
construction asks (suprema, accumulation of definable sets, digit choices)
is decided exactly by the presburger module.

construct_closure_point builds a series w digit by digit so that the set
contains points with all v(x_i) and v(y - w) simultaneously large; the
digits are recorded in a trace together with the accumulating region that
justified each choice.  fiber_shrink produces a ray in the valuation image
along which all coordinate valuations grow without bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from .errors import InvalidInput, UnsupportedSet
from .presburger import (FALSE, TRUE, Atom, Exists, Forall, LinTerm, Ray,
                         exists, extremum, find_ray, forall, free_vars,
                         fresh_var, land, lnot, lor, qe, render, sat,
                         simplify, substitute)
from .series import LaurentSeries


def xvar(i: int) -> str:
    """Canonical formula variable for v(x_i); i is 1-based."""
    return f"vx{i}"


YVAR = "vy"  # canonical formula variable for v(y - center)


def _ge(term: LinTerm, k: int) -> Atom:
    """term >= k as a normalized <=-atom."""
    return Atom("le", term.scale(-1).add(LinTerm.constant(k)))


def _le(term: LinTerm, k: int) -> Atom:
    return Atom("le", term.add(LinTerm.constant(-k)))


def _eq(term: LinTerm, k: int) -> Atom:
    return Atom("eq", term.add(LinTerm.constant(-k)))


# ---------------------------------------------------------------------------
# cell data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CellCondition:
    """One disjunct: valuation formula plus constant angular constraints.

    val_formula uses variables vx1..vxn and (for the y-coordinate) vy,
    where vy stands for v(y - center).  ac_constraints maps coordinate
    names "x1".."xn" and "y" to required leading coefficients.
    """

    n: int
    center: LaurentSeries
    val_formula: object
    ac_constraints: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInput("need at least one x-variable")
        if not self.center.is_exact:
            raise UnsupportedSet("center must be an exact Laurent polynomial")
        lb = self.center.order_lower_bound()
        if lb is not None and lb < 0:
            raise UnsupportedSet("center must lie in the valuation ring")
        allowed = {xvar(i) for i in range(1, self.n + 1)} | {YVAR}
        extra = free_vars(self.val_formula) - allowed
        if extra:
            raise InvalidInput(f"unexpected formula variables {sorted(extra)}")
        names = {f"x{i}" for i in range(1, self.n + 1)} | {"y"}
        for key, val in dict(self.ac_constraints).items():
            if key not in names:
                raise InvalidInput(f"unknown ac constraint target {key!r}")
            if val == 0:
                raise UnsupportedSet("ac constraints must be nonzero constants")


@dataclass(frozen=True)
class CellSet:
    """Finite union of cell conditions over a common variable count."""

    n: int
    disjuncts: tuple[CellCondition, ...]

    def __post_init__(self):
        if not self.disjuncts:
            raise InvalidInput("need at least one disjunct")
        for d in self.disjuncts:
            if d.n != self.n:
                raise InvalidInput("disjunct variable counts disagree")


@dataclass(frozen=True)
class TraceStep:
    level: int                     # exponent l_i of the chosen digit
    digit: Fraction                # coefficient xi_i
    region: object                 # accumulating vx-region that justified it


@dataclass(frozen=True)
class ClosureTrace:
    steps: tuple[TraceStep, ...]
    outcome: str                   # "converged" | "stopped"


@dataclass(frozen=True)
class ClosurePointResult:
    w: LaurentSeries
    trace: ClosureTrace
    certificates: tuple            # ((nu, witness-dict), ...) for nu <= N
    disjunct: int                  # index of the cell that produced w


@dataclass(frozen=True)
class NotInClosure:
    bound: int | None              # sup of min_i v(x_i) over the projection
    detail: str


@dataclass(frozen=True)
class NoShrink:
    bound: int | None
    detail: str


@dataclass(frozen=True)
class FiberShrink:
    permutation: tuple[int, ...]   # coordinate order, first plays the base role
    ray: Ray
    step: int                      # gcd of ray direction components
    direction: tuple[int, ...]     # primitive direction (ray.direction / step)
    description: str


@dataclass(frozen=True)
class MembershipResult:
    value: bool
    certificates: tuple            # per-nu witnesses when value is true
    failed_at: int | None          # first nu with no witness otherwise
    disjunct: int | None


# ---------------------------------------------------------------------------
# closeness relations
# ---------------------------------------------------------------------------


def _ac_matches(constraint: Fraction | None, lead: Fraction) -> bool:
    return constraint is None or constraint == lead


def _diff_relation(u: str, lv: str, p: LaurentSeries,
                   constraint: Fraction | None):
    """Formula tying lv = v(d - p) to u = v(d) for a free series d.

    d ranges over series with valuation u and (optionally) prescribed
    leading coefficient; all later digits are unconstrained.  p is a known
    exact polynomial.
    """
    uvar = LinTerm.var(u)
    lvar = LinTerm.var(lv)
    if p.is_exact_zero:
        return Atom("eq", uvar.add(lvar.scale(-1)))
    v0 = p.valuation().value
    lead = p.angular_component()
    below = land(_le(uvar, v0 - 1),
                 Atom("eq", lvar.add(uvar.scale(-1))))
    above = land(_ge(uvar, v0 + 1), _eq(lvar, v0))
    if _ac_matches(constraint, lead):
        at = land(_eq(uvar, v0), _ge(lvar, v0))
    else:
        at = land(_eq(uvar, v0), _eq(lvar, v0))
    return lor(below, above, at)


def _closeness_ge(u: str, p: LaurentSeries, constraint: Fraction | None,
                  nu: int):
    """Achievability of v(d - p) >= nu as a condition on u = v(d)."""
    uvar = LinTerm.var(u)
    if p.is_exact_zero:
        return _ge(uvar, nu)
    v0 = p.valuation().value
    lead = p.angular_component()
    parts = [land(_ge(uvar, nu), _le(uvar, v0 - 1))]
    if v0 >= nu:
        parts.append(_ge(uvar, v0 if not _ac_matches(constraint, lead)
                         else v0 + 1))
    if _ac_matches(constraint, lead):
        parts.append(_eq(uvar, v0))
    return lor(*parts)


# ---------------------------------------------------------------------------
# accumulation and projection bounds
# ---------------------------------------------------------------------------


def _accumulates(f, names: Sequence[str]) -> bool:
    """All listed coordinates simultaneously exceed every bound on f."""
    m = fresh_var("m")
    inner = land(f, *[Atom("le", LinTerm.make({m: 1, v: -1}))
                      for v in names])
    for v in names:
        inner = Exists(v, inner)
    return qe(Forall(m, inner)) == TRUE


def _min_coord_sup(f, names: Sequence[str]):
    """Extremum of min_i over the listed coordinates (sup mode)."""
    m = fresh_var("m")
    g = land(f, *[Atom("le", LinTerm.make({m: 1, v: -1})) for v in names])
    return extremum(g, LinTerm.var(m), "sup")


def _cell_formula(cell: CellCondition, with_y: bool = True):
    g = cell.val_formula
    if with_y:
        g = land(g, _ge(LinTerm.var(YVAR), 0))
    return simplify(qe(g))


# ---------------------------------------------------------------------------
# the digit loop
# ---------------------------------------------------------------------------


def _digit_candidates(cell: CellCondition, p: LaurentSeries,
                      level: int) -> list[Fraction]:
    out: list[Fraction] = []
    acy = dict(cell.ac_constraints).get("y")
    pc = p.coefficient(level)
    for cand in (acy, -pc, (acy - pc) if acy is not None else None,
                 Fraction(1)):
        if cand is not None and cand != 0 and cand not in out:
            out.append(Fraction(cand))
    return out


def _construct_in_cell(cell: CellCondition, N: int):
    """Run the digit loop inside one cell; returns (w, trace) or None."""
    xnames = [xvar(i) for i in range(1, cell.n + 1)]
    g = _cell_formula(cell)
    proj = simplify(qe(exists(YVAR, g)))
    if not _accumulates(proj, xnames):
        return None
    acy = dict(cell.ac_constraints).get("y")
    w_poly = LaurentSeries.zero()
    steps: list[TraceStep] = []
    prev_level = -1
    while True:
        p = w_poly - cell.center
        lv = fresh_var("l")
        xi_rel = land(g, _diff_relation(YVAR, lv, p, acy))
        Xi = simplify(qe(exists(YVAR, xi_rel)))
        # paper-style stop: valuations of x and of y - w jointly unbounded
        if _accumulates(Xi, xnames + [lv]):
            return w_poly, ClosureTrace(tuple(steps), "converged")
        if len(steps) >= N:
            return w_poly, ClosureTrace(tuple(steps), "stopped")
        # highest digit position whose fiber still accumulates
        m = fresh_var("m")
        inner = Xi
        for v in xnames:
            inner = land(inner, Atom("le", LinTerm.make({m: 1, v: -1})))
        for v in xnames:
            inner = Exists(v, inner)
        psi = simplify(qe(Forall(m, inner)))
        ext = extremum(psi, LinTerm.var(lv), "sup")
        if ext.kind != "finite":
            raise RuntimeError("digit level selection failed")
        level = ext.value
        if level >= N:
            return w_poly, ClosureTrace(tuple(steps), "stopped")
        if level <= prev_level:
            raise RuntimeError("digit levels failed to increase")
        region = simplify(substitute(Xi, lv, LinTerm.constant(level)))
        chosen = None
        for cand in _digit_candidates(cell, p, level):
            p2 = (w_poly + LaurentSeries({level: cand})) - cell.center
            cont = simplify(qe(exists(
                YVAR, land(g, _closeness_ge(YVAR, p2, acy, level + 1)))))
            if _accumulates(cont, xnames):
                chosen = cand
                break
        if chosen is None:
            raise RuntimeError("no continuing digit at level %d" % level)
        w_poly = w_poly + LaurentSeries({level: chosen})
        steps.append(TraceStep(level, chosen, region))
        prev_level = level


def _certificates_for(cell: CellCondition, w: LaurentSeries,
                      N: int) -> tuple | None:
    """Per-nu witnesses that the cell reaches v(x) >= nu, v(y - w) >= nu."""
    xnames = [xvar(i) for i in range(1, cell.n + 1)]
    g = _cell_formula(cell)
    acy = dict(cell.ac_constraints).get("y")
    p = w - cell.center
    out = []
    for nu in range(1, N + 1):
        cond = land(g, _closeness_ge(YVAR, p, acy, nu),
                    *[_ge(LinTerm.var(v), nu) for v in xnames])
        witness = sat(cond)
        if witness is None:
            return None
        out.append((nu, witness))
    return tuple(out)


def construct_closure_point(B: CellSet, N: int = 16):
    """Closure point (0, w) of B above the origin, or NotInClosure.

    Disjuncts are tried in order; the first whose x-projection accumulates
    at the origin drives the digit loop.  The result carries per-precision
    satisfiability certificates checked by presburger.sat.
    """
    if N < 1:
        raise ValueError("precision must be positive")
    bounds: list[int | None] = []
    for idx, cell in enumerate(B.disjuncts):
        got = _construct_in_cell(cell, N)
        if got is None:
            xnames = [xvar(i) for i in range(1, cell.n + 1)]
            proj = simplify(qe(exists(YVAR, _cell_formula(cell))))
            ext = _min_coord_sup(proj, xnames)
            bounds.append(ext.value if ext.kind == "finite" else None)
            continue
        w, trace = got
        certs = _certificates_for(cell, w, N)
        if certs is None:
            raise RuntimeError("constructed point failed certification")
        return ClosurePointResult(w, trace, certs, idx)
    finite = [b for b in bounds if b is not None]
    bound = max(finite) if finite else None
    return NotInClosure(bound, "projection omits a punctured neighborhood "
                               "of the origin")


# ---------------------------------------------------------------------------
# membership in the closure
# ---------------------------------------------------------------------------


def is_in_closure(B: CellSet, point: Sequence[LaurentSeries],
                  N: int = 16) -> MembershipResult:
    """Whether the point is within t^N-distance of B at every scale nu <= N."""
    if len(point) != B.n + 1:
        raise InvalidInput(f"point needs {B.n + 1} coordinates")
    for coord in point:
        if not coord.is_exact:
            raise InvalidInput("point coordinates must be exact")
    best_fail: int | None = None
    for idx, cell in enumerate(B.disjuncts):
        g = _cell_formula(cell)
        acs = dict(cell.ac_constraints)
        certs = []
        failed = None
        for nu in range(1, N + 1):
            cond = g
            for i in range(1, cell.n + 1):
                cond = land(cond, _closeness_ge(
                    xvar(i), point[i - 1], acs.get(f"x{i}"), nu))
            cond = land(cond, _closeness_ge(
                YVAR, point[-1] - cell.center, acs.get("y"), nu))
            witness = sat(cond)
            if witness is None:
                failed = nu
                break
            certs.append((nu, witness))
        if failed is None:
            return MembershipResult(True, tuple(certs), None, idx)
        best_fail = failed if best_fail is None else max(best_fail, failed)
    return MembershipResult(False, (), best_fail, None)


# ---------------------------------------------------------------------------
# fiber shrinking
# ---------------------------------------------------------------------------


def fiber_shrink(A: CellSet, N: int = 16):
    """Ray in the valuation image along which all coordinates shrink to 0.

    A must constrain x-variables only (no vy).  Returns the identity
    permutation with a certified ray, or NoShrink with the obstruction.
    """
    xnames = [xvar(i) for i in range(1, A.n + 1)]
    bounds: list[int | None] = []
    for cell in A.disjuncts:
        if YVAR in free_vars(cell.val_formula):
            raise InvalidInput("fiber shrinking applies to x-variables only")
        g = simplify(qe(cell.val_formula))
        if not _accumulates(g, xnames):
            ext = _min_coord_sup(g, xnames)
            bounds.append(ext.value if ext.kind == "finite" else None)
            continue
        ray = find_ray(g, xnames)
        if not isinstance(ray, Ray):
            raise RuntimeError("accumulating set without a short ray: "
                               + ray.reason)
        step = 0
        for d in ray.direction:
            step = gcd(step, d)
        primitive = tuple(d // step for d in ray.direction)
        return FiberShrink(tuple(range(1, A.n + 1)), ray, step, primitive,
                           render(g))
    finite = [b for b in bounds if b is not None]
    bound = max(finite) if finite else None
    return NoShrink(bound, "origin is not an accumulation point")
