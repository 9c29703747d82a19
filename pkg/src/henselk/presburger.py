"""Linear integer arithmetic with congruences: terms, formulas, decisions.

Formulas are built from atoms ``t <= 0``, ``t = 0``, ``t === 0 mod m`` over
integer-valued variables, with and/or/not and integer quantifiers.
Quantifier elimination follows Cooper's method: scale the target variable's
coefficients to a common value, swap in a unit-coefficient variable plus a
divisibility constraint, then replace the existential by a finite disjunction
over boundary values and one period of the congruence lattice.

On top of elimination: satisfiability with witness, exact suprema/infima of
linear objectives (with an unboundedness ray as certificate), and search for
integer rays along which a set escapes to infinity coordinatewise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

# ---------------------------------------------------------------------------
# linear terms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinTerm:
    """Integer-linear expression: sum of coeff*var plus a constant."""

    coeffs: tuple[tuple[str, int], ...] = ()
    const: int = 0

    @staticmethod
    def make(coeffs: Mapping[str, int] | Iterable[tuple[str, int]] = (),
             const: int = 0) -> "LinTerm":
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[str, int] = {}
        for v, c in items:
            acc[v] = acc.get(v, 0) + int(c)
        clean = tuple(sorted((v, c) for v, c in acc.items() if c != 0))
        return LinTerm(clean, int(const))

    @staticmethod
    def var(name: str, coeff: int = 1) -> "LinTerm":
        return LinTerm.make({name: coeff})

    @staticmethod
    def constant(k: int) -> "LinTerm":
        return LinTerm((), int(k))

    def coeff_of(self, v: str) -> int:
        for name, c in self.coeffs:
            if name == v:
                return c
        return 0

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(v for v, _ in self.coeffs)

    def add(self, other: "LinTerm") -> "LinTerm":
        acc = dict(self.coeffs)
        for v, c in other.coeffs:
            acc[v] = acc.get(v, 0) + c
        return LinTerm.make(acc, self.const + other.const)

    def scale(self, k: int) -> "LinTerm":
        if k == 0:
            return LinTerm.constant(0)
        return LinTerm(tuple((v, c * k) for v, c in self.coeffs),
                       self.const * k)

    def negate(self) -> "LinTerm":
        return self.scale(-1)

    def drop(self, v: str) -> "LinTerm":
        return LinTerm(tuple((n, c) for n, c in self.coeffs if n != v),
                       self.const)

    def subst(self, v: str, replacement: "LinTerm") -> "LinTerm":
        c = self.coeff_of(v)
        if c == 0:
            return self
        return self.drop(v).add(replacement.scale(c))

    def evaluate(self, env: Mapping[str, int]) -> int:
        return self.const + sum(c * env[v] for v, c in self.coeffs)

    def __str__(self) -> str:
        parts = []
        for v, c in self.coeffs:
            if c == 1:
                body = v
            elif c == -1:
                body = v
            else:
                body = f"{abs(c)}*{v}"
            parts.append(("-" if c < 0 else "+", body))
        if self.const != 0 or not parts:
            parts.append(("-" if self.const < 0 else "+", str(abs(self.const))))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


# ---------------------------------------------------------------------------
# formulas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Bool:
    value: bool


TRUE = Bool(True)
FALSE = Bool(False)


@dataclass(frozen=True)
class Atom:
    """kind 'le': term <= 0; 'eq': term = 0; 'cong': term === 0 mod modulus."""

    kind: str
    term: LinTerm
    modulus: int | None = None


@dataclass(frozen=True)
class And:
    args: tuple


@dataclass(frozen=True)
class Or:
    args: tuple


@dataclass(frozen=True)
class Not:
    arg: object


@dataclass(frozen=True)
class Exists:
    var: str
    body: object


@dataclass(frozen=True)
class Forall:
    var: str
    body: object


Formula = object  # Bool | Atom | And | Or | Not | Exists | Forall


def le(term: LinTerm) -> Atom:
    return Atom("le", term)


def eq(term: LinTerm) -> Atom:
    return Atom("eq", term)


def cong(term: LinTerm, modulus: int) -> Atom:
    if modulus <= 0:
        raise ValueError("modulus must be positive")
    return Atom("cong", term, modulus)


def land(*args: Formula) -> Formula:
    flat = []
    for a in args:
        if isinstance(a, And):
            flat.extend(a.args)
        elif a == FALSE:
            return FALSE
        elif a == TRUE:
            continue
        else:
            flat.append(a)
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def lor(*args: Formula) -> Formula:
    flat = []
    for a in args:
        if isinstance(a, Or):
            flat.extend(a.args)
        elif a == TRUE:
            return TRUE
        elif a == FALSE:
            continue
        else:
            flat.append(a)
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def lnot(a: Formula) -> Formula:
    if isinstance(a, Bool):
        return Bool(not a.value)
    if isinstance(a, Not):
        return a.arg
    return Not(a)


def exists(var: str, body: Formula) -> Formula:
    return Exists(var, body)


def forall(var: str, body: Formula) -> Formula:
    return Forall(var, body)


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, Bool):
        return frozenset()
    if isinstance(f, Atom):
        return f.term.variables
    if isinstance(f, (And, Or)):
        out: frozenset[str] = frozenset()
        for a in f.args:
            out |= free_vars(a)
        return out
    if isinstance(f, Not):
        return free_vars(f.arg)
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


_fresh_counter = [0]


def fresh_var(prefix: str = "q") -> str:
    _fresh_counter[0] += 1
    return f"_{prefix}{_fresh_counter[0]}"


def substitute(f: Formula, v: str, replacement: LinTerm) -> Formula:
    """Capture-avoiding substitution of a linear term for a free variable."""
    if isinstance(f, Bool):
        return f
    if isinstance(f, Atom):
        return Atom(f.kind, f.term.subst(v, replacement), f.modulus)
    if isinstance(f, And):
        return And(tuple(substitute(a, v, replacement) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(substitute(a, v, replacement) for a in f.args))
    if isinstance(f, Not):
        return Not(substitute(f.arg, v, replacement))
    if isinstance(f, (Exists, Forall)):
        ctor = Exists if isinstance(f, Exists) else Forall
        if f.var == v:
            return f
        if f.var in replacement.variables:
            nv = fresh_var(f.var.lstrip("_"))
            body = substitute(f.body, f.var, LinTerm.var(nv))
            return ctor(nv, substitute(body, v, replacement))
        return ctor(f.var, substitute(f.body, v, replacement))
    raise TypeError(f"not a formula: {f!r}")


def evaluate(f: Formula, env: Mapping[str, int]) -> bool:
    """Truth value of a quantifier-free formula at an integer point."""
    if isinstance(f, Bool):
        return f.value
    if isinstance(f, Atom):
        val = f.term.evaluate(env)
        if f.kind == "le":
            return val <= 0
        if f.kind == "eq":
            return val == 0
        return val % f.modulus == 0
    if isinstance(f, And):
        return all(evaluate(a, env) for a in f.args)
    if isinstance(f, Or):
        return any(evaluate(a, env) for a in f.args)
    if isinstance(f, Not):
        return not evaluate(f.arg, env)
    raise ValueError("cannot evaluate a quantified formula pointwise")


# ---------------------------------------------------------------------------
# simplification
# ---------------------------------------------------------------------------


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _normalize_atom(a: Atom) -> Formula:
    t = a.term
    if a.kind == "le":
        if not t.coeffs:
            return Bool(t.const <= 0)
        g = 0
        for _, c in t.coeffs:
            g = gcd(g, abs(c))
        if g > 1:
            t = LinTerm(tuple((v, c // g) for v, c in t.coeffs),
                        _ceil_div(t.const, g))
        return Atom("le", t)
    if a.kind == "eq":
        if not t.coeffs:
            return Bool(t.const == 0)
        g = 0
        for _, c in t.coeffs:
            g = gcd(g, abs(c))
        if t.const % g != 0:
            return FALSE
        if g > 1:
            t = LinTerm(tuple((v, c // g) for v, c in t.coeffs), t.const // g)
        if t.coeffs[0][1] < 0:
            t = t.negate()
        return Atom("eq", t)
    # cong
    m = a.modulus
    coeffs = tuple((v, c % m) for v, c in t.coeffs if c % m != 0)
    const = t.const % m
    if not coeffs:
        return Bool(const % m == 0)
    g = m
    for _, c in coeffs:
        g = gcd(g, c)
    if const % g != 0:
        return FALSE
    if g > 1:
        m //= g
        coeffs = tuple((v, (c // g) % m) for v, c in coeffs)
        const = (const // g) % m
        coeffs = tuple((v, c) for v, c in coeffs if c != 0)
        if m == 1:
            return TRUE
        if not coeffs:
            return Bool(const % m == 0)
    return Atom("cong", LinTerm(coeffs, const), m)


def _sort_key(f: Formula) -> str:
    return render(f)


def _absorb(flat: list, is_and: bool):
    """Merge same-coefficient atoms inside one And/Or by constant reasoning.

    Collapses the shifted-constant atom families that elimination emits,
    which keeps nested eliminations from piling up near-duplicate clauses.
    Returns (new argument list, None) or (None, decided Bool).
    """
    atoms: list[Atom] = []
    others: list = []
    for a in flat:
        (atoms if isinstance(a, Atom) else others).append(a)
    if not atoms:
        return flat, None
    eqs: dict[tuple, set[int]] = {}
    les: dict[tuple, int] = {}
    congs: dict[tuple, set[int]] = {}
    for a in atoms:
        key = a.term.coeffs
        if a.kind == "eq":
            eqs.setdefault(key, set()).add(a.term.const)
        elif a.kind == "le":
            c = a.term.const
            if key in les:
                les[key] = max(les[key], c) if is_and else min(les[key], c)
            else:
                les[key] = c
        else:
            congs.setdefault((key, a.modulus), set()).add(
                a.term.const % a.modulus)

    if is_and:
        for key, consts in eqs.items():
            if len(consts) > 1:
                return None, FALSE
        for key, c in list(les.items()):
            neg = LinTerm(key, 0).negate().coeffs
            if neg in les and c + les[neg] > 0:
                return None, FALSE
        for key, consts in eqs.items():
            c = next(iter(consts))          # the pinned value of the term
            if key in les:
                if les[key] > c:
                    return None, FALSE
                del les[key]
            neg = LinTerm(key, 0).negate().coeffs
            if neg in les:
                if les[neg] > -c:
                    return None, FALSE
                del les[neg]
            for (ckey, m) in list(congs):
                if ckey == key:
                    for d in congs[(ckey, m)]:
                        if (d - c) % m != 0:
                            return None, FALSE
                    del congs[(ckey, m)]
        for (key, m), residues in congs.items():
            if len(residues) > 1:
                return None, FALSE
    else:
        for key, c in les.items():
            neg = LinTerm(key, 0).negate().coeffs
            if neg in les and c + les[neg] <= 1:
                return None, TRUE
        for (key, m), residues in congs.items():
            if len(residues) >= m:
                return None, TRUE
        for key, consts in list(eqs.items()):
            if key in les:
                kept = {c for c in consts if not les[key] <= c}
                if kept:
                    eqs[key] = kept
                else:
                    del eqs[key]

    out: list = list(others)
    for key in eqs:
        for c in sorted(eqs[key]):
            out.append(Atom("eq", LinTerm(key, c)))
    for key, c in les.items():
        out.append(Atom("le", LinTerm(key, c)))
    for (key, m), residues in congs.items():
        for r in sorted(residues):
            out.append(Atom("cong", LinTerm(key, r), m))
    return out, None


def simplify(f: Formula) -> Formula:
    if isinstance(f, Bool):
        return f
    if isinstance(f, Atom):
        return _normalize_atom(f)
    if isinstance(f, Not):
        inner = simplify(f.arg)
        if isinstance(inner, Bool):
            return Bool(not inner.value)
        if isinstance(inner, Not):
            return inner.arg
        return Not(inner)
    if isinstance(f, (And, Or)):
        is_and = isinstance(f, And)
        absorb = FALSE if is_and else TRUE
        neutral = TRUE if is_and else FALSE
        flat: list[Formula] = []
        stack = list(f.args)
        while stack:
            a = simplify(stack.pop(0))
            if a == absorb:
                return absorb
            if a == neutral:
                continue
            if isinstance(a, And if is_and else Or):
                stack = list(a.args) + stack
                continue
            flat.append(a)
        merged, verdict = _absorb(flat, is_and)
        if verdict is not None:
            return verdict
        flat = merged
        seen = set()
        uniq = []
        for a in flat:
            k = _sort_key(a)
            if k not in seen:
                seen.add(k)
                uniq.append(a)
        uniq.sort(key=_sort_key)
        if not uniq:
            return neutral
        if len(uniq) == 1:
            return uniq[0]
        return And(tuple(uniq)) if is_and else Or(tuple(uniq))
    if isinstance(f, (Exists, Forall)):
        ctor = Exists if isinstance(f, Exists) else Forall
        body = simplify(f.body)
        if isinstance(body, Bool):
            return body
        if f.var not in free_vars(body):
            return body
        return ctor(f.var, body)
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# negation normal form (also eliminates Forall)
# ---------------------------------------------------------------------------


def _nnf(f: Formula, negate: bool) -> Formula:
    if isinstance(f, Bool):
        return Bool(f.value != negate)
    if isinstance(f, Atom):
        if not negate:
            return f
        t = f.term
        if f.kind == "le":
            return Atom("le", t.negate().add(LinTerm.constant(1)))
        if f.kind == "eq":
            return lor(Atom("le", t.add(LinTerm.constant(1))),
                       Atom("le", t.negate().add(LinTerm.constant(1))))
        m = f.modulus
        return lor(*[Atom("cong", t.add(LinTerm.constant(-r)), m)
                     for r in range(1, m)])
    if isinstance(f, And):
        parts = [_nnf(a, negate) for a in f.args]
        return lor(*parts) if negate else land(*parts)
    if isinstance(f, Or):
        parts = [_nnf(a, negate) for a in f.args]
        return land(*parts) if negate else lor(*parts)
    if isinstance(f, Not):
        return _nnf(f.arg, not negate)
    if isinstance(f, Exists):
        inner = _nnf(f.body, negate)
        return Forall(f.var, inner) if negate else Exists(f.var, inner)
    if isinstance(f, Forall):
        inner = _nnf(f.body, negate)
        return Exists(f.var, inner) if negate else Forall(f.var, inner)
    raise TypeError(f"not a formula: {f!r}")


def nnf(f: Formula) -> Formula:
    return _nnf(f, False)


# ---------------------------------------------------------------------------
# Cooper elimination
# ---------------------------------------------------------------------------


def _atoms_with(f: Formula, v: str) -> list[Atom]:
    out = []
    if isinstance(f, Atom):
        if f.term.coeff_of(v) != 0:
            out.append(f)
    elif isinstance(f, (And, Or)):
        for a in f.args:
            out.extend(_atoms_with(a, v))
    elif isinstance(f, Not):
        out.extend(_atoms_with(f.arg, v))
    return out


def _scale_to_unit(f: Formula, v: str, delta: int) -> Formula:
    """Scale every v-atom so |coeff(v)| = delta, then rename delta*v to v."""
    if isinstance(f, Atom):
        c = f.term.coeff_of(v)
        if c == 0:
            return f
        k = delta // abs(c)
        t = f.term.scale(k)
        m = None
        if f.kind == "cong":
            m = f.modulus * k
            if t.coeff_of(v) < 0:  # sign is free modulo m
                t = t.negate()
        sign = 1 if t.coeff_of(v) > 0 else -1
        rest = t.drop(v)
        newt = LinTerm.make(dict(rest.coeffs) | {v: sign}, rest.const)
        return Atom(f.kind, newt, m)
    if isinstance(f, And):
        return And(tuple(_scale_to_unit(a, v, delta) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(_scale_to_unit(a, v, delta) for a in f.args))
    if isinstance(f, Bool):
        return f
    raise TypeError("expected a quantifier-free NNF formula")


def _split_eq_atoms(f: Formula, v: str) -> Formula:
    """Rewrite v-containing equalities as pairs of inequalities."""
    if isinstance(f, Atom):
        if f.kind == "eq" and f.term.coeff_of(v) != 0:
            return land(Atom("le", f.term), Atom("le", f.term.negate()))
        return f
    if isinstance(f, And):
        return land(*[_split_eq_atoms(a, v) for a in f.args])
    if isinstance(f, Or):
        return lor(*[_split_eq_atoms(a, v) for a in f.args])
    if isinstance(f, Bool):
        return f
    raise TypeError("expected a quantifier-free NNF formula")


def _infinity_proj(f: Formula, v: str, side: str) -> Formula:
    """Limit formula for v -> -inf (side 'low') or v -> +inf (side 'high')."""
    if isinstance(f, Atom):
        c = f.term.coeff_of(v)
        if c == 0:
            return f
        if f.kind == "cong":
            return f
        # le atom, c is +-1
        going_true = (c > 0 and side == "low") or (c < 0 and side == "high")
        return TRUE if going_true else FALSE
    if isinstance(f, And):
        return land(*[_infinity_proj(a, v, side) for a in f.args])
    if isinstance(f, Or):
        return lor(*[_infinity_proj(a, v, side) for a in f.args])
    if isinstance(f, Bool):
        return f
    raise TypeError("expected a quantifier-free NNF formula")


def _subst_unit(f: Formula, v: str, value: LinTerm) -> Formula:
    return substitute(f, v, value)


_EXPAND_WIDTH = 64


def _constant_range(body: Formula, v: str) -> tuple[int, int] | None:
    """Constant bounds lo <= v <= hi read off unit-coefficient conjuncts."""
    conjuncts = body.args if isinstance(body, And) else (body,)
    lo = None
    hi = None
    for a in conjuncts:
        if not (isinstance(a, Atom) and a.kind == "le"):
            continue
        c = a.term.coeff_of(v)
        if abs(c) != 1 or a.term.drop(v).coeffs:
            continue
        k = a.term.const
        if c > 0:        # v + k <= 0
            hi = -k if hi is None else min(hi, -k)
        else:            # -v + k <= 0
            lo = k if lo is None else max(lo, k)
    if lo is None or hi is None or hi - lo > _EXPAND_WIDTH:
        return None
    return lo, hi


def _eliminate_exists(v: str, body: Formula) -> Formula:
    """Cooper step: body quantifier-free, in NNF with atoms only."""
    body = simplify(body)
    if isinstance(body, Bool) or v not in free_vars(body):
        return body
    if isinstance(body, Or):
        return lor(*[_eliminate_exists(v, a) for a in body.args])

    # a constant box around v turns the quantifier into a short disjunction,
    # which stays far smaller than the generic step under deep nesting
    rng = _constant_range(body, v)
    if rng is not None:
        lo, hi = rng
        return lor(*[simplify(substitute(body, v, LinTerm.constant(k)))
                     for k in range(lo, hi + 1)])

    # equality shortcut: a conjunct a*v + r = 0 pins v
    if isinstance(body, (And, Atom)):
        conjuncts = body.args if isinstance(body, And) else (body,)
        pin = next((a for a in conjuncts
                    if isinstance(a, Atom) and a.kind == "eq"
                    and a.term.coeff_of(v) != 0), None)
        if pin is not None:
            a0 = pin.term.coeff_of(v)
            r = pin.term.drop(v)  # a0*v + r = 0
            sign = 1 if a0 > 0 else -1
            na = abs(a0)
            parts: list[Formula] = [Atom("cong", r, na)] if na > 1 else []
            for atom in conjuncts:
                if atom is pin:
                    continue
                parts.append(_subst_scaled(atom, v, na,
                                           r.scale(-sign)))
            return land(*parts)

    atoms = _atoms_with(body, v)
    delta = 1
    for a in atoms:
        delta = lcm(delta, abs(a.term.coeff_of(v)))
    work = _scale_to_unit(body, v, delta)
    if delta > 1:
        work = land(work, Atom("cong", LinTerm.var(v), delta))
    work = _split_eq_atoms(work, v)

    lows: list[LinTerm] = []    # atoms -v + r <= 0, boundary v = r
    highs: list[LinTerm] = []   # atoms  v + r <= 0, boundary v = -r
    period = 1
    for a in _atoms_with(work, v):
        if a.kind == "cong":
            period = lcm(period, a.modulus)
        else:
            c = a.term.coeff_of(v)
            if c < 0:
                lows.append(a.term.drop(v))
            else:
                highs.append(a.term.drop(v).negate())

    use_low = len(lows) <= len(highs)
    out: list[Formula] = []
    side = "low" if use_low else "high"
    proj = simplify(_infinity_proj(work, v, side))
    bounds = lows if use_low else highs
    for j in range(1, period + 1):
        far = j if use_low else -j
        if proj != FALSE:
            cand = simplify(_subst_unit(proj, v, LinTerm.constant(far)))
            if cand != FALSE:
                out.append(cand)
        # non-strict boundary: the bound value itself is offset zero
        off = (j - 1) if use_low else -(j - 1)
        for b in bounds:
            cand = simplify(_subst_unit(work, v, b.add(LinTerm.constant(off))))
            if cand != FALSE:
                out.append(cand)
    return lor(*out)


def _subst_scaled(g: Formula, v: str, na: int, image: LinTerm) -> Formula:
    """Substitute na*v := image throughout, scaling each v-atom by na first."""
    if isinstance(g, Bool):
        return g
    if isinstance(g, And):
        return land(*[_subst_scaled(a, v, na, image) for a in g.args])
    if isinstance(g, Or):
        return lor(*[_subst_scaled(a, v, na, image) for a in g.args])
    if not isinstance(g, Atom):
        raise TypeError("equality shortcut expects a quantifier-free NNF body")
    c = g.term.coeff_of(v)
    if c == 0:
        return g
    t = g.term.scale(na)
    # now the v coefficient is c*na; replace na*v by image
    rest = t.drop(v)
    newt = rest.add(image.scale(c))
    if g.kind == "cong":
        return Atom("cong", newt, g.modulus * na)
    return Atom(g.kind, newt)


def qe(f: Formula) -> Formula:
    """Equivalent quantifier-free formula, simplified and canonically ordered."""
    return simplify(_qe(simplify(f)))


def _qe(f: Formula) -> Formula:
    if isinstance(f, (Bool, Atom)):
        return f
    if isinstance(f, And):
        return land(*[_qe(a) for a in f.args])
    if isinstance(f, Or):
        return lor(*[_qe(a) for a in f.args])
    if isinstance(f, Not):
        return simplify(lnot(_qe(f.arg)))
    if isinstance(f, Forall):
        return _qe(Not(Exists(f.var, Not(f.body))))
    if isinstance(f, Exists):
        inner = _qe(f.body)
        inner = nnf(simplify(inner))
        inner = _qe(inner)  # nnf of a quantified residue may reintroduce them
        return simplify(_eliminate_exists(f.var, nnf(simplify(inner))))
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# satisfiability, extrema, rays
# ---------------------------------------------------------------------------


def _scan_bounds(f: Formula) -> tuple[int, int]:
    """(M, D): beyond |M| every le/eq atom is constant; congruences have period D."""
    M = 0
    D = 1
    def walk(g):
        nonlocal M, D
        if isinstance(g, Atom):
            if g.kind == "cong":
                D = lcm(D, g.modulus)
            else:
                for v, c in g.term.coeffs:
                    M_local = _ceil_div(abs(g.term.const), abs(c)) + 1
                    if M_local > M:
                        M = M_local
        elif isinstance(g, (And, Or)):
            for a in g.args:
                walk(a)
        elif isinstance(g, Not):
            walk(g.arg)
    walk(f)
    return M, D


def _solve_single(f: Formula, v: str) -> int | None:
    """Smallest-magnitude solution of a one-variable quantifier-free formula."""
    M, D = _scan_bounds(f)
    limit = M + D
    for k in range(0, limit + 1):
        for x in ((k,) if k == 0 else (k, -k)):
            if evaluate(f, {v: x}):
                return x
    return None


def sat(f: Formula) -> dict[str, int] | None:
    """A satisfying assignment of the free variables, or None."""
    g = qe(f)
    names = sorted(free_vars(g))
    if not names:
        return {} if g == TRUE else None
    env: dict[str, int] = {}
    remaining = list(names)
    current = g
    while remaining:
        v = remaining.pop(0)
        projected = current
        for w in remaining:
            projected = Exists(w, projected)
        one = qe(projected)
        if isinstance(one, Bool):
            if not one.value:
                return None
            env[v] = 0
            current = substitute(current, v, LinTerm.constant(0))
            continue
        x = _solve_single(one, v)
        if x is None:
            return None
        env[v] = x
        current = simplify(substitute(current, v, LinTerm.constant(x)))
    return env


@dataclass(frozen=True)
class Ray:
    """Integer ray: points(r) = base + r*direction, all satisfying, r >= 0."""

    variables: tuple[str, ...]
    base: tuple[int, ...]
    direction: tuple[int, ...]

    def point(self, r: int) -> dict[str, int]:
        return {v: b + r * d for v, b, d
                in zip(self.variables, self.base, self.direction)}


@dataclass(frozen=True)
class Extremum:
    """sup/inf of an objective over a definable set."""

    kind: str                      # "empty" | "finite" | "unbounded"
    mode: str                      # "sup" | "inf"
    value: int | None = None
    witness: dict | None = None
    ray: Ray | None = None


def extremum(f: Formula, objective: LinTerm, mode: str = "sup") -> Extremum:
    """Exact supremum or infimum of a linear objective over the solution set."""
    if mode not in ("sup", "inf"):
        raise ValueError("mode must be 'sup' or 'inf'")
    z = fresh_var("z")
    names = sorted(free_vars(f) | objective.variables)
    g: Formula = land(f, Atom("eq", objective.add(LinTerm.var(z, -1))))
    for v in names:
        g = Exists(v, g)
    h = qe(g)
    if h == FALSE:
        return Extremum("empty", mode)
    M, D = _scan_bounds(h)
    lo, hi = -(M + D), M + D
    if mode == "sup":
        tail = [x for x in range(M + 1, M + D + 1) if evaluate(h, {z: x})]
        if tail:
            z0 = tail[0]
            ray = Ray(("objective",), (z0,), (D,))
            if _ray_check(h, z, z0, D):
                return Extremum("unbounded", mode, ray=ray)
        for x in range(hi, lo - 1, -1):
            if evaluate(h, {z: x}):
                w = sat(land(f, Atom("eq", objective.add(LinTerm.constant(-x)))))
                return Extremum("finite", mode, value=x, witness=w)
        return Extremum("empty", mode)
    tail = [x for x in range(-(M + 1), -(M + D) - 1, -1) if evaluate(h, {z: x})]
    if tail:
        z0 = tail[0]
        ray = Ray(("objective",), (z0,), (-D,))
        if _ray_check(h, z, z0, -D):
            return Extremum("unbounded", mode, ray=ray)
    for x in range(lo, hi + 1):
        if evaluate(h, {z: x}):
            w = sat(land(f, Atom("eq", objective.add(LinTerm.constant(-x)))))
            return Extremum("finite", mode, value=x, witness=w)
    return Extremum("empty", mode)


def _ray_check(h: Formula, z: str, z0: int, step: int) -> bool:
    """Certify h(z0 + r*step) for all r >= 0 by elimination."""
    r = fresh_var("r")
    shifted = substitute(h, z, LinTerm.make({r: step}, z0))
    claim = Forall(r, lor(Atom("le", LinTerm.make({r: 1}, 1)),  # r <= -1
                          shifted))
    return qe(claim) == TRUE


@dataclass(frozen=True)
class NoRay:
    reason: str
    bound: int | None = None


def find_ray(f: Formula, variables: Sequence[str] | None = None,
             max_component: int = 8) -> Ray | NoRay:
    """A ray with all-positive integer direction inside the solution set.

    Directions are multiples of the congruence period, components tried in
    ascending lexicographic order; each candidate is certified by quantifier
    elimination before a base point is accepted.
    """
    g = qe(f)
    names = tuple(sorted(free_vars(g)) if variables is None else variables)
    if not names:
        return NoRay("no free variables")
    if g == FALSE:
        return NoRay("empty set")
    _, D = _scan_bounds(g)
    reach = max(1, min(max_component, 8))
    n = len(names)

    def candidates():
        from itertools import product
        for total in range(n, n * reach + 1):
            for combo in product(range(1, reach + 1), repeat=n):
                if sum(combo) == total:
                    yield combo

    r = fresh_var("r")
    for combo in candidates():
        direction = tuple(c * D for c in combo)
        shifted = g
        for v, d in zip(names, direction):
            shifted = substitute(shifted, v, LinTerm.make({v: 1, r: d}))
        stays = Forall(r, lor(Atom("le", LinTerm.make({r: 1}, 1)), shifted))
        region = qe(land(g, stays))
        if region == FALSE:
            continue
        base_env = sat(region)
        if base_env is None:
            continue
        base = tuple(base_env.get(v, 0) for v in names)
        return Ray(names, base, direction)
    sup_bound = None
    first = extremum(g, LinTerm.var(names[0]), "sup")
    if first.kind == "finite":
        sup_bound = first.value
    return NoRay("no positive-direction ray certified", bound=sup_bound)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def render_atom(a: Atom) -> str:
    if a.kind == "le":
        return f"{a.term} <= 0"
    if a.kind == "eq":
        return f"{a.term} = 0"
    return f"{a.term} === 0 mod {a.modulus}"


def render(f: Formula, parent: str = "or") -> str:
    """Canonical text form; parses back through the formula DSL."""
    if isinstance(f, Bool):
        return "true" if f.value else "false"
    if isinstance(f, Atom):
        return render_atom(f)
    if isinstance(f, Not):
        return f"!({render(f.arg)})"
    if isinstance(f, And):
        body = " & ".join(render(a, "and") for a in f.args)
        return f"({body})" if parent == "not" else body
    if isinstance(f, Or):
        body = " | ".join(render(a, "or") for a in f.args)
        return f"({body})" if parent in ("and", "not") else body
    if isinstance(f, Exists):
        return f"E {f.var}. ({render(f.body)})"
    if isinstance(f, Forall):
        return f"A {f.var}. ({render(f.body)})"
    raise TypeError(f"not a formula: {f!r}")
