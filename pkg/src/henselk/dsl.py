"""Concrete syntax for series, polynomials, and valuation conditions.

Expressions follow the usual precedence (sum < product < power) over
rational literals, the series parameter t, named variables, and a trailing
precision marker O(t^N).  Conditions combine comparison atoms over value
terms (integer linear combinations of v(...) symbols and bare value-group
variables), angular-component atoms ac(expr) = rational, and congruences
"term === r mod m", with & | !, parentheses, and value-group quantifiers
"exists x . ..." / "forall x . ...".

A parenthesis at condition level always opens a grouped condition; value
terms themselves do not take parentheses.  Comparisons against "inf" name
the zero locus of the compared polynomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from . import polyutil as pu
from .arcs_loja import VCompare, VZero, plane_and, plane_not, plane_or
from .closedness import YVAR, CellCondition, CellSet, xvar
from .errors import DslParseError, InvalidInput
from .hensel_puiseux import BivarPoly
from .presburger import (Atom, Exists, Forall, LinTerm, land, lnot, lor)
from .series import DEFAULT_PRECISION, LaurentSeries, PolyK, divide


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Add:
    a: object
    b: object


@dataclass(frozen=True)
class Sub:
    a: object
    b: object


@dataclass(frozen=True)
class Mul:
    a: object
    b: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Neg:
    a: object


@dataclass(frozen=True)
class Big:
    """Precision marker O(t^order)."""

    order: int


@dataclass(frozen=True)
class Val:
    """v(expr) inside a value term."""

    arg: object


@dataclass(frozen=True)
class Inf:
    pass


@dataclass(frozen=True)
class Cmp:
    left: object
    op: str                        # "=", "<=", ">=", "<", ">"
    right: object                  # value term or Inf


@dataclass(frozen=True)
class AcAtom:
    arg: object
    value: Fraction


@dataclass(frozen=True)
class Cong:
    term: object
    residue: int
    modulus: int


@dataclass(frozen=True)
class CAnd:
    a: object
    b: object


@dataclass(frozen=True)
class COr:
    a: object
    b: object


@dataclass(frozen=True)
class CNot:
    a: object


@dataclass(frozen=True)
class Quant:
    kind: str                      # "exists" | "forall"
    var: str
    body: object


EXPR_NODES = (Num, Var, Add, Sub, Mul, Pow, Neg, Big, Val)
COND_NODES = (Cmp, AcAtom, Cong, CAnd, COr, CNot, Quant)


# ---------------------------------------------------------------------------
# lexer
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    col: int
    value: object = None


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>===|<=|>=|[+\-*^()&|!.=<>,])
""", re.VERBOSE)

_KEYWORDS = {"exists", "forall", "mod", "inf"}


def _lex(text: str) -> list[_Token]:
    out = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise DslParseError(f"unexpected character {text[pos]!r}", line, col)
        lexeme = m.group(0)
        if m.lastgroup == "num":
            if "/" in lexeme:
                p, q = lexeme.split("/")
                value = Fraction(int(p), int(q))
            else:
                value = Fraction(int(lexeme))
            out.append(_Token("num", lexeme, line, col, value))
        elif m.lastgroup == "name":
            kind = lexeme if lexeme in _KEYWORDS else "name"
            out.append(_Token(kind, lexeme, line, col))
        elif m.lastgroup == "op":
            out.append(_Token(lexeme, lexeme, line, col))
        for ch in lexeme:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    out.append(_Token("eof", "", line, col))
    return out


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


_CMP_OPS = ("=", "<=", ">=", "<", ">")


class _Parser:
    def __init__(self, text: str):
        self.tokens = _lex(text)
        self.pos = 0

    def peek(self, ahead: int = 0) -> _Token:
        i = min(self.pos + ahead, len(self.tokens) - 1)
        return self.tokens[i]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise DslParseError(f"expected {kind!r}, found {tok.text or 'end of input'!r}",
                             tok.line, tok.col, expected=(kind,))
        return self.next()

    def fail(self, what: str, expected=()):
        tok = self.peek()
        raise DslParseError(f"expected {what}, found {tok.text or 'end of input'!r}",
                         tok.line, tok.col, expected=tuple(expected))

    def at_end(self) -> bool:
        return self.peek().kind == "eof"

    # -- expressions --

    def expr(self):
        node = self.product()
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            rhs = self.product()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def product(self):
        node = self.unary()
        while self.peek().kind == "*":
            self.next()
            node = Mul(node, self.unary())
        return node

    def unary(self):
        if self.peek().kind == "-":
            self.next()
            return Neg(self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek().kind == "^":
            self.next()
            node = Pow(node, self.signed_int())
        return node

    def signed_int(self) -> int:
        sign = 1
        if self.peek().kind == "-":
            self.next()
            sign = -1
        tok = self.expect("num")
        if tok.value.denominator != 1:
            raise DslParseError("exponent must be an integer", tok.line, tok.col)
        return sign * int(tok.value)

    def atom(self):
        tok = self.peek()
        if tok.kind == "num":
            self.next()
            return Num(tok.value)
        if tok.kind == "name":
            if tok.text == "O" and self.peek(1).kind == "(":
                self.next()
                self.next()
                inner = self.expr()
                self.expect(")")
                return Big(_big_order(inner, tok))
            self.next()
            return Var(tok.text)
        if tok.kind == "(":
            self.next()
            node = self.expr()
            self.expect(")")
            return node
        self.fail("an expression", expected=("num", "name", "("))

    # -- value terms --

    def vterm(self):
        node = self.vproduct()
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            rhs = self.vproduct()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def vproduct(self):
        node = self.vatom()
        while self.peek().kind == "*":
            self.next()
            node = Mul(node, self.vatom())
        return node

    def vatom(self):
        tok = self.peek()
        if tok.kind == "-":
            self.next()
            return Neg(self.vatom())
        if tok.kind == "num":
            self.next()
            return Num(tok.value)
        if tok.kind == "name":
            if tok.text == "v" and self.peek(1).kind == "(":
                self.next()
                self.next()
                inner = self.expr()
                self.expect(")")
                return Val(inner)
            self.next()
            return Var(tok.text)
        self.fail("a value term", expected=("num", "name", "v("))

    # -- conditions --

    def condition(self):
        node = self.and_cond()
        while self.peek().kind == "|":
            self.next()
            node = COr(node, self.and_cond())
        return node

    def and_cond(self):
        node = self.unary_cond()
        while self.peek().kind == "&":
            self.next()
            node = CAnd(node, self.unary_cond())
        return node

    def unary_cond(self):
        tok = self.peek()
        if tok.kind == "!":
            self.next()
            return CNot(self.unary_cond())
        if tok.kind in ("exists", "forall"):
            self.next()
            name = self.expect("name").text
            self.expect(".")
            return Quant(tok.kind, name, self.condition())
        if tok.kind == "(":
            self.next()
            node = self.condition()
            self.expect(")")
            return node
        return self.catom()

    def catom(self):
        tok = self.peek()
        if tok.kind == "name" and tok.text == "ac" and self.peek(1).kind == "(":
            self.next()
            self.next()
            arg = self.expr()
            self.expect(")")
            self.expect("=")
            neg = False
            if self.peek().kind == "-":
                self.next()
                neg = True
            num = self.expect("num")
            return AcAtom(arg, -num.value if neg else num.value)
        left = self.vterm()
        op = self.peek()
        if op.kind == "===":
            self.next()
            sign = 1
            if self.peek().kind == "-":
                self.next()
                sign = -1
            residue = self.expect("num")
            if residue.value.denominator != 1:
                raise DslParseError("residue must be an integer",
                                 residue.line, residue.col)
            self.expect("mod")
            modulus = self.expect("num")
            if modulus.value.denominator != 1 or modulus.value <= 0:
                raise DslParseError("modulus must be a positive integer",
                                 modulus.line, modulus.col)
            return Cong(left, sign * int(residue.value), int(modulus.value))
        if op.kind in _CMP_OPS:
            self.next()
            if self.peek().kind == "inf":
                self.next()
                return Cmp(left, op.kind, Inf())
            return Cmp(left, op.kind, self.vterm())
        self.fail("a comparison", expected=_CMP_OPS + ("===",))


def _big_order(inner, tok: _Token) -> int:
    if isinstance(inner, Var) and inner.name == "t":
        return 1
    if isinstance(inner, Pow) and isinstance(inner.base, Var) \
            and inner.base.name == "t":
        return inner.exp
    raise DslParseError("precision marker must be O(t^N)", tok.line, tok.col)


def parse_expression(text: str):
    p = _Parser(text)
    node = p.expr()
    if not p.at_end():
        p.fail("end of input")
    return node


def parse_condition(text: str):
    p = _Parser(text)
    node = p.condition()
    if not p.at_end():
        p.fail("end of input")
    return node


def parse_expr(text: str):
    """Condition when the text reads as one, else an expression."""
    try:
        return parse_condition(text)
    except DslParseError as cond_err:
        try:
            return parse_expression(text)
        except DslParseError:
            raise cond_err


def parse_value_term(text: str):
    p = _Parser(text)
    node = p.vterm()
    if not p.at_end():
        p.fail("end of input")
    return node


def value_term_to_linterm(node) -> "LinTerm":
    return _vterm_linear(node, None)


# ---------------------------------------------------------------------------
# pretty printer
# ---------------------------------------------------------------------------


def _render_frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 \
        else str(q.numerator)


def render_expr(node, level: int = 0) -> str:
    # levels: 0 sum, 1 product, 2 unary/power operand
    if isinstance(node, Num):
        s = _render_frac(node.value)
        return s
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Big):
        return f"O(t^{node.order})"
    if isinstance(node, Val):
        return f"v({render_expr(node.arg)})"
    if isinstance(node, Add):
        s = f"{render_expr(node.a)} + {render_expr(node.b, 1)}"
        return f"({s})" if level > 0 else s
    if isinstance(node, Sub):
        s = f"{render_expr(node.a)} - {render_expr(node.b, 1)}"
        return f"({s})" if level > 0 else s
    if isinstance(node, Mul):
        s = f"{render_expr(node.a, 1)}*{render_expr(node.b, 1)}"
        return f"({s})" if level > 1 else s
    if isinstance(node, Neg):
        return f"-{render_expr(node.a, 2)}"
    if isinstance(node, Pow):
        return f"{render_expr(node.base, 2)}^{node.exp}"
    raise InvalidInput(f"cannot render {node!r}")


def render_cond(node, level: int = 0) -> str:
    # levels: 0 or, 1 and, 2 unary
    if isinstance(node, COr):
        s = f"{render_cond(node.a)} | {render_cond(node.b, 1)}"
        return f"({s})" if level > 0 else s
    if isinstance(node, CAnd):
        s = f"{render_cond(node.a, 1)} & {render_cond(node.b, 2)}"
        return f"({s})" if level > 1 else s
    if isinstance(node, CNot):
        return f"!{render_cond(node.a, 2)}"
    if isinstance(node, Quant):
        s = f"{node.kind} {node.var} . {render_cond(node.body)}"
        return f"({s})" if level > 0 else s
    if isinstance(node, Cmp):
        rhs = "inf" if isinstance(node.right, Inf) \
            else render_expr(node.right)
        return f"{render_expr(node.left)} {node.op} {rhs}"
    if isinstance(node, AcAtom):
        v = node.value
        s = _render_frac(-v) if v < 0 else _render_frac(v)
        sign = "-" if v < 0 else ""
        return f"ac({render_expr(node.arg)}) = {sign}{s}"
    if isinstance(node, Cong):
        return f"{render_expr(node.term)} === {node.residue} mod {node.modulus}"
    raise InvalidInput(f"cannot render {node!r}")


def render(node) -> str:
    return render_cond(node) if isinstance(node, COND_NODES) \
        else render_expr(node)


# ---------------------------------------------------------------------------
# conversion: expressions
# ---------------------------------------------------------------------------


def expr_names(node) -> set[str]:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, (Num, Big, Inf)):
        return set()
    if isinstance(node, (Add, Sub, Mul)):
        return expr_names(node.a) | expr_names(node.b)
    if isinstance(node, Neg):
        return expr_names(node.a)
    if isinstance(node, Pow):
        return expr_names(node.base)
    if isinstance(node, Val):
        return expr_names(node.arg)
    raise InvalidInput(f"not an expression node: {node!r}")


def expr_to_series(node) -> LaurentSeries:
    """Evaluate over Q((t)); O(t^N) markers bound the precision."""
    def go(n) -> LaurentSeries:
        if isinstance(n, Num):
            return LaurentSeries({0: n.value})
        if isinstance(n, Var):
            if n.name != "t":
                raise InvalidInput(f"series may only mention t, not {n.name}")
            return LaurentSeries({1: Fraction(1)})
        if isinstance(n, Big):
            return LaurentSeries.zero(precision=n.order)
        if isinstance(n, Add):
            return go(n.a) + go(n.b)
        if isinstance(n, Sub):
            return go(n.a) - go(n.b)
        if isinstance(n, Mul):
            return go(n.a) * go(n.b)
        if isinstance(n, Neg):
            return -go(n.a)
        if isinstance(n, Pow):
            base = go(n.base)
            if n.exp >= 0:
                return base ** n.exp
            return divide(LaurentSeries.one(), base ** (-n.exp),
                          DEFAULT_PRECISION)
        raise InvalidInput(f"not a series expression: {n!r}")
    return go(node)


def expr_to_polyk(node, var: str = "y") -> PolyK:
    """Polynomial in var over Q((t)) coefficients."""
    tser = LaurentSeries({1: Fraction(1)})

    def const(s: LaurentSeries) -> PolyK:
        return PolyK([s])

    def go(n) -> PolyK:
        if isinstance(n, Num):
            return const(LaurentSeries({0: n.value}))
        if isinstance(n, Var):
            if n.name == "t":
                return const(tser)
            if n.name == var:
                return PolyK([LaurentSeries.zero(), LaurentSeries.one()])
            raise InvalidInput(f"unexpected variable {n.name} "
                               f"(polynomial is in {var} over t)")
        if isinstance(n, Big):
            return const(LaurentSeries.zero(precision=n.order))
        if isinstance(n, Add):
            return go(n.a) + go(n.b)
        if isinstance(n, Sub):
            return go(n.a) - go(n.b)
        if isinstance(n, Mul):
            return go(n.a) * go(n.b)
        if isinstance(n, Neg):
            return -go(n.a)
        if isinstance(n, Pow):
            base = go(n.base)
            if n.exp >= 0:
                out = const(LaurentSeries.one())
                for _ in range(n.exp):
                    out = out * base
                return out
            if base.degree > 0:
                raise InvalidInput("negative powers only apply to scalars")
            inv = divide(LaurentSeries.one(),
                         base.coefficient(0) ** (-n.exp), DEFAULT_PRECISION)
            return const(inv)
        raise InvalidInput(f"not a polynomial expression: {n!r}")
    return go(node)


def _bp_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, Fraction(0)) + c
    return {k: c for k, c in out.items() if c != 0}


def _bp_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, Fraction(0)) + c1 * c2
    return {k: c for k, c in out.items() if c != 0}


def expr_to_bivar(node) -> BivarPoly:
    """Polynomial over Q in (x, y); t doubles as a name for x."""
    names = expr_names(node)
    if "x" in names and "t" in names:
        raise InvalidInput("use either x or t for the parameter, not both")
    param = "t" if "t" in names and "x" not in names else "x"

    def go(n) -> dict:
        if isinstance(n, Num):
            return {(0, 0): n.value} if n.value else {}
        if isinstance(n, Var):
            if n.name == param:
                return {(1, 0): Fraction(1)}
            if n.name == "y":
                return {(0, 1): Fraction(1)}
            raise InvalidInput(f"unexpected variable {n.name} "
                               "(plane polynomials use x and y)")
        if isinstance(n, Add):
            return _bp_add(go(n.a), go(n.b))
        if isinstance(n, Sub):
            return _bp_add(go(n.a), {k: -c for k, c in go(n.b).items()})
        if isinstance(n, Mul):
            return _bp_mul(go(n.a), go(n.b))
        if isinstance(n, Neg):
            return {k: -c for k, c in go(n.a).items()}
        if isinstance(n, Pow):
            if n.exp < 0:
                raise InvalidInput("no negative powers in plane polynomials")
            out = {(0, 0): Fraction(1)}
            for _ in range(n.exp):
                out = _bp_mul(out, go(n.base))
            return out
        raise InvalidInput(f"not a plane polynomial expression: {n!r}")

    coeffs = go(node)
    if not coeffs:
        raise InvalidInput("plane polynomial is identically zero")
    return BivarPoly(coeffs)


# ---------------------------------------------------------------------------
# conversion: conditions
# ---------------------------------------------------------------------------


def _vterm_linear(node, val_to_var: Callable | None) -> LinTerm:
    """Value term as a LinTerm; val_to_var maps each v(expr) to a variable
    name (None forbids v(...) entirely)."""
    def go(n, sign: int) -> LinTerm:
        if isinstance(n, Num):
            if n.value.denominator != 1:
                raise InvalidInput("value terms take integer coefficients")
            return LinTerm.constant(sign * int(n.value))
        if isinstance(n, Var):
            return LinTerm.var(n.name, sign)
        if isinstance(n, Val):
            if val_to_var is None:
                raise InvalidInput("v(...) does not belong in a pure "
                                   "value-group formula")
            return LinTerm.var(val_to_var(n.arg), sign)
        if isinstance(n, Neg):
            return go(n.a, -sign)
        if isinstance(n, Add):
            return go(n.a, sign).add(go(n.b, sign))
        if isinstance(n, Sub):
            return go(n.a, sign).add(go(n.b, -sign))
        if isinstance(n, Mul):
            for first, second in ((n.a, n.b), (n.b, n.a)):
                if isinstance(first, Num) or (
                        isinstance(first, Neg) and isinstance(first.a, Num)):
                    k = first.value if isinstance(first, Num) else -first.a.value
                    if k.denominator != 1:
                        raise InvalidInput("value terms take integer "
                                           "coefficients")
                    return go(second, sign * int(k))
            raise InvalidInput("value terms are linear: one factor of each "
                               "product must be an integer")
        raise InvalidInput(f"not a value term: {n!r}")
    return go(node, 1)


def _cmp_formula(node: Cmp, val_to_var: Callable | None):
    left = _vterm_linear(node.left, val_to_var)
    if isinstance(node.right, Inf):
        raise InvalidInput("comparison against inf only applies to plane "
                           "sets")
    right = _vterm_linear(node.right, val_to_var)
    diff = left.add(right.scale(-1))
    if node.op == "=":
        return Atom("eq", diff)
    if node.op == "<=":
        return Atom("le", diff)
    if node.op == "<":
        return Atom("le", diff.add(LinTerm.constant(1)))
    if node.op == ">=":
        return Atom("le", diff.scale(-1))
    return Atom("le", diff.scale(-1).add(LinTerm.constant(1)))


def cond_to_formula(node, val_to_var: Callable | None = None):
    """Presburger formula over bare value-group variables."""
    if isinstance(node, Cmp):
        return _cmp_formula(node, val_to_var)
    if isinstance(node, Cong):
        term = _vterm_linear(node.term, val_to_var)
        return Atom("cong", term.add(LinTerm.constant(-node.residue)),
                    node.modulus)
    if isinstance(node, CAnd):
        return land(cond_to_formula(node.a, val_to_var),
                    cond_to_formula(node.b, val_to_var))
    if isinstance(node, COr):
        return lor(cond_to_formula(node.a, val_to_var),
                   cond_to_formula(node.b, val_to_var))
    if isinstance(node, CNot):
        return lnot(cond_to_formula(node.a, val_to_var))
    if isinstance(node, Quant):
        body = cond_to_formula(node.body, val_to_var)
        wrap = Exists if node.kind == "exists" else Forall
        return wrap(node.var, body)
    if isinstance(node, AcAtom):
        raise InvalidInput("ac atoms belong to cell conditions, not "
                           "value-group formulas")
    raise InvalidInput(f"not a condition: {node!r}")


def _x_index(name: str) -> int | None:
    if name == "x":
        return 1
    m = re.fullmatch(r"x(\d+)", name)
    return int(m.group(1)) if m else None


def _y_center(expr) -> LaurentSeries | None:
    """Center c when expr is y, y - c, or y + c; None otherwise."""
    if isinstance(expr, Var) and expr.name == "y":
        return LaurentSeries.zero()
    if isinstance(expr, Sub) and isinstance(expr.a, Var) and expr.a.name == "y":
        return expr_to_series(expr.b)
    if isinstance(expr, Add):
        for ynode, cnode in ((expr.a, expr.b), (expr.b, expr.a)):
            if isinstance(ynode, Var) and ynode.name == "y":
                return -expr_to_series(cnode)
    return None


def _flatten(node, cls) -> list:
    if isinstance(node, cls):
        return _flatten(node.a, cls) + _flatten(node.b, cls)
    return [node]


def cond_to_cellset(node) -> CellSet:
    """Cell-form reading: disjuncts split at top-level |, each a single
    center with constant ac constraints and a valuation formula."""
    disjuncts = _flatten(node, COr)

    n = 1
    for name in _cond_names(node):
        idx = _x_index(name)
        if idx is not None:
            n = max(n, idx)

    cells = []
    for disjunct in disjuncts:
        items = _flatten(disjunct, CAnd)
        acs: dict[str, Fraction] = {}
        parts = []
        center: LaurentSeries | None = None

        def coord_key(expr) -> str:
            nonlocal center
            if isinstance(expr, Var):
                idx = _x_index(expr.name)
                if idx is not None:
                    return f"x{idx}"
            c = _y_center(expr)
            if c is None:
                raise InvalidInput(
                    "cell atoms take v(x_i) or v(y - center): "
                    f"{render_expr(expr)}")
            if center is None:
                center = c
            elif center != c:
                raise InvalidInput("one disjunct, one y-center")
            return "y"

        def to_var(expr) -> str:
            key = coord_key(expr)
            return YVAR if key == "y" else xvar(int(key[1:]))

        for item in items:
            if isinstance(item, AcAtom):
                acs[coord_key(item.arg)] = item.value
            else:
                parts.append(cond_to_formula(item, to_var))
        cells.append(CellCondition(n, center or LaurentSeries.zero(),
                                   land(*parts), acs))
    return CellSet(n, tuple(cells))


def _cond_names(node) -> set[str]:
    if isinstance(node, Cmp):
        names = expr_names(node.left)
        if not isinstance(node.right, Inf):
            names |= expr_names(node.right)
        return names
    if isinstance(node, (AcAtom,)):
        return expr_names(node.arg)
    if isinstance(node, Cong):
        return expr_names(node.term)
    if isinstance(node, (CAnd, COr)):
        return _cond_names(node.a) | _cond_names(node.b)
    if isinstance(node, CNot):
        return _cond_names(node.a)
    if isinstance(node, Quant):
        return _cond_names(node.body) - {node.var}
    raise InvalidInput(f"not a condition: {node!r}")


def cond_to_plane(node):
    """Plane-set condition over polynomials in (x, y)."""
    if isinstance(node, CAnd):
        return plane_and(cond_to_plane(node.a), cond_to_plane(node.b))
    if isinstance(node, COr):
        return plane_or(cond_to_plane(node.a), cond_to_plane(node.b))
    if isinstance(node, CNot):
        return plane_not(cond_to_plane(node.a))
    if isinstance(node, Cmp):
        return _plane_atom(node)
    raise InvalidInput("plane sets are boolean combinations of valuation "
                       "comparisons")


def _vterm_val_combo(node) -> tuple[dict, int]:
    """Value term as ({poly-expr: coeff}, constant)."""
    coeffs: dict = {}
    const = 0

    def go(n, sign: int):
        nonlocal const
        if isinstance(n, Num):
            if n.value.denominator != 1:
                raise InvalidInput("integer offsets only")
            const += sign * int(n.value)
        elif isinstance(n, Val):
            coeffs[n.arg] = coeffs.get(n.arg, 0) + sign
        elif isinstance(n, Neg):
            go(n.a, -sign)
        elif isinstance(n, Add):
            go(n.a, sign)
            go(n.b, sign)
        elif isinstance(n, Sub):
            go(n.a, sign)
            go(n.b, -sign)
        elif isinstance(n, Mul):
            for first, second in ((n.a, n.b), (n.b, n.a)):
                if isinstance(first, Num):
                    if first.value.denominator != 1:
                        raise InvalidInput("integer coefficients only")
                    go(second, sign * int(first.value))
                    return
            raise InvalidInput("value terms are linear")
        elif isinstance(n, Var):
            raise InvalidInput(f"bare variable {n.name} in a plane atom; "
                               "compare valuations of polynomials")
        else:
            raise InvalidInput(f"not a value term: {n!r}")

    go(node, 1)
    return coeffs, const


def _plane_atom(node: Cmp):
    if isinstance(node.right, Inf):
        coeffs, const = _vterm_val_combo(node.left)
        if node.op != "=" or const != 0 or len(coeffs) != 1 \
                or set(coeffs.values()) != {1}:
            raise InvalidInput("the zero locus reads v(poly) = inf")
        (arg, _), = coeffs.items()
        return VZero(expr_to_bivar(arg))
    coeffs, const = _vterm_val_combo(node.left)
    rcoeffs, rconst = _vterm_val_combo(node.right)
    for k, c in rcoeffs.items():
        coeffs[k] = coeffs.get(k, 0) - c
    const -= rconst
    op = node.op
    if op in (">=", ">"):
        coeffs = {k: -c for k, c in coeffs.items()}
        const = -const
        op = "<=" if op == ">=" else "<"
    left: dict = {}
    right: dict = {}
    for arg, c in coeffs.items():
        if c > 0:
            left[arg] = c
        elif c < 0:
            right[arg] = -c

    def build(parts: dict) -> BivarPoly:
        acc = {(0, 0): Fraction(1)}
        for arg, c in sorted(parts.items(), key=lambda kv: render_expr(kv[0])):
            base = expr_to_bivar(arg).coefficients
            for _ in range(c):
                acc = _bp_mul(acc, base)
        return BivarPoly(acc)

    opname = {"<=": "le", "<": "lt", "=": "eq"}[op]
    return VCompare(build(left), opname, build(right), -const)
