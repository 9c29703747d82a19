"""Exact Laurent series arithmetic over Q with big-O precision tracking.

A series is a finite set of known terms plus a precision: ``precision = p``
means the value is known modulo O(t^p); ``precision = None`` means the value
is known exactly (it is a Laurent polynomial).  Coefficients are
``fractions.Fraction`` or number-field elements (any value supporting field
arithmetic and ``== 0``).

The valuation of a series is three-valued: a nonzero known term gives a
finite valuation, the exact zero series has infinite valuation, and a series
with no known terms below its precision only has the lower bound given by
that precision.  Operations that need more than the lower bound fail loudly
(IndeterminatePrecision) instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import DivisionByZero, IndeterminatePrecision

# Series-term count used when an operation (division, inversion) must
# truncate an infinite expansion and the caller gave no explicit precision.
DEFAULT_PRECISION = 32


@dataclass(frozen=True)
class Valuation:
    """Three-valued order of a series: finite, at-least-precision, or infinite."""

    kind: str  # "finite" | "at-least" | "infinite"
    value: int | None = None

    @staticmethod
    def finite(n: int) -> "Valuation":
        return Valuation("finite", n)

    @staticmethod
    def at_least(p: int) -> "Valuation":
        return Valuation("at-least", p)

    @staticmethod
    def infinite() -> "Valuation":
        return Valuation("infinite", None)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def is_infinite(self) -> bool:
        return self.kind == "infinite"

    @property
    def lower_bound(self) -> int | None:
        """Best known lower bound on the order; None encodes +infinity."""
        return None if self.kind == "infinite" else self.value

    def __str__(self) -> str:
        if self.kind == "finite":
            return str(self.value)
        if self.kind == "at-least":
            return f">={self.value}"
        return "inf"


def _min_prec(p: int | None, q: int | None) -> int | None:
    if p is None:
        return q
    if q is None:
        return p
    return min(p, q)


def _is_zero_coeff(c) -> bool:
    return c == 0


class LaurentSeries:
    """Immutable precision-tracked element of Q((t)) (or F((t)) for a number field F)."""

    __slots__ = ("terms", "precision")

    def __init__(self, terms: Mapping[int, object] | Iterable[tuple[int, object]] = (),
                 precision: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[int, object] = {}
        for e, c in items:
            if not isinstance(e, int):
                raise TypeError(f"exponent {e!r} is not an integer")
            if isinstance(c, int):
                c = Fraction(c)
            if _is_zero_coeff(c):
                continue
            if precision is not None and e >= precision:
                continue
            if e in clean:
                raise ValueError(f"duplicate exponent {e}")
            clean[e] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "precision", precision)

    def __setattr__(self, name, value):  # immutability guard
        raise AttributeError("LaurentSeries is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(precision: int | None = None) -> "LaurentSeries":
        return LaurentSeries((), precision)

    @staticmethod
    def one() -> "LaurentSeries":
        return LaurentSeries({0: Fraction(1)})

    @staticmethod
    def constant(c, precision: int | None = None) -> "LaurentSeries":
        return LaurentSeries({0: c}, precision)

    @staticmethod
    def t_power(e: int, coeff=Fraction(1)) -> "LaurentSeries":
        return LaurentSeries({e: coeff})

    # -- basic structure ----------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.precision is None

    @property
    def is_exact_zero(self) -> bool:
        return self.precision is None and not self.terms

    def coefficient(self, e: int):
        """Known coefficient of t^e (0 when absent; only sound below precision)."""
        return self.terms.get(e, Fraction(0))

    def valuation(self) -> Valuation:
        if self.terms:
            return Valuation.finite(min(self.terms))
        if self.precision is None:
            return Valuation.infinite()
        return Valuation.at_least(self.precision)

    def order_lower_bound(self) -> int | None:
        """Least possible order (None = +infinity, i.e. exact zero)."""
        return self.valuation().lower_bound

    def angular_component(self):
        """Leading coefficient; 0 for exact zero; fails if the lead is hidden."""
        v = self.valuation()
        if v.kind == "finite":
            return self.terms[v.value]
        if v.kind == "infinite":
            return Fraction(0)
        raise IndeterminatePrecision(
            f"leading term hidden below O(t^{self.precision})")

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "LaurentSeries":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prec = _min_prec(self.precision, other.precision)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if _is_zero_coeff(s):
                terms.pop(e, None)
            else:
                terms[e] = s
        return LaurentSeries(terms, prec)

    __radd__ = __add__

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries({e: -c for e, c in self.terms.items()}, self.precision)

    def __sub__(self, other) -> "LaurentSeries":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentSeries":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "LaurentSeries":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_exact_zero or other.is_exact_zero:
            return LaurentSeries.zero()
        prec = None
        if self.precision is not None:
            prec = _min_prec(prec, self.precision + other.order_lower_bound())
        if other.precision is not None:
            prec = _min_prec(prec, other.precision + self.order_lower_bound())
        acc: dict[int, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if prec is not None and e >= prec:
                    continue
                s = acc.get(e, Fraction(0)) + c1 * c2
                if _is_zero_coeff(s):
                    acc.pop(e, None)
                else:
                    acc[e] = s
        return LaurentSeries(acc, prec)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LaurentSeries":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return divide(self, other)

    def __rtruediv__(self, other) -> "LaurentSeries":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return divide(other, self)

    def __pow__(self, n: int) -> "LaurentSeries":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = LaurentSeries.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- reshaping ----------------------------------------------------------

    def truncate(self, p: int) -> "LaurentSeries":
        """Forget everything from t^p on (never gains precision)."""
        return LaurentSeries(self.terms, _min_prec(self.precision, p))

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by t^k."""
        prec = None if self.precision is None else self.precision + k
        return LaurentSeries({e + k: c for e, c in self.terms.items()}, prec)

    def stretch(self, q: int) -> "LaurentSeries":
        """Substitute t -> t^q (q >= 1)."""
        if q < 1:
            raise ValueError("stretch factor must be >= 1")
        prec = None if self.precision is None else self.precision * q
        return LaurentSeries({e * q: c for e, c in self.terms.items()}, prec)

    def map_coefficients(self, fn: Callable) -> "LaurentSeries":
        return LaurentSeries({e: fn(c) for e, c in self.terms.items()},
                             self.precision)

    # -- comparison / rendering ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries.constant(Fraction(other))
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.precision == other.precision and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.terms.items(), key=lambda kv: kv[0],)),
                     self.precision)) if all(
            isinstance(c, Fraction) for c in self.terms.values()) else hash(
            (frozenset(self.terms), self.precision))

    def agrees_with(self, other: "LaurentSeries",
                    up_to: int | None = None) -> bool:
        """Coefficient agreement below min(precisions, up_to)."""
        bound = _min_prec(_min_prec(self.precision, other.precision), up_to)
        exps = set(self.terms) | set(other.terms)
        for e in exps:
            if bound is not None and e >= bound:
                continue
            if self.coefficient(e) != other.coefficient(e):
                return False
        return True

    def __str__(self) -> str:
        return render_series(self)

    def __repr__(self) -> str:
        return f"LaurentSeries({render_series(self)})"


def _coerce(x):
    if isinstance(x, LaurentSeries):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentSeries.constant(Fraction(x))
    # number-field elements become constant series
    if hasattr(x, "coords") and hasattr(x, "field"):
        return LaurentSeries.constant(x)
    return NotImplemented


def _coeff_str(c, with_t: bool) -> str:
    """Render a coefficient, parenthesizing composite number-field elements."""
    s = str(c)
    if isinstance(c, Fraction):
        return s
    if with_t or ("+" in s or "-" in s[1:] or " " in s):
        return f"({s})"
    return s


def render_series(a: LaurentSeries) -> str:
    parts: list[str] = []
    for e in sorted(a.terms):
        c = a.terms[e]
        if e == 0:
            tpart = ""
        elif e == 1:
            tpart = "t"
        else:
            tpart = f"t^{e}"
        if isinstance(c, Fraction):
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if not tpart:
                body = str(mag)
            elif mag == 1:
                body = tpart
            else:
                body = f"{mag}*{tpart}"
            parts.append((sign, body))
        else:
            body = _coeff_str(c, bool(tpart))
            if tpart:
                body = f"{body}*{tpart}"
            parts.append(("+", body))
    if not parts:
        if a.precision is None:
            return "0"
        return f"O(t^{a.precision})"
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    if a.precision is not None:
        out += f" + O(t^{a.precision})"
    return out


def valuation(a: LaurentSeries) -> Valuation:
    return a.valuation()


def angular_component(a: LaurentSeries):
    return a.angular_component()


def divide(a: LaurentSeries, b: LaurentSeries,
           prec: int | None = None) -> LaurentSeries:
    """Quotient a/b with sound precision propagation.

    ``prec`` bounds the number of quotient terms kept beyond the leading
    exponent when the division does not terminate; defaults to
    DEFAULT_PRECISION.  Exact inputs with exact quotients stay exact.
    """
    if b.is_exact_zero:
        raise DivisionByZero("division by exact zero series")
    vb = b.valuation()
    if vb.kind == "at-least":
        raise IndeterminatePrecision(
            f"divisor leading term hidden below O(t^{b.precision})")
    if a.is_exact_zero:
        return LaurentSeries.zero()
    vb_e = vb.value
    lead_b = b.terms[vb_e]
    va = a.order_lower_bound()  # finite: a is nonzero or has finite precision
    qprec: int | None = None
    if a.precision is not None:
        qprec = _min_prec(qprec, a.precision - vb_e)
    if b.precision is not None:
        qprec = _min_prec(qprec, b.precision - 2 * vb_e + va)
    width = prec if prec is not None else DEFAULT_PRECISION
    cap = va - vb_e + width  # applied only if the division fails to terminate

    rem: dict[int, object] = dict(a.terms)
    quo: dict[int, object] = {}
    truncated = False
    while rem:
        vr = min(rem)
        e = vr - vb_e
        if qprec is not None and e >= qprec:
            break
        if e >= cap:
            truncated = True
            break
        u = rem[vr] / lead_b
        quo[e] = u
        for eb, cb in b.terms.items():
            ee = vr + (eb - vb_e)
            s = rem.get(ee, Fraction(0)) - u * cb
            if _is_zero_coeff(s):
                rem.pop(ee, None)
            else:
                rem[ee] = s
    if truncated:
        qprec = _min_prec(qprec, cap)
    return LaurentSeries(quo, qprec)


def ls_arith(op: str, a: LaurentSeries, b: LaurentSeries,
             prec: int | None = None) -> LaurentSeries:
    """Dispatch one of add/sub/mul/div (CLI entry point)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return divide(a, b, prec)
    raise ValueError(f"unknown operation {op!r}")


class PolyK:
    """Polynomial in one variable y over Q((t)), coefficients by ascending degree."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[LaurentSeries]):
        coeffs = [c if isinstance(c, LaurentSeries) else _coerce(c)
                  for c in coefficients]
        while coeffs and coeffs[-1].is_exact_zero:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("PolyK is immutable")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> LaurentSeries:
        return self.coefficients[-1]

    def coefficient(self, i: int) -> LaurentSeries:
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return LaurentSeries.zero()

    def __call__(self, y0) -> LaurentSeries:
        return poly_eval(self, y0)

    def derivative(self) -> "PolyK":
        return PolyK([self.coefficients[i] * i
                      for i in range(1, len(self.coefficients))])

    def __add__(self, other: "PolyK") -> "PolyK":
        n = max(len(self.coefficients), len(other.coefficients))
        return PolyK([self.coefficient(i) + other.coefficient(i)
                      for i in range(n)])

    def __neg__(self) -> "PolyK":
        return PolyK([-c for c in self.coefficients])

    def __sub__(self, other: "PolyK") -> "PolyK":
        return self + (-other)

    def __mul__(self, other: "PolyK") -> "PolyK":
        if self.is_zero or other.is_zero:
            return PolyK(())
        out = [LaurentSeries.zero()] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coefficients):
            if a.is_exact_zero:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] = out[i + j] + a * b
        return PolyK(out)

    def scale(self, c) -> "PolyK":
        return PolyK([a * c for a in self.coefficients])

    def truncate(self, p: int) -> "PolyK":
        return PolyK([c.truncate(p) for c in self.coefficients])

    def map_coefficients(self, fn: Callable) -> "PolyK":
        return PolyK([fn(c) for c in self.coefficients])

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyK):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coefficient(i)
            if c.is_exact_zero:
                continue
            if i == 0:
                ypart = ""
            elif i == 1:
                ypart = "y"
            else:
                ypart = f"y^{i}"
            cs = render_series(c)
            needs_parens = (" " in cs or cs.startswith("-")) and ypart
            if ypart and cs == "1":
                parts.append(ypart)
            elif ypart:
                parts.append(f"({cs})*{ypart}" if needs_parens else f"{cs}*{ypart}")
            else:
                parts.append(f"({cs})" if " " in cs else cs)
        return " + ".join(parts).replace(" + -", " - ")

    def __repr__(self) -> str:
        return f"PolyK({self})"


def poly_eval(F: PolyK, y0) -> LaurentSeries:
    """Horner evaluation; precision propagates through the series arithmetic."""
    y0 = y0 if isinstance(y0, LaurentSeries) else _coerce(y0)
    acc = LaurentSeries.zero()
    for c in reversed(F.coefficients):
        acc = acc * y0 + c
    return acc
