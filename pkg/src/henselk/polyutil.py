"""Dense univariate polynomial helpers over an exact field.

Polynomials are plain lists of coefficients by ascending degree, trimmed so
the last entry is nonzero; the zero polynomial is the empty list.
Coefficients may be fractions.Fraction or number-field elements: anything
with field arithmetic, ``== 0``, and division.  Mixed int/Fraction entries
are normalized by the arithmetic itself.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

Poly = list  # list of coefficients, ascending degree


def trim(p: Sequence) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def deg(p: Sequence) -> int:
    return len(p) - 1


def is_zero(p: Sequence) -> bool:
    return not p


def constant(c) -> Poly:
    return trim([c])


def add(p: Sequence, q: Sequence) -> Poly:
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        a = p[i] if i < len(p) else 0
        b = q[i] if i < len(q) else 0
        out.append(a + b)
    return trim(out)


def neg(p: Sequence) -> Poly:
    return [-c for c in p]


def sub(p: Sequence, q: Sequence) -> Poly:
    return add(p, neg(list(q)))


def scale(p: Sequence, c) -> Poly:
    if c == 0:
        return []
    return trim([a * c for a in p])


def mul(p: Sequence, q: Sequence) -> Poly:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def power(p: Sequence, n: int) -> Poly:
    result = [Fraction(1)]
    base = list(p)
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def shift_var(p: Sequence, k: int) -> Poly:
    """Multiply by x^k."""
    if not p:
        return []
    return [0] * k + list(p)


def divmod_poly(p: Sequence, q: Sequence) -> tuple[Poly, Poly]:
    """Euclidean division over a field; q must be nonzero."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = deg(q)
    lead = q[-1]
    quo = [0] * max(0, len(rem) - dq)
    while len(rem) > dq and rem:
        rem = trim(rem)
        if len(rem) <= dq:
            break
        c = rem[-1] / lead
        k = len(rem) - 1 - dq
        quo[k] = c
        for i in range(len(q)):
            rem[k + i] = rem[k + i] - c * q[i]
        rem.pop()
    return trim(quo), trim(rem)


def pdiv(p: Sequence, q: Sequence) -> Poly:
    quo, rem = divmod_poly(p, q)
    if rem:
        raise ValueError("inexact polynomial division")
    return quo


def pmod(p: Sequence, q: Sequence) -> Poly:
    return divmod_poly(p, q)[1]


def monic(p: Sequence) -> Poly:
    p = trim(p)
    if not p:
        return []
    lead = p[-1]
    if lead == 1:
        return list(p)
    return [c / lead for c in p]


def gcd(p: Sequence, q: Sequence) -> Poly:
    """Monic greatest common divisor over a field."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, pmod(a, b)
    return monic(a)


def xgcd(p: Sequence, q: Sequence) -> tuple[Poly, Poly, Poly]:
    """Extended gcd: returns (g, s, t) with s*p + t*q = g, g monic."""
    a, b = trim(p), trim(q)
    sa, sb = [Fraction(1)], []
    ta, tb = [], [Fraction(1)]
    while b:
        quo, rem = divmod_poly(a, b)
        a, b = b, rem
        sa, sb = sb, sub(sa, mul(quo, sb))
        ta, tb = tb, sub(ta, mul(quo, tb))
    if not a:
        return [], [], []
    lead = a[-1]
    inv = 1 / lead
    return scale(a, inv), scale(sa, inv), scale(ta, inv)


def derivative(p: Sequence) -> Poly:
    return trim([p[i] * i for i in range(1, len(p))])


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(list(p)):
        acc = acc * x + c
    return acc


def compose(p: Sequence, q: Sequence) -> Poly:
    """p(q(x)) by Horner over polynomials."""
    acc: Poly = []
    for c in reversed(list(p)):
        acc = add(mul(acc, q), constant(c) if c != 0 else [])
    return acc


def squarefree_decomposition(p: Sequence) -> list[tuple[Poly, int]]:
    """Yun's algorithm (characteristic zero): p = lc * prod a_i^i.

    Returns [(a_i, i)] for the nonconstant squarefree parts, each monic.
    """
    p = monic(p)
    if deg(p) < 1:
        return []
    dp = derivative(p)
    g = gcd(p, dp)
    c = pdiv(p, g)
    d = sub(pdiv(dp, g), derivative(c))
    out: list[tuple[Poly, int]] = []
    i = 1
    while deg(c) >= 1:
        a = gcd(c, d)
        if deg(a) >= 1:
            out.append((a, i))
        c = pdiv(c, a)
        d = sub(pdiv(d, a), derivative(c))
        i += 1
    return out


def squarefree_part(p: Sequence) -> Poly:
    parts = squarefree_decomposition(p)
    out = [Fraction(1)]
    for a, _ in parts:
        out = mul(out, a)
    return out


def resultant(p: Sequence, q: Sequence):
    """Resultant via the Euclidean remainder sequence over a field."""
    a, b = trim(p), trim(q)
    if not a or not b:
        return Fraction(0)
    sign = 1
    acc = Fraction(1)
    while deg(b) > 0:
        r = pmod(a, b)
        if not r:
            return Fraction(0) if deg(b) > 0 else acc
        if (deg(a) * deg(b)) % 2 == 1:
            sign = -sign
        acc = acc * (b[-1] ** (deg(a) - deg(r)))
        a, b = b, r
    # b is a nonzero constant now
    acc = acc * (b[0] ** deg(a))
    return acc * sign if sign == 1 else -acc


def interpolate(points: Sequence[tuple]) -> Poly:
    """Lagrange interpolation through distinct nodes, Newton form expansion."""
    xs = [x for x, _ in points]
    ys = [y for _, y in points]
    n = len(points)
    # divided differences
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand Newton form
    out: Poly = []
    basis: Poly = [Fraction(1)]
    for j in range(n):
        out = add(out, scale(basis, coef[j]))
        basis = mul(basis, [-xs[j], Fraction(1)])
    return trim(out)


def map_coefficients(p: Sequence, fn: Callable) -> Poly:
    return trim([fn(c) for c in p])


def content_int(p: Sequence[Fraction]) -> Fraction:
    """Positive rational c with p/c primitive integral, sign of lead kept."""
    from math import gcd as igcd, lcm
    p = trim(list(p))
    if not p:
        return Fraction(1)
    den = lcm(*[Fraction(c).denominator for c in p]) if len(p) > 1 else Fraction(p[0]).denominator
    nums = [int(Fraction(c) * den) for c in p]
    g = 0
    for v in nums:
        g = igcd(g, abs(v))
    return Fraction(g, den)


def primitive_int(p: Sequence[Fraction]) -> tuple[list[int], Fraction]:
    """Integer primitive part with positive leading coefficient, plus content."""
    p = trim([Fraction(c) for c in p])
    if not p:
        return [], Fraction(0)
    c = content_int(p)
    ints = [int(v / c) for v in p]
    if ints[-1] < 0:
        ints = [-v for v in ints]
        c = -c
    return ints, c


class RatFunc:
    """Rational function num/den over Q, den monic and gcd-reduced.

    Implements the field operations plus int/Fraction coercion so the
    generic polynomial helpers above work with RatFunc coefficients.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Sequence, den: Sequence = (Fraction(1),)):
        n = trim([Fraction(c) if not isinstance(c, Fraction) else c
                  for c in num])
        d = trim([Fraction(c) if not isinstance(c, Fraction) else c
                  for c in den])
        if not d:
            raise ZeroDivisionError("rational function with zero denominator")
        if not n:
            object.__setattr__(self, "num", [])
            object.__setattr__(self, "den", [Fraction(1)])
            return
        g = gcd(n, d)
        if deg(g) > 0:
            n = pdiv(n, g)
            d = pdiv(d, g)
        lead = d[-1]
        if lead != 1:
            n = [c / lead for c in n]
            d = [c / lead for c in d]
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    def __setattr__(self, *a):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def from_poly(cls, p: Sequence) -> "RatFunc":
        return cls(list(p))

    @property
    def is_zero(self) -> bool:
        return not self.num

    @staticmethod
    def _coerce(x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFunc([Fraction(x)])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(add(mul(self.num, o.den), mul(o.num, self.den)),
                       mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(neg(self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(mul(self.num, o.num), mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(mul(self.num, o.den), mul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((tuple(self.num), tuple(self.den)))

    def __repr__(self):
        if self.den == [Fraction(1)]:
            return f"RatFunc({self.num})"
        return f"RatFunc({self.num}, {self.den})"
