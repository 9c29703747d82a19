"""Number fields Q(a) in power-basis form, with exact factorization.

Rational factorization runs squarefree decomposition, a rational-root pass,
then Berlekamp + Hensel lifting + subset recombination for the hard parts.
Factorization over an extension field reduces to the rational case through
a squarefree norm (resultant computed by evaluation and interpolation).
Everything is exact; a degree cap bounds the work an operation may trigger.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import isqrt
from typing import Callable, Sequence

from . import polyutil as pu
from .errors import DegreeCapExceeded, FieldMismatch, InverseOfZero

DEGREE_CAP = 16


# ---------------------------------------------------------------------------
# arithmetic mod p on integer coefficient lists
# ---------------------------------------------------------------------------

def _fp_trim(f: list[int], p: int) -> list[int]:
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def _fp_mul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return _fp_trim(out, p)


def _fp_sub(f: list[int], g: list[int], p: int) -> list[int]:
    n = max(len(f), len(g))
    return _fp_trim([(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)
                     for i in range(n)], p)


def _fp_divmod(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    g = _fp_trim(g, p)
    rem = [c % p for c in f]
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    quo = [0] * max(0, len(rem) - dg)
    while len(rem) > dg:
        while rem and rem[-1] % p == 0:
            rem.pop()
        if len(rem) <= dg:
            break
        c = (rem[-1] * inv) % p
        k = len(rem) - 1 - dg
        quo[k] = c
        for i in range(len(g)):
            rem[k + i] = (rem[k + i] - c * g[i]) % p
        rem.pop()
    return _fp_trim(quo, p), _fp_trim(rem, p)


def _fp_monic(f: list[int], p: int) -> list[int]:
    f = _fp_trim(f, p)
    if not f or f[-1] == 1:
        return f
    inv = pow(f[-1], -1, p)
    return [(c * inv) % p for c in f]


def _fp_gcd(f: list[int], g: list[int], p: int) -> list[int]:
    a, b = _fp_trim(f, p), _fp_trim(g, p)
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    return _fp_monic(a, p)


def _fp_powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _fp_divmod(base, mod, p)[1] if len(base) > len(mod) - 1 else _fp_trim(base, p)
    while e:
        if e & 1:
            result = _fp_divmod(_fp_mul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = _fp_divmod(_fp_mul(base, base, p), mod, p)[1]
    return result


def _fp_derivative(f: list[int], p: int) -> list[int]:
    return _fp_trim([(f[i] * i) % p for i in range(1, len(f))], p)


def _fp_nullspace(M: list[list[int]], p: int) -> list[list[int]]:
    """Basis of the right nullspace of an n x n matrix mod p."""
    n = len(M)
    A = [row[:] for row in M]
    pivot_col_of_row: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if A[i][c] % p != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [(x * inv) % p for x in A[r]]
        for i in range(n):
            if i != r and A[i][c] % p != 0:
                f = A[i][c]
                A[i] = [(A[i][j] - f * A[r][j]) % p for j in range(n)]
        pivot_col_of_row.append(c)
        r += 1
    pivots = set(pivot_col_of_row)
    basis = []
    for free in range(n):
        if free in pivots:
            continue
        v = [0] * n
        v[free] = 1
        for row, pc in enumerate(pivot_col_of_row):
            v[pc] = (-A[row][free]) % p
        basis.append(v)
    return basis


def _berlekamp(f: list[int], p: int) -> list[list[int]]:
    """Factor a monic squarefree polynomial mod p into monic irreducibles."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    xp = _fp_powmod([0, 1], p, f, p)
    rows = []
    r = [1]
    for _ in range(n):
        rows.append(r + [0] * (n - len(r)))
        r = _fp_divmod(_fp_mul(r, xp, p), f, p)[1]
    # v with v^p = v mod f: v (A - I) = 0, A[j] = coords of x^{jp}
    M = [[(rows[j][i] - (1 if i == j else 0)) % p for j in range(n)]
         for i in range(n)]
    basis = _fp_nullspace(M, p)
    count = len(basis)
    if count == 1:
        return [f]
    factors = {tuple(f)}
    for v in basis:
        vp = _fp_trim(list(v), p)
        if len(vp) <= 1:
            continue
        for s in range(p):
            if len(factors) == count:
                return [list(g) for g in sorted(factors)]
            split = set()
            shifted = _fp_sub(vp, [s], p)
            for g in factors:
                gl = list(g)
                if len(gl) - 1 <= 1:
                    split.add(g)
                    continue
                h = _fp_gcd(gl, shifted, p)
                if 0 < len(h) - 1 < len(gl) - 1:
                    split.add(tuple(h))
                    split.add(tuple(_fp_divmod(gl, h, p)[0]))
                else:
                    split.add(g)
            factors = split
    return [list(g) for g in sorted(factors)]


# ---------------------------------------------------------------------------
# Hensel lifting mod p^k and factor recombination
# ---------------------------------------------------------------------------

def _zn_mul(f: list[int], g: list[int], m: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % m
    while out and out[-1] == 0:
        out.pop()
    return out


def _zn_sub(f: list[int], g: list[int], m: int) -> list[int]:
    n = max(len(f), len(g))
    out = [((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % m
           for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _zn_add(f: list[int], g: list[int], m: int) -> list[int]:
    n = max(len(f), len(g))
    out = [((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % m
           for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _zn_divmod_monic(f: list[int], g: list[int], m: int) -> tuple[list[int], list[int]]:
    """Division by a monic polynomial over Z/m (no inverses needed)."""
    rem = [c % m for c in f]
    dg = len(g) - 1
    quo = [0] * max(0, len(rem) - dg)
    while True:
        while rem and rem[-1] % m == 0:
            rem.pop()
        if len(rem) <= dg:
            break
        c = rem[-1] % m
        k = len(rem) - 1 - dg
        quo[k] = c
        for i in range(len(g)):
            rem[k + i] = (rem[k + i] - c * g[i]) % m
        rem.pop()
    while quo and quo[-1] == 0:
        quo.pop()
    return quo, rem


def _two_factor_lift(f: list[int], g: list[int], h: list[int],
                     p: int, target: int) -> tuple[list[int], list[int]]:
    """Quadratic Hensel step chain: f = g*h mod p lifts to mod target = p^K."""
    ga, gb, gc = _fp_gcd_ext(g, h, p)
    # ga == [1]; gb*g + gc*h = 1 mod p
    s, t = gb, gc
    m = p
    g, h = [c % m for c in g], [c % m for c in h]
    while m < target:
        m2 = m * m
        e = _zn_sub([c % m2 for c in f], _zn_mul(g, h, m2), m2)
        q, r = _zn_divmod_monic(_zn_mul(s, e, m2), h, m2)
        g = _zn_add(_zn_add(g, _zn_mul(t, e, m2), m2), _zn_mul(q, g, m2), m2)
        h = _zn_add(h, r, m2)
        b = _zn_sub(_zn_add(_zn_mul(s, g, m2), _zn_mul(t, h, m2), m2), [1], m2)
        c, d = _zn_divmod_monic(_zn_mul(s, b, m2), h, m2)
        s = _zn_sub(s, d, m2)
        t = _zn_sub(t, _zn_add(_zn_mul(t, b, m2), _zn_mul(c, g, m2), m2), m2)
        m = m2
    return [c % target for c in g], [c % target for c in h]


def _fp_gcd_ext(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int], list[int]]:
    a, b = _fp_trim(f, p), _fp_trim(g, p)
    sa, sb = [1], []
    ta, tb = [], [1]
    while b:
        quo, rem = _fp_divmod(a, b, p)
        a, b = b, rem
        sa, sb = sb, _fp_sub(sa, _fp_mul(quo, sb, p), p)
        ta, tb = tb, _fp_sub(ta, _fp_mul(quo, tb, p), p)
    inv = pow(a[-1], -1, p)
    return ([(c * inv) % p for c in a],
            [(c * inv) % p for c in sa],
            [(c * inv) % p for c in ta])


def _hensel_tree(f: list[int], facs: list[list[int]], p: int,
                 target: int) -> list[list[int]]:
    if len(facs) == 1:
        return [[c % target for c in f]]
    mid = len(facs) // 2
    left, right = facs[:mid], facs[mid:]
    g0, h0 = [1], [1]
    for q in left:
        g0 = _fp_mul(g0, q, p)
    for q in right:
        h0 = _fp_mul(h0, q, p)
    g, h = _two_factor_lift(f, g0, h0, p, target)
    return _hensel_tree(g, left, p, target) + _hensel_tree(h, right, p, target)


def _centered(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c


def _int_divmod_monic(f: list[int], g: list[int]) -> tuple[list[int], list[int]]:
    rem = list(f)
    dg = len(g) - 1
    quo = [0] * max(0, len(rem) - dg)
    while True:
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) <= dg:
            break
        c = rem[-1]
        k = len(rem) - 1 - dg
        quo[k] = c
        for i in range(len(g)):
            rem[k + i] -= c * g[i]
        rem.pop()
    while rem and rem[-1] == 0:
        rem.pop()
    return quo, rem


def _recombine(U: list[int], lifted: list[list[int]], pk: int,
               bound: int) -> list[list[int]]:
    result: list[list[int]] = []
    idx = list(range(len(lifted)))
    current = list(U)
    k = 1
    while 2 * k <= len(idx):
        hit = None
        for S in combinations(idx, k):
            prod = [1]
            for i in S:
                prod = _zn_mul(prod, lifted[i], pk)
            cand = [_centered(c, pk) for c in prod]
            if any(abs(c) > bound for c in cand):
                continue
            quo, rem = _int_divmod_monic(current, cand)
            if not rem:
                hit = (S, cand, quo)
                break
        if hit is None:
            k += 1
            continue
        S, cand, quo = hit
        result.append(cand)
        idx = [i for i in idx if i not in S]
        current = quo
    if len(current) > 1:
        result.append(current)
    return result


def _next_prime(p: int) -> int:
    p += 1
    while True:
        if p > 2 and p % 2 == 0:
            p += 1
            continue
        if all(p % q for q in range(3, isqrt(p) + 1, 2)) and p > 1:
            return p
        p += 1


def _zassenhaus_int(U: list[int]) -> list[list[int]]:
    """Monic squarefree integer polynomial into monic integer irreducibles."""
    n = len(U) - 1
    if n <= 1:
        return [U]
    p = 2
    while True:
        p = _next_prime(p)
        fp = _fp_trim(U, p)
        if len(fp) - 1 != n:
            continue
        if len(_fp_gcd(fp, _fp_derivative(fp, p), p)) == 1:
            break
    facs_p = _berlekamp(_fp_monic(fp, p), p)
    if len(facs_p) == 1:
        return [U]
    norm2 = isqrt(sum(c * c for c in U)) + 1
    bound = (1 << n) * norm2
    target = 2 * bound + 1
    pk = p
    while pk <= target:
        pk *= p
    lifted = _hensel_tree(U, facs_p, p, pk)
    return _recombine(U, lifted, pk, bound)


# ---------------------------------------------------------------------------
# factorization over Q
# ---------------------------------------------------------------------------

_ROOT_PASS_LIMIT = 10 ** 12


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _rational_roots(u: list[int]) -> tuple[list[Fraction], list[int], bool]:
    """Extract rational roots of a primitive integer polynomial.

    Returns (roots with multiplicity 1 each: input assumed squarefree,
    remaining primitive integer cofactor, completed flag).
    """
    roots: list[Fraction] = []
    while u and u[0] == 0:
        roots.append(Fraction(0))
        u = u[1:]
    if len(u) <= 1:
        return roots, u, True
    if abs(u[0]) > _ROOT_PASS_LIMIT or abs(u[-1]) > _ROOT_PASS_LIMIT:
        return roots, u, False
    changed = True
    while changed and len(u) > 1:
        changed = False
        for pn in _divisors(u[0]):
            for qn in _divisors(u[-1]):
                for sign in (1, -1):
                    r = Fraction(sign * pn, qn)
                    if pu.evaluate([Fraction(c) for c in u], r) == 0:
                        quo = pu.pdiv([Fraction(c) for c in u],
                                      [-r, Fraction(1)])
                        u, _ = pu.primitive_int(quo)
                        roots.append(r)
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
    return roots, u, True


def _factor_squarefree_rational(a: list[Fraction],
                                cap: int) -> list[list[Fraction]]:
    """Monic squarefree rational polynomial into monic irreducibles."""
    if pu.deg(a) > cap:
        raise DegreeCapExceeded(
            f"factoring degree {pu.deg(a)} exceeds cap {cap}",
            degree=pu.deg(a), cap=cap)
    if pu.deg(a) <= 1:
        return [pu.monic(a)]
    ints, _ = pu.primitive_int(a)
    roots, rest, complete = _rational_roots(ints)
    out = [[-r, Fraction(1)] for r in sorted(roots)]
    d = len(rest) - 1
    if d >= 1:
        if d == 1 or (complete and d in (2, 3)):
            out.append(pu.monic([Fraction(c) for c in rest]))
        else:
            if rest[-1] != 1:
                b = rest[-1]
                monicized = [rest[i] * b ** (d - 1 - i) for i in range(d + 1)]
                for G in _zassenhaus_int(monicized):
                    mapped = [Fraction(G[i]) * b ** i for i in range(len(G))]
                    out.append(pu.monic(mapped))
            else:
                for G in _zassenhaus_int(rest):
                    out.append([Fraction(c) for c in G])
    out.sort(key=lambda f: (len(f), tuple(f)))
    return out


def factor_rationals(p: Sequence, cap: int = DEGREE_CAP
                     ) -> tuple[Fraction, list[tuple[list[Fraction], int]]]:
    """Full factorization over Q: (unit, [(monic irreducible, multiplicity)])."""
    poly = pu.trim([Fraction(c) if not isinstance(c, Fraction) else c
                    for c in p])
    if not poly:
        raise ValueError("cannot factor the zero polynomial")
    if pu.deg(poly) > cap:
        raise DegreeCapExceeded(
            f"factoring degree {pu.deg(poly)} exceeds cap {cap}",
            degree=pu.deg(poly), cap=cap)
    unit = poly[-1]
    if pu.deg(poly) == 0:
        return unit, []
    factors: list[tuple[list[Fraction], int]] = []
    for part, mult in pu.squarefree_decomposition(poly):
        for irr in _factor_squarefree_rational(part, cap):
            factors.append((irr, mult))
    factors.sort(key=lambda fm: (len(fm[0]), tuple(fm[0]), fm[1]))
    return unit, factors


def is_irreducible_rational(p: Sequence, cap: int = DEGREE_CAP) -> bool:
    if pu.deg(list(p)) < 1:
        return False
    _, facs = factor_rationals(p, cap)
    return len(facs) == 1 and facs[0][1] == 1


# ---------------------------------------------------------------------------
# number fields
# ---------------------------------------------------------------------------

class NumberField:
    """Q[z]/(m(z)) for a monic irreducible m, elements in the power basis."""

    def __init__(self, min_poly: Sequence, name: str = "a",
                 cap: int = DEGREE_CAP, _trusted: bool = False):
        mp = pu.monic([Fraction(c) if not isinstance(c, Fraction) else c
                       for c in min_poly])
        if pu.deg(mp) < 1:
            raise ValueError("minimal polynomial must be nonconstant")
        if pu.deg(mp) > cap:
            raise DegreeCapExceeded(
                f"extension degree {pu.deg(mp)} exceeds cap {cap}",
                degree=pu.deg(mp), cap=cap)
        if not _trusted and not is_irreducible_rational(mp, cap):
            raise ValueError("minimal polynomial is reducible")
        self.min_poly: list[Fraction] = mp
        self.degree: int = pu.deg(mp)
        self.name = name
        # reduction table: z^k mod m for k in [degree, 2*degree-2]
        table = []
        cur = [-c for c in mp[:-1]]  # z^degree
        table.append(list(cur))
        for _ in range(self.degree - 2):
            cur = [Fraction(0)] + cur
            if len(cur) > self.degree:
                top = cur[self.degree]
                cur = [cur[i] + top * table[0][i] for i in range(self.degree)]
            while len(cur) < self.degree:
                cur.append(Fraction(0))
            table.append(list(cur))
        self._reduction = table

    def element(self, coords: Sequence) -> "NFElement":
        c = [Fraction(x) if not isinstance(x, Fraction) else x for x in coords]
        if len(c) > self.degree:
            c = self._reduce(c)
        c = c + [Fraction(0)] * (self.degree - len(c))
        return NFElement(self, tuple(c))

    def _reduce(self, coords: list[Fraction]) -> list[Fraction]:
        out = list(coords[:self.degree])
        out += [Fraction(0)] * (self.degree - len(out))
        for k in range(self.degree, len(coords)):
            c = coords[k]
            if c == 0:
                continue
            row = self._reduction[k - self.degree]
            for i in range(self.degree):
                out[i] += c * row[i]
        return out

    @property
    def gen(self) -> "NFElement":
        return self.element([Fraction(0), Fraction(1)])

    def zero(self) -> "NFElement":
        return self.element([])

    def one(self) -> "NFElement":
        return self.element([Fraction(1)])

    def from_rational(self, q) -> "NFElement":
        return self.element([Fraction(q)])

    def __repr__(self) -> str:
        mp = " + ".join(f"{c}*z^{i}" if i else str(c)
                        for i, c in enumerate(self.min_poly) if c != 0)
        return f"NumberField({self.name}: {mp} = 0)"


class NFElement:
    """Element of a NumberField, coordinates over the power basis."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple[Fraction, ...]):
        self.field = field
        self.coords = coords

    def _match(self, other):
        if isinstance(other, NFElement):
            if other.field is not self.field:
                if other.is_rational():
                    return self.field.from_rational(other.as_fraction())
                if self.is_rational():
                    raise FieldMismatch("elements of different number fields")
                raise FieldMismatch("elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        o = self._match(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, tuple(a + b for a, b
                                           in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._match(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._match(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._match(other)
        if o is None:
            return NotImplemented
        raw = [Fraction(0)] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(o.coords):
                raw[i + j] += a * b
        return NFElement(self.field, tuple(self.field._reduce(raw)))

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        c = pu.trim(list(self.coords))
        if not c:
            raise InverseOfZero("inverse of zero field element")
        g, s, _ = pu.xgcd(c, self.field.min_poly)
        if pu.deg(g) != 0:
            raise InverseOfZero("element is a zero divisor (reducible modulus)")
        inv = pu.scale(s, 1 / g[0])
        return self.field.element(inv)

    def __truediv__(self, other):
        o = self._match(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._match(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == Fraction(other)
        if isinstance(other, NFElement):
            if other.field is self.field:
                return self.coords == other.coords
            return (self.is_rational() and other.is_rational()
                    and self.coords[0] == other.coords[0])
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coords[0])
        return hash((id(self.field), self.coords))

    def __bool__(self) -> bool:
        return any(c != 0 for c in self.coords)

    def __str__(self) -> str:
        name = self.field.name
        parts = []
        for i in range(self.field.degree - 1, -1, -1):
            c = self.coords[i]
            if c == 0:
                continue
            if i == 0:
                body = str(abs(c))
            else:
                var = name if i == 1 else f"{name}^{i}"
                body = var if abs(c) == 1 else f"{abs(c)}*{var}"
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"<{self} in Q({self.field.name})>"


# ---------------------------------------------------------------------------
# factorization over an extension (squarefree-norm method)
# ---------------------------------------------------------------------------

def _coeff_z_polys(g: Sequence[NFElement]) -> list[list[Fraction]]:
    """Each coefficient's power-basis coordinates as a polynomial in z."""
    out = []
    for c in g:
        if isinstance(c, NFElement):
            out.append(pu.trim(list(c.coords)))
        else:
            out.append(pu.trim([Fraction(c)]))
    return out


def _norm_poly(g: Sequence[NFElement], field: NumberField,
               s: int) -> list[Fraction]:
    """Res_z(m(z), g-hat(y - s*z, z)) by sampling y and interpolating."""
    zpolys = _coeff_z_polys(g)
    dy = len(g) - 1
    dn = field.degree * dy
    m = field.min_poly
    points = []
    c = Fraction(0)
    step = 0
    while len(points) < dn + 1:
        # P_c(z) = sum_j A_j(z) * (c - s z)^j
        pz: list[Fraction] = []
        lin = [c, Fraction(-s)]
        linpow: list[Fraction] = [Fraction(1)]
        for j in range(dy + 1):
            if zpolys[j]:
                pz = pu.add(pz, pu.mul(zpolys[j], linpow))
            if j < dy:
                linpow = pu.mul(linpow, lin)
        val = pu.resultant(m, pz) if pz else Fraction(0)
        points.append((c, Fraction(val)))
        step += 1
        c = Fraction((step + 1) // 2 * (1 if step % 2 else -1))
    return pu.interpolate(points)


_SHIFT_SEQUENCE = [1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6]


def _compose_shift(n: Sequence[Fraction], s: int,
                   alpha: NFElement) -> list[NFElement]:
    """N(y + s*alpha) over the field of alpha."""
    field = alpha.field
    shift = [s * alpha, field.one()]
    acc: list = []
    for c in reversed(list(n)):
        acc = pu.mul(acc, shift) if acc else []
        if c != 0:
            acc = pu.add(acc, [field.from_rational(c)])
    return acc


def factor_over_field(g: Sequence, field: NumberField | None,
                      cap: int = DEGREE_CAP
                      ) -> tuple[object, list[tuple[list, int]]]:
    """Factorization into monic irreducibles over Q(alpha) (or Q if field is None)."""
    if field is None or field.degree == 1:
        coeffs = []
        for c in g:
            coeffs.append(c.as_fraction() if isinstance(c, NFElement)
                          else Fraction(c))
        unit, facs = factor_rationals(coeffs, cap)
        if field is not None:
            lift = lambda q: field.from_rational(q)
            return (field.from_rational(unit),
                    [([lift(c) for c in f], m) for f, m in facs])
        return unit, facs
    poly = pu.trim([c if isinstance(c, NFElement) else field.from_rational(c)
                    for c in g])
    if not poly:
        raise ValueError("cannot factor the zero polynomial")
    unit = poly[-1]
    if pu.deg(poly) == 0:
        return unit, []
    if field.degree * pu.deg(poly) > cap:
        raise DegreeCapExceeded(
            f"norm degree {field.degree * pu.deg(poly)} exceeds cap {cap}",
            degree=field.degree * pu.deg(poly), cap=cap)
    factors: list[tuple[list, int]] = []
    for part, mult in pu.squarefree_decomposition(poly):
        for irr in _factor_squarefree_over(part, field, cap):
            factors.append((irr, mult))
    def key(fm):
        f, m = fm
        return (len(f), tuple(tuple(c.coords) for c in f), m)
    factors.sort(key=key)
    return unit, factors


def _factor_squarefree_over(a: list[NFElement], field: NumberField,
                            cap: int) -> list[list[NFElement]]:
    if pu.deg(a) == 1:
        return [pu.monic(a)]
    for s in _SHIFT_SEQUENCE:
        norm = _norm_poly(a, field, s)
        if pu.deg(pu.gcd(norm, pu.derivative(norm))) != 0:
            continue
        _, nfacs = factor_rationals(norm, max(cap, pu.deg(norm)))
        if len(nfacs) == 1:
            return [pu.monic(a)]
        out = []
        total = 0
        for nf, _ in nfacs:
            shifted = _compose_shift(nf, s, field.gen)
            h = pu.gcd(a, shifted)
            if pu.deg(h) >= 1:
                out.append(h)
                total += pu.deg(h)
        if total == pu.deg(a):
            return out
    raise ValueError("no squarefree norm found (shift sequence exhausted)")


def adjoin_root(g: Sequence, field: NumberField | None, name: str = "a",
                cap: int = DEGREE_CAP
                ) -> tuple[NumberField | None, object, Callable]:
    """Extend by a root of an irreducible monic g.

    Returns (new_field, root, embed) where embed maps old-field elements in.
    For degree-1 g no extension happens and embed is the identity.
    """
    if field is not None and field.degree == 1:
        g = [c.as_fraction() if isinstance(c, NFElement) else Fraction(c)
             for c in g]
        field = None
    if field is None:
        gq = pu.monic([Fraction(c) if not isinstance(c, Fraction) else c
                       for c in g])
        if pu.deg(gq) == 1:
            return None, -gq[0], lambda x: x
        # reducible input: a rational root needs no extension, otherwise
        # adjoin a root of the smallest irreducible factor
        _, facs = factor_rationals(gq, cap=max(cap, pu.deg(gq)))
        facs.sort(key=lambda fm: (pu.deg(fm[0]), fm[0]))
        fac = facs[0][0]
        if pu.deg(fac) == 1:
            return None, -fac[0], lambda x: x
        new = NumberField(fac, name, cap=max(cap, pu.deg(fac)), _trusted=True)
        return new, new.gen, lambda q: new.from_rational(q)
    poly = pu.monic([c if isinstance(c, NFElement) else field.from_rational(c)
                     for c in g])
    if pu.deg(poly) == 1:
        return field, -poly[0], lambda x: x
    dn = field.degree * pu.deg(poly)
    if dn > cap:
        raise DegreeCapExceeded(
            f"extension degree {dn} exceeds cap {cap}", degree=dn, cap=cap)
    zpolys = _coeff_z_polys(poly)
    for s in _SHIFT_SEQUENCE:
        norm = _norm_poly(poly, field, s)
        if pu.deg(pu.gcd(norm, pu.derivative(norm))) != 0:
            continue
        new = NumberField(norm, name, cap=max(cap, dn), _trusted=True)
        gamma = new.gen
        # g-hat(gamma - s*z, z) in new_field[z]; gcd with m(z) locates alpha
        lin = [gamma, new.from_rational(-s)]
        acc: list = []
        linpow = [new.one()]
        ghat: list = []
        for j in range(len(zpolys)):
            zj = [new.from_rational(c) for c in zpolys[j]]
            if zj:
                ghat = pu.add(ghat, pu.mul(zj, linpow))
            if j < len(zpolys) - 1:
                linpow = pu.mul(linpow, lin)
        mz = [new.from_rational(c) for c in field.min_poly]
        h = pu.gcd(mz, ghat)
        if pu.deg(h) != 1:
            continue
        alpha_img = -h[0] / h[1]
        beta_img = gamma - s * alpha_img

        def embed(x, _f=field, _img=alpha_img, _new=new):
            if isinstance(x, (int, Fraction)):
                return _new.from_rational(x)
            acc2 = _new.zero()
            p = _new.one()
            for c in x.coords:
                if c != 0:
                    acc2 = acc2 + c * p
                p = p * _img
            return acc2

        return new, beta_img, embed
    raise ValueError("no squarefree norm found (shift sequence exhausted)")
