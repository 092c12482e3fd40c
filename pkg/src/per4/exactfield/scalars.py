"""Exact scalars: rationals, the point at infinity, and quadratic extensions of Q.

Rationals are plain :class:`fractions.Fraction` values. Elements of
Q[a]/(a^2 + c1*a + c0) are :class:`QuadElem` instances tied to a
:class:`QuadraticField`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class Infinity:
    """The point at infinity of the projective line (singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()


class FieldMismatchError(TypeError):
    """Arithmetic between elements of different quadratic fields."""


def is_inf(value) -> bool:
    return value is INF


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {value!r} to an exact rational")


def parse_scalar(text: str):
    """Parse ``"3"``, ``"-1/2"`` or ``"inf"`` into a Fraction or INF."""
    token = text.strip()
    if token.lower() in ("inf", "infinity", "∞", "oo"):
        return INF
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number or 'inf': {text!r}") from exc


def format_scalar(value) -> str:
    if value is INF:
        return "inf"
    return str(value)


def rational_sqrt(q: Fraction):
    """Exact square root of a nonnegative rational, or None."""
    q = as_fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def squarefree_decomposition(q: Fraction) -> tuple[int, Fraction]:
    """(D, k) with q = k^2 * D, D a squarefree integer and k > 0 rational."""
    q = as_fraction(q)
    if q == 0:
        return 0, Fraction(0)
    n = q.numerator * q.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    D = 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
        if n % p == 0:
            n //= p
            D *= p
        p += 1
    D *= n
    D *= sign
    k = rational_sqrt(q / D)
    assert k is not None
    return D, k


def canonical_scalar(v):
    """Hashable, presentation-independent form of a Fraction, QuadElem or INF."""
    if v is INF:
        return ("inf",)
    if isinstance(v, QuadElem):
        a, b, D = v.canonical()
        return (a,) if b == 0 else (a, b, D)
    return (as_fraction(v),)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for k in range(1, math.isqrt(n) + 1):
        if n % k == 0:
            small.append(k)
            if k != n // k:
                large.append(n // k)
    return small + large[::-1]


def rational_roots(coeffs) -> list[Fraction]:
    """Distinct rational roots of sum(coeffs[i] * t**i) by the rational root test."""
    cs = [as_fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) <= 1:
        return []
    lcm = 1
    for c in cs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in cs]
    roots: set[Fraction] = set()
    while ints and ints[0] == 0:
        roots.add(Fraction(0))
        ints = ints[1:]
    if len(ints) > 1:
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if _horner(ints, cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def _horner(coeffs, t):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


class QuadraticField:
    """Q[a]/(a^2 + c1*a + c0) for an irreducible monic quadratic."""

    __slots__ = ("c0", "c1", "name")

    def __init__(self, minpoly, name: str = "a"):
        cs = [as_fraction(c) for c in minpoly]
        if len(cs) != 3 or cs[2] == 0:
            raise ValueError("minimal polynomial must have degree exactly 2")
        if cs[2] != 1:
            raise ValueError("minimal polynomial must be monic")
        if rational_roots(cs):
            raise ValueError(
                f"polynomial {cs} has a rational root; it does not define a field extension"
            )
        self.c0, self.c1 = cs[0], cs[1]
        self.name = name

    @property
    def minpoly(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.c0, self.c1, Fraction(1))

    @property
    def discriminant(self) -> Fraction:
        return self.c1 * self.c1 - 4 * self.c0

    def is_real(self) -> bool:
        return self.discriminant > 0

    def __call__(self, a=0, b=0) -> "QuadElem":
        return QuadElem(as_fraction(a), as_fraction(b), self)

    @property
    def gen(self) -> "QuadElem":
        return self(0, 1)

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and (self.c0, self.c1) == (other.c0, other.c1)

    def __hash__(self):
        return hash((self.c0, self.c1))

    def __repr__(self):
        return f"QuadraticField({minpoly_str(self.minpoly, self.name)})"


class QuadElem:
    """a + b*alpha in a quadratic field; immutable."""

    __slots__ = ("a", "b", "field")

    def __init__(self, a: Fraction, b: Fraction, field: QuadraticField):
        self.a = a
        self.b = b
        self.field = field

    def _lift(self, other):
        if isinstance(other, QuadElem):
            if other.field != self.field:
                raise FieldMismatchError("elements of different quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(Fraction(other), Fraction(0), self.field)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.field)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.a - o.a, self.b - o.b, self.field)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        f = self.field
        bd = self.b * o.b
        return QuadElem(self.a * o.a - bd * f.c0, self.a * o.b + self.b * o.a - bd * f.c1, f)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadElem":
        # the other root of the minimal polynomial is -c1 - alpha
        return QuadElem(self.a - self.b * self.field.c1, -self.b, self.field)

    def norm(self) -> Fraction:
        n = self * self.conjugate()
        assert n.b == 0
        return n.a

    def trace(self) -> Fraction:
        t = self + self.conjugate()
        return t.a

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        c = self.conjugate()
        return QuadElem(c.a / n, c.b / n, self.field)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadElem(Fraction(1), Fraction(0), self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return self.field == other.field and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.field))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def canonical(self) -> tuple:
        """(a', b', D) with self = a' + b'*sqrt(D), D a squarefree integer.

        alpha is sent to (-c1 + sqrt(disc))/2; this is a field isomorphism, so
        points computed in different presentations of the same field compare equal.
        """
        if self.b == 0:
            return (self.a, Fraction(0), 1)
        f = self.field
        disc = f.discriminant
        D, k = squarefree_decomposition(disc)
        # alpha = -c1/2 + (k/2) sqrt(D)
        return (self.a - self.b * f.c1 / 2, self.b * k / 2, D)

    def sqrt(self):
        """A square root inside the same field, or None."""
        if self == 0:
            return self
        n = self.norm()
        tr = self.trace()
        for nn in (rational_sqrt(n), None if rational_sqrt(n) is None else -rational_sqrt(n)):
            if nn is None:
                continue
            t = rational_sqrt(tr + 2 * nn)
            if t is not None and t != 0:
                s = (self + nn) / t
                if s * s == self:
                    return s
        # trace-zero roots: s = c * (2*alpha + c1) with s^2 = c^2 * disc
        if self.b == 0:
            c = rational_sqrt(self.a / self.field.discriminant)
            if c is not None:
                s = QuadElem(c * self.field.c1, 2 * c, self.field)
                if s * s == self:
                    return s
        return None

    def numeric(self) -> complex:
        """Approximate value, taking alpha = (-c1 + sqrt(disc)) / 2."""
        f = self.field
        disc = float(f.discriminant)
        root = math.sqrt(disc) if disc >= 0 else 1j * math.sqrt(-disc)
        alpha = (-float(f.c1) + root) / 2
        return float(self.a) + float(self.b) * alpha

    def __repr__(self):
        return f"QuadElem({self.a}, {self.b}, {self.field!r})"

    def __str__(self):
        n = self.field.name
        if self.b == 0:
            return str(self.a)
        bpart = n if self.b == 1 else f"-{n}" if self.b == -1 else f"{self.b}*{n}"
        if self.a == 0:
            return bpart
        if self.a < 0:
            return f"{bpart} - {-self.a}"
        return f"{bpart} + {self.a}"


Scalar = Union[Fraction, QuadElem]


def minpoly_str(coeffs, var: str = "x") -> str:
    """Render a univariate rational polynomial (low-to-high coefficients)."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = as_fraction(coeffs[i])
        if c == 0:
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


@dataclass(frozen=True)
class QuadraticRoots:
    """Both roots of a quadratic over Q together with its discriminant."""

    minpoly: tuple[Fraction, ...]
    discriminant: Fraction
    roots: tuple
    rational: bool

    @property
    def real(self) -> bool:
        return self.discriminant >= 0

    @property
    def distinct(self) -> bool:
        return self.discriminant != 0


def solve_quadratic(coeffs, name: str = "a") -> QuadraticRoots:
    """Roots of c0 + c1*t + c2*t^2 with c2 != 0.

    Rational roots are returned as Fractions; otherwise both roots live in
    Q[a]/(monic minimal polynomial) as ``a`` and its conjugate.
    """
    c0, c1, c2 = (as_fraction(c) for c in coeffs)
    if c2 == 0:
        raise ValueError("leading coefficient vanishes; not a quadratic")
    disc = c1 * c1 - 4 * c2 * c0
    monic = (c0 / c2, c1 / c2, Fraction(1))
    s = rational_sqrt(disc)
    if s is not None:
        r1 = (-c1 - s) / (2 * c2)
        r2 = (-c1 + s) / (2 * c2)
        return QuadraticRoots(monic, disc, tuple(sorted({r1, r2})) if s == 0 else (r1, r2), True)
    field = QuadraticField(monic, name)
    alpha = field.gen
    return QuadraticRoots(monic, disc, (alpha, alpha.conjugate()), False)
