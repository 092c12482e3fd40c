"""Sparse bivariate polynomials.

A :class:`BiPoly` maps exponent pairs ``(i, j)`` to nonzero coefficients of
``X**i * Y**j``. The two variables are positional; callers attach names
(``x, y`` in the base plane, chart coordinates elsewhere) when printing.

Coefficients are Fractions for everything the family and strata code
touches. Quadratic-field coefficients are accepted by the ring operations
and evaluation so that curves can be translated to irrational points;
gcd, content and square roots require rational coefficients.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

from .scalars import QuadElem, as_fraction, rational_sqrt

Exp = tuple[int, int]


def _coerce_coeff(c):
    if isinstance(c, (Fraction, QuadElem)):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


def _grlex_key(e: Exp):
    return (e[0] + e[1], e[0], e[1])


def _lex_key(e: Exp):
    return (e[0], e[1])


class NotExactError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


class BiPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exp, object] | None = None):
        clean: dict[Exp, object] = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError("negative exponent in polynomial")
                c = _coerce_coeff(c)
                if c != 0:
                    clean[(int(i), int(j))] = c
        self._terms = clean
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def X(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def Y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def coerce(cls, value) -> "BiPoly":
        if isinstance(value, BiPoly):
            return value
        return cls.const(value)

    # inspection -------------------------------------------------------
    @property
    def terms(self) -> dict[Exp, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, i: int, j: int):
        return self._terms.get((i, j), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self._terms)

    def constant_term(self):
        return self._terms.get((0, 0), Fraction(0))

    @property
    def degree(self) -> int:
        return max((i + j for i, j in self._terms), default=-1)

    @property
    def deg_x(self) -> int:
        return max((i for i, _ in self._terms), default=-1)

    @property
    def deg_y(self) -> int:
        return max((j for _, j in self._terms), default=-1)

    def min_degree(self) -> int:
        """Order of vanishing at the origin (lowest total degree present)."""
        return min((i + j for i, j in self._terms), default=-1)

    def homogeneous_part(self, d: int) -> "BiPoly":
        return BiPoly({e: c for e, c in self._terms.items() if e[0] + e[1] == d})

    def leading_exp(self, order: str = "grlex") -> Exp:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        key = _grlex_key if order == "grlex" else _lex_key
        return max(self._terms, key=key)

    def leading_coeff(self, order: str = "grlex"):
        return self._terms[self.leading_exp(order)]

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) or (isinstance(c, QuadElem) and c.b == 0)
                   for c in self._terms.values())

    # ring operations --------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, BiPoly):
            if isinstance(other, (int, Fraction, QuadElem)):
                other = BiPoly.const(other)
            else:
                return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, BiPoly):
            if isinstance(other, (int, Fraction, QuadElem)):
                other = BiPoly.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return BiPoly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            if isinstance(other, (int, Fraction, QuadElem)):
                if other == 0:
                    return BiPoly()
                return BiPoly({e: c * other for e, c in self._terms.items()})
            return NotImplemented
        out: dict[Exp, object] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                e = (i1 + i2, j1 + j2)
                out[e] = out.get(e, 0) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = BiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, QuadElem)):
            return self._terms == BiPoly.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # evaluation and substitution -------------------------------------
    def __call__(self, x, y):
        return self.eval(x, y)

    def eval(self, x, y):
        """Evaluate at scalars (or any ring elements supporting + and *)."""
        total = Fraction(0)
        xp: dict[int, object] = {0: 1}
        yp: dict[int, object] = {0: 1}
        for i, j in sorted(self._terms):
            if i not in xp:
                xp[i] = x ** i
            if j not in yp:
                yp[j] = y ** j
        for (i, j), c in self._terms.items():
            total = total + c * xp[i] * yp[j]
        return total

    def eval_x(self, x) -> "BiPoly":
        """Substitute a scalar for X, leaving a polynomial in Y (stored as X**0 Y**j)."""
        out: dict[Exp, object] = {}
        for (i, j), c in self._terms.items():
            out[(0, j)] = out.get((0, j), 0) + c * (x ** i)
        return BiPoly(out)

    def eval_y(self, y) -> "BiPoly":
        out: dict[Exp, object] = {}
        for (i, j), c in self._terms.items():
            out[(i, 0)] = out.get((i, 0), 0) + c * (y ** j)
        return BiPoly(out)

    def compose(self, px: "BiPoly", py: "BiPoly") -> "BiPoly":
        """Polynomial substitution X -> px, Y -> py."""
        result = BiPoly()
        xpow: dict[int, BiPoly] = {}
        ypow: dict[int, BiPoly] = {}
        for (i, j), c in self._terms.items():
            if i not in xpow:
                xpow[i] = px ** i
            if j not in ypow:
                ypow[j] = py ** j
            result = result + xpow[i] * ypow[j] * c
        return result

    def translate(self, a, b) -> "BiPoly":
        """p(X + a, Y + b)."""
        return self.compose(BiPoly.X() + a, BiPoly.Y() + b)

    def swap(self) -> "BiPoly":
        return BiPoly({(j, i): c for (i, j), c in self._terms.items()})

    def diff_x(self) -> "BiPoly":
        return BiPoly({(i - 1, j): c * i for (i, j), c in self._terms.items() if i > 0})

    def diff_y(self) -> "BiPoly":
        return BiPoly({(i, j - 1): c * j for (i, j), c in self._terms.items() if j > 0})

    def divide_by_monomial(self, i: int, j: int) -> "BiPoly":
        out = {}
        for (a, b), c in self._terms.items():
            if a < i or b < j:
                raise NotExactError(f"monomial X^{i} Y^{j} does not divide polynomial")
            out[(a - i, b - j)] = c
        return BiPoly(out)

    # univariate views -------------------------------------------------
    def coeffs_in_x(self) -> dict[int, "BiPoly"]:
        """{i: coefficient of X**i as a polynomial in Y}."""
        out: dict[int, dict[Exp, object]] = {}
        for (i, j), c in self._terms.items():
            out.setdefault(i, {})[(0, j)] = c
        return {i: BiPoly(t) for i, t in out.items()}

    @classmethod
    def from_x_coeffs(cls, coeffs: Mapping[int, "BiPoly"]) -> "BiPoly":
        out: dict[Exp, object] = {}
        for i, p in coeffs.items():
            for (_, j), c in p._terms.items():
                out[(i, j)] = c
        return cls(out)

    def y_coeff_list(self) -> list:
        """Dense coefficient list of a polynomial in Y alone."""
        if any(i for i, _ in self._terms):
            raise ValueError("polynomial depends on X")
        out = [Fraction(0)] * (self.deg_y + 1)
        for (_, j), c in self._terms.items():
            out[j] = c
        return out

    @classmethod
    def from_y_coeff_list(cls, cs) -> "BiPoly":
        return cls({(0, j): c for j, c in enumerate(cs)})

    def x_coeff_list(self) -> list:
        if any(j for _, j in self._terms):
            raise ValueError("polynomial depends on Y")
        out = [Fraction(0)] * (self.deg_x + 1)
        for (i, _), c in self._terms.items():
            out[i] = c
        return out

    # exact division ---------------------------------------------------
    def divmod_lex(self, other: "BiPoly") -> tuple["BiPoly", "BiPoly"]:
        """Multivariate division in lex order (X > Y): self = q*other + r."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lt = other.leading_exp("lex")
        lc = other._terms[lt]
        q: dict[Exp, object] = {}
        r: dict[Exp, object] = {}
        p = self
        while not p.is_zero():
            e = p.leading_exp("lex")
            c = p._terms[e]
            if e[0] >= lt[0] and e[1] >= lt[1]:
                m = (e[0] - lt[0], e[1] - lt[1])
                f = c / lc
                q[m] = q.get(m, 0) + f
                p = p - BiPoly({m: f}) * other
            else:
                r[e] = c
                p = p - BiPoly({e: c})
        return BiPoly(q), BiPoly(r)

    def exact_div(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other)
        q, r = self.divmod_lex(other)
        if not r.is_zero():
            raise NotExactError("polynomial division is not exact")
        return q

    def divides(self, other: "BiPoly") -> bool:
        return self.divmod_lex_safe(other)

    def divmod_lex_safe(self, other: "BiPoly") -> bool:
        _, r = other.divmod_lex(self)
        return r.is_zero()

    # content / gcd (rational coefficients) ----------------------------
    def integer_normalized(self) -> tuple[Fraction, "BiPoly"]:
        """Return (c, p) with self = c*p, p integral, primitive, grlex-leading coefficient > 0."""
        if self.is_zero():
            return Fraction(0), BiPoly()
        cs = [as_fraction(c) for c in self._terms.values()]
        den = 1
        for c in cs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = 0
        for c in cs:
            num = math.gcd(num, int(c * den))
        content = Fraction(num, den)
        if self.leading_coeff() < 0:
            content = -content
        return content, BiPoly({e: as_fraction(c) / content for e, c in self._terms.items()})

    def primitive(self) -> "BiPoly":
        return self.integer_normalized()[1]

    def monic(self, order: str = "grlex") -> "BiPoly":
        lc = self.leading_coeff(order)
        return BiPoly({e: c / lc for e, c in self._terms.items()})

    # printing ---------------------------------------------------------
    def to_str(self, names: tuple[str, str] = ("x", "y")) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, key=_grlex_key, reverse=True):
            c = self._terms[e]
            mono = _mono_str(e, names)
            if isinstance(c, QuadElem) and not c.is_rational():
                body = f"({c})" + (f"*{mono}" if mono else "")
                parts.append(("+", body))
                continue
            c = as_fraction(c) if not isinstance(c, QuadElem) else c.a
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append(("-" if c < 0 else "+", body))
        s, b = parts[0]
        out = ("-" if s == "-" else "") + b
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"BiPoly({self.to_str()})"


def _mono_str(e: Exp, names) -> str:
    out = []
    for k, n in zip(e, names):
        if k == 1:
            out.append(n)
        elif k > 1:
            out.append(f"{n}^{k}")
    return "*".join(out)


X = BiPoly.X()
Y = BiPoly.Y()


def poly(terms: Mapping[Exp, object] | Iterable) -> BiPoly:
    return BiPoly(dict(terms))


# --- univariate helpers on Y-only polynomials --------------------------

def _ygcd(a: BiPoly, b: BiPoly) -> BiPoly:
    """Monic gcd of two polynomials in Y alone over Q."""
    from .unipoly import UniPoly

    ua = UniPoly(a.y_coeff_list(), "y")
    ub = UniPoly(b.y_coeff_list(), "y")
    g = UniPoly.gcd(ua, ub)
    return BiPoly.from_y_coeff_list(g.coeffs)


def _content_in_x(p: BiPoly) -> BiPoly:
    g = BiPoly()
    for c in p.coeffs_in_x().values():
        g = c if g.is_zero() else _ygcd(g, c)
        if g.is_constant():
            return BiPoly.const(1)
    return g


def _pp_in_x(p: BiPoly) -> BiPoly:
    c = _content_in_x(p)
    return p.exact_div(c)


def gcd(a: BiPoly, b: BiPoly) -> BiPoly:
    """Greatest common divisor over Q, normalized integral-primitive with positive grlex-leading coefficient."""
    a = BiPoly.coerce(a)
    b = BiPoly.coerce(b)
    if not (a.is_rational() and b.is_rational()):
        raise TypeError("bivariate gcd requires rational coefficients")
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    ca, cb = _content_in_x(a), _content_in_x(b)
    cont = _ygcd(ca, cb)
    pa, pb = a.exact_div(ca), b.exact_div(cb)
    if pa.deg_x < pb.deg_x:
        pa, pb = pb, pa
    # primitive polynomial remainder sequence in X over Q[Y]
    while not pb.is_zero():
        if pb.deg_x == 0:
            pa = BiPoly.const(1)
            break
        r = _prem_x(pa, pb)
        pa, pb = pb, (_pp_in_x(r) if not r.is_zero() else r)
    return (cont * pa).primitive()


def _prem_x(a: BiPoly, b: BiPoly) -> BiPoly:
    db = b.deg_x
    lb = b.coeffs_in_x()[db]
    r = a
    while not r.is_zero() and r.deg_x >= db:
        dr = r.deg_x
        lr = r.coeffs_in_x()[dr]
        r = r * lb - BiPoly({(dr - db, 0): 1}) * lr * b
    return r


# --- square roots -------------------------------------------------------

def _sqrt_y(p: BiPoly):
    """Square root of a polynomial in Y alone over Q, or None."""
    cs = [as_fraction(c) for c in p.y_coeff_list()]
    n = len(cs) - 1
    if n % 2:
        return None
    m = n // 2
    top = rational_sqrt(cs[n])
    if top is None:
        return None
    q: dict[int, Fraction] = {m: top}
    for k in range(1, m + 1):
        target = n - k
        acc = cs[target]
        for i, qi in q.items():
            j = target - i
            if j in q and i != m and j != m:
                acc -= qi * q[j]
        q[m - k] = acc / (2 * top)
    q = [q[i] for i in range(m + 1)]
    root = BiPoly.from_y_coeff_list(q)
    return root if root * root == p else None


def sqrt_poly(p: BiPoly):
    """Exact square root of a rational bivariate polynomial.

    The polynomial is read as univariate in X over Q[Y]. The leading
    coefficient must be a square in Q[Y]; each lower coefficient of the
    root is then forced by an exact division by twice that leading root.
    Returns the root normalized to a positive grlex-leading coefficient, or
    ``None`` when ``p`` is not a perfect square.
    """
    if p.is_zero():
        raise ValueError("sqrt_poly requires a nonzero polynomial")
    if not p.is_rational():
        raise TypeError("sqrt_poly requires rational coefficients")
    rows = p.coeffs_in_x()
    n = p.deg_x
    if n % 2:
        return None
    m = n // 2
    lead = _sqrt_y(rows[n])
    if lead is None:
        return None
    two_lead = lead * 2
    q: dict[int, BiPoly] = {m: lead}
    for k in range(1, m + 1):
        target = n - k
        acc = rows.get(target, BiPoly())
        for i, qi in q.items():
            jdeg = target - i
            if jdeg in q and jdeg != m and i != m:
                acc = acc - qi * q[jdeg]
        quo, rem = acc.divmod_lex(two_lead)
        if not rem.is_zero():
            return None
        q[m - k] = quo
    root = BiPoly.from_x_coeffs(q)
    if root * root != p:
        return None
    if root.leading_coeff() < 0:
        root = -root
    return root
