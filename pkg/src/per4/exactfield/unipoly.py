"""Dense univariate polynomials over an exact coefficient field or ring.

Coefficients may be Fractions, quadratic-field elements, :class:`RatExpr`
values, or (for resultants only) :class:`BiPoly` ring elements.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import QuadElem, rational_roots, solve_quadratic


class VariableMismatchError(TypeError):
    pass


def _is_zero(c) -> bool:
    return c == 0


def _zero_like(c):
    return c * 0 if not isinstance(c, int) else Fraction(0)


def _one_like(c):
    if isinstance(c, int):
        return Fraction(1)
    return c * 0 + 1


def _exact_div(a, b):
    # ring elements with exact division (BiPoly) versus field elements
    if hasattr(a, "exact_div"):
        return a.exact_div(b)
    return a / b


class UniPoly:
    """sum(coeffs[i] * var**i), with no trailing zero coefficients."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs, var: str = "t"):
        cs = [Fraction(c) if isinstance(c, int) else c for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def monomial(cls, n: int, c=1, var: str = "t") -> "UniPoly":
        return cls([0] * n + [c], var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def _check(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return UniPoly([other], self.var)
        if other.var != self.var and other.coeffs and self.coeffs:
            if other.degree > 0 and self.degree > 0:
                raise VariableMismatchError(f"polynomials in {self.var} and {other.var}")
        return other

    def __add__(self, other):
        o = self._check(other)
        n = max(len(self.coeffs), len(o.coeffs))
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else None
            b = o.coeffs[i] if i < len(o.coeffs) else None
            out.append(b if a is None else a if b is None else a + b)
        return UniPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        o = self._check(other)
        if not self.coeffs or not o.coeffs:
            return UniPoly([], self.var)
        out = [None] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o.coeffs):
                t = a * b
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = UniPoly([1], self.var)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.var))

    def __call__(self, t):
        return self.eval(t)

    def eval(self, t):
        if not self.coeffs:
            return Fraction(0)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * t + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly([c * i for i, c in enumerate(self.coeffs)][1:], self.var)

    def map_coeffs(self, fn) -> "UniPoly":
        return UniPoly([fn(c) for c in self.coeffs], self.var)

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Euclidean division over a field: self = q*other + r, deg r < deg other."""
        o = self._check(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.coeffs)
        q = [None] * max(len(r) - len(o.coeffs) + 1, 0)
        lc = o.lc
        while len(r) >= len(o.coeffs) and r:
            shift = len(r) - len(o.coeffs)
            f = r[-1] / lc
            q[shift] = f
            for i, c in enumerate(o.coeffs):
                r[i + shift] = r[i + shift] - f * c
            r.pop()
            while r and _is_zero(r[-1]):
                r.pop()
        q = [c if c is not None else _zero_like(lc) for c in q]
        return UniPoly(q, self.var), UniPoly(r, self.var)

    __divmod__ = divmod

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lc = self.lc
        return UniPoly([c / lc for c in self.coeffs], self.var)

    @staticmethod
    def gcd(a: "UniPoly", b: "UniPoly") -> "UniPoly":
        """Monic gcd over a field; gcd(0, 0) raises."""
        if a.is_zero() and b.is_zero():
            raise ValueError("gcd(0, 0) is undefined")
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def squarefree_part(self) -> "UniPoly":
        g = UniPoly.gcd(self, self.derivative()) if self.degree > 0 else UniPoly([1], self.var)
        return self.divmod(g)[0].monic()

    def root_multiplicity(self, root) -> int:
        p, k = self, 0
        lin = UniPoly([-root, 1], self.var)
        while not p.is_zero():
            q, r = p.divmod(lin)
            if not r.is_zero():
                break
            p, k = q, k + 1
        return k

    def to_str(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if _is_zero(c):
                continue
            mono = "" if i == 0 else self.var if i == 1 else f"{self.var}^{i}"
            cs = str(c)
            if mono:
                if cs == "1":
                    parts.append(mono)
                elif cs == "-1":
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"({cs})*{mono}")
            else:
                parts.append(f"({cs})" if " " in cs else cs)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"UniPoly({self.to_str()})"


def sylvester_matrix(p: UniPoly, q: UniPoly) -> list[list]:
    m, n = p.degree, q.degree
    size = m + n
    zero = _zero_like(p.lc)
    rows = []
    for k in range(n):
        row = [zero] * size
        for i, c in enumerate(reversed(p.coeffs)):
            row[k + i] = c
        rows.append(row)
    for k in range(m):
        row = [zero] * size
        for i, c in enumerate(reversed(q.coeffs)):
            row[k + i] = c
        rows.append(row)
    return rows


def bareiss_det(mat: list[list]):
    """Fraction-free determinant; needs only exact division in the coefficient ring."""
    n = len(mat)
    if n == 0:
        return Fraction(1)
    a = [list(r) for r in mat]
    sign = 1
    prev = _one_like(a[0][0])
    for k in range(n - 1):
        if _is_zero(a[k][k]):
            swap = next((i for i in range(k + 1, n) if not _is_zero(a[i][k])), None)
            if swap is None:
                return _zero_like(a[0][0])
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = _exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(p: UniPoly, q: UniPoly, var: str | None = None):
    """Determinant of the Sylvester matrix of p and q in their common variable."""
    if var is not None and (p.var != var or q.var != var):
        raise VariableMismatchError(f"expected polynomials in {var}")
    if p.is_zero() and q.is_zero():
        raise ValueError("resultant of two zero polynomials is undefined")
    if p.is_zero() or q.is_zero():
        nz = q if p.is_zero() else p
        return _one_like(nz.lc) if nz.degree == 0 else _zero_like(nz.lc)
    if p.degree == 0 and q.degree == 0:
        return _one_like(p.lc)
    return bareiss_det(sylvester_matrix(p, q))


class RootsUnavailable(ArithmeticError):
    """A polynomial has an irreducible factor of degree > 2 over Q."""


def exact_roots(p: UniPoly) -> list[tuple[object, int]]:
    """All roots of a rational polynomial with multiplicities.

    Roots are Fractions or quadratic-field elements. Raises
    :class:`RootsUnavailable` when a factor of degree > 2 remains after
    removing rational roots.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has every root")
    if any(isinstance(c, QuadElem) and not c.is_rational() for c in p.coeffs):
        return roots_in_field(p)
    p = UniPoly([c.a if isinstance(c, QuadElem) else c for c in p.coeffs], p.var)
    out: list[tuple[object, int]] = []
    rest = p
    for r in rational_roots(p.coeffs):
        k = p.root_multiplicity(r)
        out.append((r, k))
        for _ in range(k):
            rest = rest.divmod(UniPoly([-r, 1], p.var))[0]
    if rest.degree <= 0:
        return out
    sf = rest.squarefree_part()
    if sf.degree > 2:
        raise RootsUnavailable(
            f"factor {sf.to_str()} of degree {sf.degree} has no rational or quadratic roots here"
        )
    if sf.degree == 2:
        qr = solve_quadratic(sf.coeffs)
        mult = rest.degree // 2
        out.extend((r, mult) for r in qr.roots)
    return out


def roots_in_field(p: UniPoly) -> list[tuple[object, int]]:
    """Roots lying in the quadratic field of the coefficients."""
    sf = p.squarefree_part()
    if sf.degree == 0:
        return []
    if sf.degree == 1:
        r = -sf.coeffs[0] / sf.coeffs[1]
        return [(r, p.root_multiplicity(r))]
    if sf.degree == 2:
        c0, c1, _ = sf.coeffs
        disc = c1 * c1 - 4 * c0
        s = disc.sqrt() if isinstance(disc, QuadElem) else None
        if s is not None:
            roots = [(-c1 + s) / 2, (-c1 - s) / 2]
            return [(r, p.root_multiplicity(r)) for r in roots]
    raise RootsUnavailable("roots over a quadratic field would need a degree-4 extension")
