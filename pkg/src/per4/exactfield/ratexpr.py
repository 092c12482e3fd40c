"""Rational functions of two variables over Q in canonical form."""

from __future__ import annotations

from fractions import Fraction

from .bipoly import BiPoly, gcd
from .scalars import INF, as_fraction


class PoleError(ZeroDivisionError):
    """Evaluation where the denominator vanishes and the numerator does not."""


class IndeterminateError(ArithmeticError):
    """Evaluation where numerator and denominator both vanish."""


class RatExpr:
    """num/den with gcd(num, den) = 1 and den integral, primitive, grlex-leading coefficient > 0.

    Under this normalization two rational functions are equal iff their
    numerator and denominator maps agree.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _normalized: bool = False):
        num = BiPoly.coerce(num)
        den = BiPoly.const(1) if den is None else BiPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @classmethod
    def X(cls) -> "RatExpr":
        return cls(BiPoly.X(), _normalized=True)

    @classmethod
    def Y(cls) -> "RatExpr":
        return cls(BiPoly.Y(), _normalized=True)

    @classmethod
    def coerce(cls, value) -> "RatExpr":
        if isinstance(value, RatExpr):
            return value
        return cls(value)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == 1

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        return as_fraction(self.num.constant_term()) / as_fraction(self.den.constant_term())

    def _lift(self, other):
        if isinstance(other, RatExpr):
            return other
        if isinstance(other, (int, Fraction, BiPoly)):
            return RatExpr(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatExpr(self.num + o.num, self.den)
        return RatExpr(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatExpr(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatExpr(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatExpr":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatExpr(self.den, self.num)

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
        return RatExpr(self.num ** n, self.den ** n, _normalized=True)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    # evaluation -------------------------------------------------------
    def eval(self, x, y):
        """Value at a finite point: scalar, INF at a pole, IndeterminateError at 0/0."""
        n = self.num.eval(x, y)
        d = self.den.eval(x, y)
        if d == 0:
            if n == 0:
                raise IndeterminateError("numerator and denominator both vanish")
            return INF
        return n / d

    __call__ = eval

    def subs(self, sx: "RatExpr", sy: "RatExpr") -> "RatExpr":
        """Compose with a rational change of variables X -> sx, Y -> sy."""
        sx, sy = RatExpr.coerce(sx), RatExpr.coerce(sy)
        dx = max(self.num.deg_x, self.den.deg_x, 0)
        dy = max(self.num.deg_y, self.den.deg_y, 0)
        return RatExpr(
            _homog_subs(self.num, sx, sy, dx, dy), _homog_subs(self.den, sx, sy, dx, dy)
        )

    def restrict_x(self, value) -> "RatExpr":
        """Set X = value (the result is a function of Y alone), requiring no pole there."""
        d = self.den.eval_x(value)
        if d.is_zero():
            n = self.num.eval_x(value)
            if n.is_zero():
                raise IndeterminateError("numerator and denominator vanish identically on the line")
            raise PoleError("denominator vanishes identically on the line")
        return RatExpr(self.num.eval_x(value), d)

    def restrict_y(self, value) -> "RatExpr":
        d = self.den.eval_y(value)
        if d.is_zero():
            n = self.num.eval_y(value)
            if n.is_zero():
                raise IndeterminateError("numerator and denominator vanish identically on the line")
            raise PoleError("denominator vanishes identically on the line")
        return RatExpr(self.num.eval_y(value), d)

    def swap(self) -> "RatExpr":
        return RatExpr(self.num.swap(), self.den.swap())

    def to_str(self, names: tuple[str, str] = ("x", "y")) -> str:
        n = self.num.to_str(names)
        if self.den == 1:
            return n
        d = self.den.to_str(names)
        if len(self.num.terms) > 1:
            n = f"({n})"
        if len(self.den.terms) > 1 or any(ch in d for ch in "*^"):
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RatExpr({self.to_str()})"


def _normalize(num: BiPoly, den: BiPoly) -> tuple[BiPoly, BiPoly]:
    if num.is_zero():
        return BiPoly(), BiPoly.const(1)
    if not (num.is_constant() and den.is_constant()):
        g = gcd(num, den)
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
    c, den = den.integer_normalized()
    num = num * (Fraction(1) / c)
    return num, den


def _homog_subs(p: BiPoly, sx: RatExpr, sy: RatExpr, dx: int, dy: int) -> BiPoly:
    # p(a/b, c/d) * b^dx * d^dy as a polynomial
    a, b, c, d = sx.num, sx.den, sy.num, sy.den
    apow = [BiPoly.const(1)]
    bpow = [BiPoly.const(1)]
    cpow = [BiPoly.const(1)]
    dpow = [BiPoly.const(1)]
    for _ in range(dx):
        apow.append(apow[-1] * a)
        bpow.append(bpow[-1] * b)
    for _ in range(dy):
        cpow.append(cpow[-1] * c)
        dpow.append(dpow[-1] * d)
    out = BiPoly()
    for (i, j), coeff in p.items():
        out = out + apow[i] * bpow[dx - i] * cpow[j] * dpow[dy - j] * coeff
    return out


def ratexpr_from_univariate(num_coeffs, den_coeffs, variable: str = "x") -> RatExpr:
    """Rational function of one variable, placed in the X (or Y) slot."""
    if variable == "x":
        n = BiPoly({(i, 0): c for i, c in enumerate(num_coeffs)})
        d = BiPoly({(i, 0): c for i, c in enumerate(den_coeffs)})
    else:
        n = BiPoly({(0, i): c for i, c in enumerate(num_coeffs)})
        d = BiPoly({(0, i): c for i, c in enumerate(den_coeffs)})
    return RatExpr(n, d)
