"""Limits of the critical value z along the exceptional curves E_inf and E_q.

On E_inf the marked points 0, 1, x collapse together, so the surviving
modulus is z measured against y: the limit of z/y. On E_q the points y and
inf collapse and z itself has a finite limit. Both limits are taken exactly:
substitute the chart map, check there is no pole on the exceptional curve,
and set the exceptional coordinate to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..exactfield import INF, BiPoly, RatExpr, UniPoly, exact_roots
from ..exactfield.scalars import format_scalar, rational_roots
from ..family import Z_EXPR
from .intersect import intersection_points
from .model import SurfaceModel, paper_model

# what each curve of the paper model means where it meets an exceptional curve
MEANING = {
    "L_x0": "x=0", "L_y0": "y=0", "L_x1": "x=1", "L_y1": "y=1",
    "L_xinf": "x=inf", "L_yinf": "y=inf",
    "Z1": "z=0", "Z2": "z=1", "Z3": "z=inf", "Z4": "z=y",
    "E_q": "y=inf", "E_inf": "E_inf", "Vhat": "diagonal",
}


@dataclass(frozen=True)
class DegeneratePoint:
    parameter: object  # Fraction, QuadElem or INF
    value: object  # 0, 1 or INF: the limit there
    multiplicity: int
    meets: tuple[str, ...]  # curves of the model crossing the exceptional curve here

    @property
    def meaning(self) -> tuple[str, ...]:
        return tuple(MEANING.get(n, n) for n in self.meets)


@dataclass
class ExceptionalLimit:
    divisor: str
    variable: str
    expr: RatExpr  # function of X, read as the variable
    degenerate: list[DegeneratePoint] = field(default_factory=list)

    def __call__(self, t):
        if t is INF:
            return _value_at_infinity(self.expr)
        return self.expr.eval(t, 0)

    @property
    def degenerate_parameters(self) -> list:
        return [d.parameter for d in self.degenerate]

    def solutions(self, target) -> list:
        return [d.parameter for d in self.degenerate if d.value == target]

    def to_str(self) -> str:
        return factored_str(self.expr, self.variable)


def _value_at_infinity(expr: RatExpr):
    n, d = expr.num.deg_x, expr.den.deg_x
    if n > d:
        return INF
    if n < d:
        return Fraction(0)
    return expr.num.coeff(n, 0) / expr.den.coeff(d, 0)


def restrict_to_exceptional(model: SurfaceModel, name: str, expr: RatExpr) -> RatExpr:
    """expr pulled back to the second chart of ``name`` and restricted to the curve.

    The result is a function of the curve's named parameter, stored in the X slot.
    """
    chart = model.chart(f"{name}.2")
    pulled = expr.subs(*chart.to_base)
    on_curve = pulled.restrict_y(0)  # raises PoleError if the curve is a pole
    p, q, r, s = model.fiber_params[name]
    # parameter t = (p w + q)/(r w + s), so w = (s t - q)/(p - r t)
    X = BiPoly.X()
    w = RatExpr(s * X - q, p - r * X)
    return on_curve.subs(w, RatExpr.Y())


def _crossings(model: SurfaceModel, name: str) -> dict:
    out: dict = {}
    for other in model.divisors:
        if other == name:
            continue
        for ip in intersection_points(model, name, other):
            # the step through ``name`` gives the point of the curve (later steps refine it)
            step = next((s for s in ip.key[1:] if s[0] == name), None)
            if step is None:
                continue
            t = model.fiber_parameter(name, step[1])
            out.setdefault(_param_key(t), []).append(other)
    return out


def _param_key(t):
    if t is INF:
        return ("inf",)
    return ("v", t.canonical() if hasattr(t, "canonical") else t)


def degenerate_points(model: SurfaceModel, name: str, expr: RatExpr) -> list[DegeneratePoint]:
    """Parameters where the limit takes a value in {0, 1, inf}, solved exactly."""
    crossings = _crossings(model, name)
    num = UniPoly(expr.num.x_coeff_list(), "t")
    den = UniPoly(expr.den.x_coeff_list(), "t")
    out = []
    for value, poly in ((Fraction(0), num), (Fraction(1), num - den), (INF, den)):
        if poly.degree <= 0:
            continue
        for t, mult in exact_roots(poly):
            meets = tuple(sorted(crossings.get(_param_key(t), [])))
            out.append(DegeneratePoint(t, value, mult, meets))
    at_inf = _value_at_infinity(expr)
    if at_inf in (0, 1) or at_inf is INF:
        meets = tuple(sorted(crossings.get(("inf",), [])))
        out.append(DegeneratePoint(INF, at_inf, 1, meets))
    return out


def exceptional_limits(model: SurfaceModel | None = None) -> dict[str, ExceptionalLimit]:
    """z/y on E_inf in the parameter u and z on E_q in the parameter v."""
    model = model or paper_model()
    y = RatExpr.Y()
    out = {}
    for name, var, expr in (("E_inf", "u", Z_EXPR / y), ("E_q", "v", Z_EXPR)):
        lim = restrict_to_exceptional(model, name, expr)
        out[name] = ExceptionalLimit(name, var, lim, degenerate_points(model, name, lim))
    return out


def _linear_factors(coeffs) -> tuple[Fraction, list[tuple[Fraction, int]], list]:
    """content, rational roots with multiplicity, leftover monic cofactor."""
    p = UniPoly(coeffs, "t")
    content = p.lc
    rest = p.monic()
    roots = []
    for r in sorted(rational_roots(rest.coeffs), key=lambda r: (r != 0, abs(r), r)):
        k = rest.root_multiplicity(r)
        roots.append((r, k))
        for _ in range(k):
            rest = rest.divmod(UniPoly([-r, 1], "t"))[0]
    return content, roots, list(rest.coeffs)


def _factor_text(r: Fraction, k: int, var: str) -> str:
    if r == 0:
        base = var
    elif r < 0:
        base = f"({-r}+{var})"
    else:
        base = f"({var}-{r})"
    return base if k == 1 else f"{base}^{k}"


def _poly_text(coeffs, var: str) -> str:
    up = UniPoly(coeffs, var)
    return f"({up.to_str()})"


def factored_str(expr: RatExpr, var: str) -> str:
    """A univariate rational function with rational linear factors pulled out."""
    cn, rn, leftn = _linear_factors(expr.num.x_coeff_list())
    cd, rd, leftd = _linear_factors(expr.den.x_coeff_list())
    c = cn / cd
    nf = [_factor_text(r, k, var) for r, k in rn]
    if len(leftn) > 1:
        nf.append(_poly_text(leftn, var))
    df = [_factor_text(r, k, var) for r, k in rd]
    if len(leftd) > 1:
        df.append(_poly_text(leftd, var))
    a, b = c.numerator, c.denominator
    if nf:
        head = "-" if a == -1 else "" if a == 1 else f"{a}*"
        num = head + "*".join(nf)
    else:
        num = str(a)
    den = ([str(b)] if b != 1 else []) + df
    if not den:
        return num
    dtext = "*".join(den)
    if len(den) > 1:
        dtext = f"({dtext})"
    if nf and (len(nf) > 1 or a not in (1, -1)):
        num = f"({num})" if not num.startswith("-") else f"-({num[1:]})"
    return f"{num}/{dtext}"


def format_parameter(t) -> str:
    return format_scalar(t)
