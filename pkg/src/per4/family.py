"""The two-parameter family F(t) = (t - x)(t - r)/t^2 and its degeneracy loci.

Parameters (x, y) live on P^1 x P^1. The marked points of the range are
0, 1, inf, y, z where z is the second critical value; the domain marks are
0, 1, inf, x with F(0) = inf, F(inf) = 1, F(1) = y, F(x) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactfield import (
    INF,
    BiPoly,
    IndeterminateError,
    RatExpr,
    UniPoly,
    X,
    Y,
    exact_roots,
    sqrt_poly,
)
from .exactfield.bipoly import NotExactError
from .exactfield.scalars import QuadElem, as_fraction


class DegenerateMapError(ValueError):
    """Parameters where F drops degree or a critical point escapes to infinity."""


# --- points of P^1 x P^1 -------------------------------------------------

def _proj(value) -> tuple:
    if value is INF:
        return (Fraction(1), Fraction(0))
    if isinstance(value, int):
        value = Fraction(value)
    return (value, Fraction(1))


@dataclass(frozen=True)
class ParamPoint:
    """A point of P^1 x P^1 as two normalized projective pairs."""

    xp: tuple
    yp: tuple

    @classmethod
    def of(cls, x, y) -> "ParamPoint":
        return cls(_proj(x), _proj(y))

    @property
    def x(self):
        return INF if self.xp[1] == 0 else self.xp[0]

    @property
    def y(self):
        return INF if self.yp[1] == 0 else self.yp[0]

    @property
    def finite(self) -> bool:
        return self.xp[1] != 0 and self.yp[1] != 0

    def __str__(self):
        return f"({self.x}, {self.y})"


# --- degeneracy curves ---------------------------------------------------

@dataclass(frozen=True)
class LocusComponent:
    """One component of L or Z, affine equation plus its bidegree on P^1 x P^1.

    The bihomogenization of ``affine`` with respect to ``bidegree`` is
    sum c_ij x0^i x1^(a-i) y0^j y1^(b-j); the lines at infinity have the
    constant affine equation 1.
    """

    name: str
    kind: str  # "L" or "Z"
    affine: BiPoly
    bidegree: tuple[int, int]

    def bihom_eval(self, p: ParamPoint):
        (x0, x1), (y0, y1) = p.xp, p.yp
        a, b = self.bidegree
        total = Fraction(0)
        for (i, j), c in self.affine.items():
            total = total + c * x0 ** i * x1 ** (a - i) * y0 ** j * y1 ** (b - j)
        return total

    def vanishes_at(self, p: ParamPoint) -> bool:
        return self.bihom_eval(p) == 0

    def diagonal_restriction(self) -> tuple[list, int]:
        """Coefficients of the equation on y = x (affine x), and its root multiplicity at infinity."""
        a, b = self.bidegree
        coeffs: dict[int, object] = {}
        for (i, j), c in self.affine.items():
            coeffs[i + j] = coeffs.get(i + j, 0) + c
        dense = [coeffs.get(k, Fraction(0)) for k in range(a + b + 1)]
        while dense and dense[-1] == 0:
            dense.pop()
        return dense, (a + b) - (len(dense) - 1)


def _component(name: str, kind: str, affine: BiPoly, bidegree=None) -> LocusComponent:
    if bidegree is None:
        bidegree = (affine.deg_x, max(affine.deg_y, 0))
        bidegree = (max(bidegree[0], 0), bidegree[1])
    if not affine.is_constant():
        affine = affine.primitive()
    return LocusComponent(name, kind, affine, bidegree)


ONE = BiPoly.const(1)

L_COMPONENTS: tuple[LocusComponent, ...] = (
    _component("x=0", "L", X),
    _component("y=0", "L", Y),
    _component("x=1", "L", X - 1),
    _component("y=1", "L", Y - 1),
    _component("x=inf", "L", ONE, (1, 0)),
    _component("y=inf", "L", ONE, (0, 1)),
)

Z1 = 1 - 2 * X + X ** 2 - Y
Z2 = X ** 2 + Y - 1
Z3 = X + Y - 1
Z4 = 2 * X * Y + X ** 2 - Y - 2 * X + 1

Z_COMPONENTS: tuple[LocusComponent, ...] = (
    _component("Z1", "Z", Z1),
    _component("Z2", "Z", Z2),
    _component("Z3", "Z", Z3),
    _component("Z4", "Z", Z4),
)

ALL_COMPONENTS = L_COMPONENTS + Z_COMPONENTS

# z as a rational function of (x, y)
Z_NUMERATOR = -(Z1 ** 2)
Z_DENOMINATOR = 4 * X * (X - 1) * Z3
Z_EXPR = RatExpr(Z_NUMERATOR, Z_DENOMINATOR)
R_EXPR = RatExpr(Z3, X - 1)


# --- evaluation on P^1 x P^1 ---------------------------------------------

def eval_extended(expr: RatExpr, x, y):
    """Value of a rational function of (x, y) at a point of P^1 x P^1.

    Infinite coordinates are handled in the chart xbar = 1/x (resp. ybar).
    """
    sx = RatExpr.X() if x is not INF else RatExpr.X().inverse()
    sy = RatExpr.Y() if y is not INF else RatExpr.Y().inverse()
    if x is INF or y is INF:
        expr = expr.subs(sx, sy)
    vx = Fraction(0) if x is INF else x
    vy = Fraction(0) if y is INF else y
    return expr.eval(vx, vy)


def _scalar(v):
    if v is None or v is INF or isinstance(v, (Fraction, QuadElem)):
        return v
    return as_fraction(v)


def r_of(x=None, y=None):
    """r = (x + y - 1)/(x - 1); symbolic RatExpr when called without arguments."""
    if x is None and y is None:
        return R_EXPR
    x, y = _scalar(x), _scalar(y)
    if x is not INF and x - 1 == 0:
        raise ZeroDivisionError("pole of r: x-1 vanishes")
    return eval_extended(R_EXPR, x, y)


def z_of(x=None, y=None):
    """Second critical value z(x, y); INF on the pole locus, error at 0/0."""
    if x is None and y is None:
        return Z_EXPR
    x, y = _scalar(x), _scalar(y)
    try:
        return eval_extended(Z_EXPR, x, y)
    except IndeterminateError:
        p = ParamPoint.of(x, y)
        vanishing = [c.name for c in ALL_COMPONENTS if c.vanishes_at(p)]
        raise IndeterminateError(
            f"z is 0/0 at {p}: numerator factor Z1 and denominator factor(s) vanish; "
            f"vanishing components {vanishing}"
        ) from None


# --- the map F -----------------------------------------------------------

@dataclass(frozen=True)
class FamilyMap:
    """F(t) = numerator(t)/denominator(t) over a scalar or RatExpr coefficient field."""

    x: object
    y: object
    r: object
    numerator: UniPoly
    denominator: UniPoly

    @property
    def symbolic(self) -> bool:
        return isinstance(self.x, RatExpr)

    def __call__(self, t):
        if t is INF:
            if self.numerator.degree == self.denominator.degree:
                return self.numerator.lc / self.denominator.lc
            return INF if self.numerator.degree > self.denominator.degree else Fraction(0)
        n = self.numerator(t)
        d = self.denominator(t)
        if d == 0:
            if n == 0:
                raise IndeterminateError("F is 0/0")
            return INF
        return n / d


def family_map(x=None, y=None) -> FamilyMap:
    """Build F for numeric parameters, or symbolically over Q(x, y) when no arguments are given."""
    if x is None and y is None:
        xs, ys = RatExpr.X(), RatExpr.Y()
        r = R_EXPR
        num = UniPoly([xs * r, -(xs + r), RatExpr(1)], "t")
        den = UniPoly([RatExpr(0), RatExpr(0), RatExpr(1)], "t")
        return FamilyMap(xs, ys, r, num, den)
    x, y = _scalar(x), _scalar(y)
    if x is INF or y is INF:
        raise DegenerateMapError("parameters at infinity do not give a quadratic map")
    if x == 0:
        raise DegenerateMapError("x = 0: F(x) = 0 collides with the pole at t = 0")
    if x == 1:
        raise DegenerateMapError("x - 1 vanishes: r has a pole")
    r = (x + y - 1) / (x - 1)
    if x * r == 0:
        raise DegenerateMapError("x*r = 0: numerator shares the factor t with t^2, degree drops")
    num = UniPoly([x * r, -(x + r), Fraction(1)], "t")
    den = UniPoly([0, 0, 1], "t")
    return FamilyMap(x, y, r, num, den)


@dataclass(frozen=True)
class CriticalData:
    points: tuple
    values: tuple
    certificate: RatExpr | None = None  # F(t_c) - z, symbolic mode only

    @property
    def t_c(self):
        return self.points[1]


def critical_data(F: FamilyMap) -> CriticalData:
    """Critical points are the roots of N'D - ND'; the factor t gives t = 0."""
    N, D = F.numerator, F.denominator
    W = N.derivative() * D - N * D.derivative()
    q, rem = W.divmod(UniPoly([0, 1], "t"))
    if not rem.is_zero():
        raise DegenerateMapError("t = 0 is not a critical point")
    if q.degree < 1:
        raise DegenerateMapError("x + r = 0: second critical point at infinity")
    t_c = -q.coeffs[0] / q.coeffs[1]
    v_c = F(t_c)
    cert = v_c - Z_EXPR if F.symbolic else None
    zero = RatExpr(0) if F.symbolic else Fraction(0)
    return CriticalData((zero, t_c), (F(zero), v_c), cert)


# --- certificates ----------------------------------------------------------

@dataclass(frozen=True)
class IdentityCertificate:
    name: str
    statement: str
    residual: BiPoly
    holds: bool


def verify_cycle_identities() -> list[IdentityCertificate]:
    """F(0) = inf, F(inf) = 1, F(1) = y, F(x) = 0 over Q(x, y), plus F(t_c) = z."""
    F = family_map()
    xs, ys = RatExpr.X(), RatExpr.Y()
    out = []
    n0, d0 = F.numerator(RatExpr(0)), F.denominator(RatExpr(0))
    out.append(IdentityCertificate(
        "F(0)=inf", "denominator(0) = 0 and numerator(0) = x*r != 0",
        d0.num, d0.is_zero() and not n0.is_zero(),
    ))
    lead = F.numerator.lc - F.denominator.lc
    out.append(IdentityCertificate(
        "F(inf)=1", "leading coefficients of numerator and denominator agree",
        lead.num, F.numerator.degree == F.denominator.degree and lead.is_zero(),
    ))
    d1 = F(RatExpr(1)) - ys
    out.append(IdentityCertificate("F(1)=y", "numerator of F(1) - y", d1.num, d1.is_zero()))
    dx = F(xs)
    out.append(IdentityCertificate("F(x)=0", "numerator of F(x)", dx.num, dx.is_zero()))
    cd = critical_data(F)
    out.append(IdentityCertificate(
        "F(t_c)=z", "numerator of F(2xr/(x+r)) - z", cd.certificate.num, cd.certificate.is_zero()
    ))
    return out


@dataclass(frozen=True)
class LocusCertificate:
    name: str
    component: str
    target: str
    numerator: BiPoly  # (z - target) times 4x(x-1)(x+y-1)
    square_root: BiPoly | None
    quotient: Fraction | None  # numerator / component^2 by exact division
    holds: bool


@dataclass(frozen=True)
class DegeneracyLoci:
    components: tuple[LocusComponent, ...]
    certificates: tuple[LocusCertificate, ...]

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.certificates)

    def certificate(self, name: str) -> LocusCertificate:
        return next(c for c in self.certificates if c.name == name)


def _square_certificate(name, comp: LocusComponent, target, label) -> LocusCertificate:
    n = Z_NUMERATOR - target * Z_DENOMINATOR
    root = sqrt_poly(-n) if not n.is_zero() else None
    try:
        q = n.exact_div(comp.affine ** 2)
        quotient = q.constant_term() if q.is_constant() else None
    except NotExactError:
        quotient = None
    holds = root is not None and root == comp.affine and quotient == -1
    return LocusCertificate(name, comp.name, label, n, root, quotient, holds)


def degeneracy_loci(components=None) -> DegeneracyLoci:
    """The six lines of L and four curves of Z, each Z curve with its certificate.

    ``components`` replaces the default Z curves by name (used to inject faults).
    """
    zs = {c.name: c for c in Z_COMPONENTS}
    if components:
        for c in components:
            zs[c.name] = c
    certs = [
        _square_certificate("z-minus-0-square", zs["Z1"], BiPoly(), "0"),
        _square_certificate("z-minus-1-square", zs["Z2"], BiPoly.const(1), "1"),
        _square_certificate("z-minus-y-square", zs["Z4"], Y, "y"),
    ]
    # pole locus of z in lowest terms
    expected_den = (X * (X - 1) * zs["Z3"].affine).primitive()
    certs.append(LocusCertificate(
        "z-infinity-locus", "x=0,x=1,Z3", "inf", Z_EXPR.den, None, None,
        Z_EXPR.den == expected_den,
    ))
    return DegeneracyLoci(L_COMPONENTS + tuple(zs[n] for n in ("Z1", "Z2", "Z3", "Z4")), tuple(certs))


# --- classification --------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    point: ParamPoint
    on_L: tuple[str, ...]
    on_Z: tuple[str, ...]

    @property
    def interior(self) -> bool:
        return not self.on_L and not self.on_Z

    @property
    def label(self) -> str:
        if self.interior:
            return "interior"
        parts = []
        if self.on_L:
            parts.append("on L: " + ", ".join(self.on_L))
        if self.on_Z:
            parts.append("on Z: " + ", ".join(self.on_Z))
        return "; ".join(parts)


def classify_parameter(p, y=None) -> Classification:
    """Which defining polynomials of L and Z vanish at a point of P^1 x P^1."""
    if not isinstance(p, ParamPoint):
        p = ParamPoint.of(_scalar(p), _scalar(y))
    on_l = tuple(c.name for c in L_COMPONENTS if c.vanishes_at(p))
    on_z = tuple(c.name for c in Z_COMPONENTS if c.vanishes_at(p))
    return Classification(p, on_l, on_z)


# --- the diagonal ------------------------------------------------------------

@dataclass(frozen=True)
class DiagonalPuncture:
    component: str
    kind: str
    minpoly: tuple  # primitive integer coefficients low-to-high; () for the point at infinity
    roots: tuple
    real: bool
    multiplicity: int

    @property
    def at_infinity(self) -> bool:
        return not self.minpoly


def _primitive_int(coeffs) -> tuple:
    p = BiPoly({(i, 0): c for i, c in enumerate(coeffs)}).primitive()
    return tuple(int(c) for c in p.x_coeff_list())


def diagonal_punctures(components=ALL_COMPONENTS) -> list[DiagonalPuncture]:
    """Intersections of y = x with every component, grouped by minimal polynomial."""
    out: list[DiagonalPuncture] = []
    for comp in components:
        dense, inf_mult = comp.diagonal_restriction()
        if len(dense) > 1:
            upoly = UniPoly(dense, "x")
            roots = exact_roots(upoly)
            groups: dict[tuple, list] = {}
            for root, mult in roots:
                if isinstance(root, QuadElem):
                    key = _primitive_int(root.field.minpoly)
                    real = root.field.is_real()
                else:
                    key = _primitive_int([-root, 1])
                    real = True
                groups.setdefault(key, []).append((root, mult, real))
            for key, items in groups.items():
                out.append(DiagonalPuncture(
                    comp.name, comp.kind, key, tuple(r for r, _, _ in items),
                    items[0][2], items[0][1],
                ))
        if inf_mult > 0:
            out.append(DiagonalPuncture(comp.name, comp.kind, (), (INF,), True, inf_mult))
    return out


def puncture_summary(punctures=None) -> dict:
    """Distinct punctures of the diagonal: L points, and Z points not already on L."""
    punctures = diagonal_punctures() if punctures is None else punctures
    l_points = {}
    for p in punctures:
        if p.kind == "L":
            for r in p.roots:
                l_points[str(r)] = p.minpoly
    z_minpolys = {}
    for p in punctures:
        if p.kind == "Z" and not p.at_infinity:
            if all(str(r) in l_points for r in p.roots):
                continue
            z_minpolys[p.minpoly] = p
    return {
        "L_points": sorted(l_points, key=str),
        "Z_real_points": sum(len(p.roots) for p in z_minpolys.values() if p.real),
        "Z_complex_pairs": sum(1 for p in z_minpolys.values() if not p.real),
        "minpolys": sorted({p.minpoly for p in punctures if not p.at_infinity})
        + [()] * any(p.at_infinity for p in punctures),
    }


# --- orbit checks ------------------------------------------------------------

def four_cycle(x, y=None) -> tuple:
    """The orbit 0 -> inf -> 1 -> F(1) -> F(F(1)) for numeric parameters."""
    if y is None:
        y = x
    F = family_map(x, y)
    orbit = [Fraction(0)]
    for _ in range(4):
        orbit.append(F(orbit[-1]))
    return tuple(orbit)
