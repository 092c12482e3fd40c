"""Intersection points, local multiplicities and normal crossings on a SurfaceModel."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..exactfield import BiPoly, RootsUnavailable, UniPoly, exact_roots, gcd, resultant
from ..exactfield.unipoly import roots_in_field
from ..exactfield.scalars import QuadElem, format_scalar
from .model import SurfaceModel


class CommonComponentError(ArithmeticError):
    """Two curves share a component, so their intersection is not a finite set."""


def _ord_x(p: BiPoly) -> int:
    return min(i for i, _ in p.terms)


def intersection_multiplicity(f: BiPoly, g: BiPoly) -> int:
    """Local intersection number of f = 0 and g = 0 at the origin (Fulton's algorithm)."""
    if f.constant_term() != 0 or g.constant_term() != 0:
        return 0
    f0, g0 = f.eval_y(0), g.eval_y(0)
    r, s = f0.deg_x, g0.deg_x
    if r < 0 and s < 0:
        raise CommonComponentError("both curves contain the line Y = 0")
    if r < 0:
        # f = Y * h: I(Y, g) + I(h, g)
        return _ord_x(g0) + intersection_multiplicity(f.divide_by_monomial(0, 1), g)
    if s < 0:
        return _ord_x(f0) + intersection_multiplicity(f, g.divide_by_monomial(0, 1))
    if r > s:
        f, g, f0, g0, r, s = g, f, g0, f0, s, r
    lead_f, lead_g = f0.coeff(r, 0), g0.coeff(s, 0)
    shift = BiPoly({(s - r, 0): lead_g / lead_f})
    return intersection_multiplicity(f, g - shift * f)


def multiplicity_at(f: BiPoly, point) -> int:
    """Order of vanishing of f at a point (1 for a smooth branch)."""
    return f.translate(*point).min_degree()


def _in_y(p: BiPoly) -> UniPoly:
    """p as a polynomial in Y with coefficients in Q[X]."""
    by_j: dict[int, dict] = {}
    for (i, j), c in p.items():
        by_j.setdefault(j, {})[(i, 0)] = c
    deg = p.deg_y
    return UniPoly([BiPoly(by_j.get(j, {})) for j in range(deg + 1)], "y")


def _univariate_roots(coeffs, var):
    up = UniPoly(coeffs, var)
    if up.degree <= 0:
        return []
    return [r for r, _ in exact_roots(up)]


def common_zeros(f: BiPoly, g: BiPoly) -> list[tuple]:
    """All common zeros in the affine plane, with coordinates of degree <= 2 over Q.

    Raises RootsUnavailable when a zero needs a larger field, and
    CommonComponentError when f and g share a factor.
    """
    if not gcd(f, g).is_constant():
        raise CommonComponentError("curves share a component")
    res = resultant(_in_y(f), _in_y(g))
    res = BiPoly.coerce(res)
    if res.is_zero():
        raise CommonComponentError("resultant vanishes identically")
    points = []
    for x0 in _univariate_roots(res.x_coeff_list(), "x"):
        fy = UniPoly(f.eval_x(x0).y_coeff_list(), "y")
        gy = UniPoly(g.eval_x(x0).y_coeff_list(), "y")
        if fy.is_zero() and gy.is_zero():
            raise CommonComponentError(f"both curves contain the line x = {x0}")
        if fy.is_zero() or gy.is_zero():
            h = gy if fy.is_zero() else fy
        else:
            h = UniPoly.gcd(fy, gy)
        if h.degree <= 0:
            continue
        if isinstance(x0, QuadElem):
            # solve inside the field of x0 so both coordinates share one presentation
            h = UniPoly([c if isinstance(c, QuadElem) else x0.field(c) for c in h.coeffs], "y")
            roots = roots_in_field(h)
        else:
            roots = exact_roots(h)
        points.extend((x0, y0) for y0, _ in roots)
    return points


@dataclass(frozen=True)
class IntersectionPoint:
    key: tuple
    chart: str
    coords: tuple
    multiplicity: int

    def describe(self) -> str:
        return f"{self.chart}:({format_scalar(self.coords[0])}, {format_scalar(self.coords[1])})"


def _lift(p: BiPoly, point) -> BiPoly:
    fields = [c.field for c in point if isinstance(c, QuadElem)]
    if not fields:
        return p
    K = fields[0]
    return BiPoly({e: K(c) if not isinstance(c, QuadElem) else c for e, c in p.items()})


def intersection_points(model: SurfaceModel, d1: str, d2: str) -> list[IntersectionPoint]:
    """Distinct points of D1 and D2 on the surface, each with its local multiplicity."""
    a, b = model.divisor(d1), model.divisor(d2)
    if d1 == d2:
        raise ValueError("self-intersection has no point set; use the intersection matrix")
    bad = model.center_keys
    found: dict[tuple, IntersectionPoint] = {}
    for cname in model.charts:
        if not (a.is_visible(cname) and b.is_visible(cname)):
            continue
        f, g = a.local[cname], b.local[cname]
        for pt in common_zeros(f, g):
            key = model.point_key(cname, pt)
            if key in bad or key in found:
                continue
            mult = intersection_multiplicity(_lift(f, pt).translate(*pt), _lift(g, pt).translate(*pt))
            found[key] = IntersectionPoint(key, cname, pt, mult)
    return sorted(found.values(), key=lambda p: repr(p.key))


def geometric_intersection_number(model: SurfaceModel, d1: str, d2: str) -> int:
    return sum(p.multiplicity for p in intersection_points(model, d1, d2))


@dataclass
class CrossingVerdict:
    point: IntersectionPoint
    branches: tuple[str, ...]
    ok: bool
    reason: str


@dataclass
class NormalCrossingReport:
    verdicts: list[CrossingVerdict] = field(default_factory=list)
    unavailable: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.unavailable and all(v.ok for v in self.verdicts)

    @property
    def failures(self) -> list[CrossingVerdict]:
        return [v for v in self.verdicts if not v.ok]


def _tangent(f: BiPoly) -> tuple:
    return (f.coeff(1, 0), f.coeff(0, 1))


def _judge(model: SurfaceModel, ip: IntersectionPoint, members) -> CrossingVerdict:
    cname, pt = ip.chart, ip.coords
    branches = []
    for d in model.divisors.values():
        if d.name in members and d.is_visible(cname):
            loc = _lift(d.local[cname], pt).translate(*pt)
            if loc.constant_term() == 0:
                branches.append((d.name, loc))
    names = tuple(n for n, _ in branches)
    if len(branches) != 2:
        return CrossingVerdict(ip, names, False, f"{len(branches)} branches through the point")
    (n1, f1), (n2, f2) = branches
    for n, f in branches:
        if f.min_degree() != 1:
            return CrossingVerdict(ip, names, False, f"{n} is singular at the point")
    (a1, b1), (a2, b2) = _tangent(f1), _tangent(f2)
    if a1 * b2 - a2 * b1 == 0:
        return CrossingVerdict(ip, names, False, f"{n1} and {n2} are tangent")
    return CrossingVerdict(ip, names, True, "two smooth transverse branches")


def normal_crossing_check(model: SurfaceModel, family_a, family_b) -> NormalCrossingReport:
    """Judge every point where a curve of family_a meets a curve of family_b.

    Every curve of either family through such a point counts as a branch.
    """
    members = set(family_a) | set(family_b)
    report = NormalCrossingReport()
    seen: set = set()
    for a in family_a:
        for b in family_b:
            if a == b:
                continue
            try:
                pts = intersection_points(model, a, b)
            except RootsUnavailable as exc:
                report.unavailable.append(f"{a} x {b}: {exc}")
                continue
            for ip in pts:
                if ip.key in seen:
                    continue
                seen.add(ip.key)
                report.verdicts.append(_judge(model, ip, members))
    report.verdicts.sort(key=lambda v: repr(v.point.key))
    return report


def describe_key(key: tuple) -> str:
    """Readable form of a canonical point key."""

    def scalar(k):
        if k == ("inf",):
            return "inf"
        if len(k) == 1:
            return str(k[0])
        a, b, D = k
        root = f"sqrt({D})" if b == 1 else f"-sqrt({D})" if b == -1 else f"{b}*sqrt({D})"
        if not a:
            return root
        return f"{a} - {root[1:]}" if root.startswith("-") else f"{a} + {root}"

    base = key[0]
    out = f"({scalar(base[1])}, {scalar(base[2])})"
    for name, d in key[1:]:
        out += f" > {name}[{scalar(d)}]"
    return out


__all__ = [
    "CommonComponentError", "CrossingVerdict", "IntersectionPoint", "NormalCrossingReport",
    "common_zeros", "describe_key", "geometric_intersection_number", "intersection_multiplicity",
    "intersection_points", "multiplicity_at", "normal_crossing_check",
]
