"""Blowups of P^1 x P^1 at points, tracked through an explicit chart atlas.

Every blowup adds the two standard charts over its center. A point of the
blown-up surface is identified by a canonical key: the base point of
P^1 x P^1, followed by one (center, direction) step for each exceptional
divisor it lies over. Keys do not depend on the chart used to compute them.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from fractions import Fraction

from ..exactfield import INF, BiPoly, RatExpr
from ..exactfield.scalars import QuadElem, canonical_scalar
from ..family import ALL_COMPONENTS, LocusComponent

BASE_CHARTS = {
    "xy": (("x", "y"), (False, False)),
    "xbar_y": (("xbar", "y"), (True, False)),
    "x_ybar": (("x", "ybar"), (False, True)),
    "xbar_ybar": (("xbar", "ybar"), (True, True)),
}


class CenterError(ValueError):
    """A blowup center that is invalid or cannot be represented."""


@dataclass(frozen=True)
class Chart:
    """Affine chart with coordinates ``coords`` and rational maps to the base (x, y).

    Blowup charts also keep the polynomial map to their parent chart and the
    index of the coordinate that cuts out the new exceptional divisor.
    """

    name: str
    coords: tuple[str, str]
    to_base: tuple[RatExpr, RatExpr]
    parent: str | None = None
    center: str | None = None
    to_parent: tuple[BiPoly, BiPoly] | None = None
    exc_index: int | None = None
    flips: tuple[bool, bool] = (False, False)

    def base_point(self, coords) -> tuple:
        """Image in P^1 x P^1, as (x, y) with INF allowed."""
        return tuple(_eval_extended(f, coords) for f in self.to_base)


@dataclass(frozen=True)
class Center:
    name: str
    chart: str
    point: tuple
    key: tuple


@dataclass
class DivisorRecord:
    """A curve on the current surface: a proper transform or an exceptional divisor.

    ``h`` and ``e`` give its class: h is the bidegree part, e[c] the
    coefficient of the total transform of the exceptional curve of center c.
    """

    name: str
    kind: str  # "base" or "exceptional"
    local: dict[str, BiPoly]
    h: tuple[int, int] = (0, 0)
    e: dict[str, int] = field(default_factory=dict)
    multiplicities: dict[str, int] = field(default_factory=dict)
    parent_center: str | None = None
    self_intersection: int = 0

    @property
    def bidegree(self) -> tuple[int, int] | None:
        return self.h if self.kind == "base" else None

    def is_visible(self, chart: str) -> bool:
        f = self.local.get(chart)
        return f is not None and not f.is_constant()


def pair_classes(h1, e1, h2, e2) -> int:
    """Intersection pairing on the blown-up surface: ruling classes plus -1 per exceptional."""
    total = h1[0] * h2[1] + h1[1] * h2[0]
    for c, k in e1.items():
        total -= k * e2.get(c, 0)
    return total


def _eval_extended(f: RatExpr, coords):
    try:
        return f.eval(*coords)
    except ZeroDivisionError:
        return INF


def _shifted(name: str, p: Fraction) -> str:
    if p == 0:
        return name
    return f"({name}-{p})" if p > 0 else f"({name}+{-p})"


def _normalize_pair(a, b) -> tuple:
    if b != 0:
        return canonical_scalar(a / b)
    return ("inf",)


class SurfaceModel:
    """P^1 x P^1 blown up at an ordered list of centers, with a divisor registry."""

    def __init__(self):
        self.charts: dict[str, Chart] = {}
        self.centers: list[Center] = []
        self.divisors: dict[str, DivisorRecord] = {}
        self.fiber_params: dict[str, tuple] = {}

    # construction -------------------------------------------------------
    @classmethod
    def base(cls, curves) -> "SurfaceModel":
        """``curves``: iterable of (name, affine BiPoly, bidegree)."""
        m = cls()
        for name, (coords, flips) in BASE_CHARTS.items():
            tb = tuple(RatExpr(1, v) if fl else RatExpr(v)
                       for v, fl in zip((BiPoly.X(), BiPoly.Y()), flips))
            m.charts[name] = Chart(name, coords, tb, flips=flips)
        for name, affine, bideg in curves:
            m.add_curve(name, affine, bideg)
        return m

    def add_curve(self, name: str, affine: BiPoly, bidegree) -> DivisorRecord:
        if self.centers:
            raise ValueError("curves must be registered before the first blowup")
        if name in self.divisors:
            raise ValueError(f"duplicate divisor name {name!r}")
        a, b = bidegree
        local = {}
        for cname, chart in self.charts.items():
            fx, fy = chart.flips
            local[cname] = BiPoly({
                (a - i if fx else i, b - j if fy else j): c for (i, j), c in affine.items()
            })
        rec = DivisorRecord(name, "base", local, h=(a, b), self_intersection=2 * a * b)
        self.divisors[name] = rec
        return rec

    def copy(self) -> "SurfaceModel":
        return copy.deepcopy(self)

    # lookup -------------------------------------------------------------
    def chart(self, name: str) -> Chart:
        return self.charts[name]

    def divisor(self, name: str) -> DivisorRecord:
        try:
            return self.divisors[name]
        except KeyError:
            raise KeyError(f"unknown divisor {name!r}") from None

    def center(self, name: str) -> Center:
        for c in self.centers:
            if c.name == name:
                return c
        raise KeyError(f"unknown center {name!r}")

    @property
    def center_keys(self) -> set:
        return {c.key for c in self.centers}

    # points -------------------------------------------------------------
    def point_key(self, chart: str, coords) -> tuple:
        """Canonical identity of a chart point on the blown-up surface."""
        K = self.charts[chart]
        if K.parent is None:
            xs, ys = coords
            fx, fy = K.flips
            xk = _normalize_pair(1, xs) if fx else canonical_scalar(xs)
            yk = _normalize_pair(1, ys) if fy else canonical_scalar(ys)
            return (("base", xk, yk),)
        e = coords[K.exc_index]
        if e != 0:
            pc = tuple(p.eval(*coords) for p in K.to_parent)
            return self.point_key(K.parent, pc)
        fiber = coords[1 - K.exc_index]
        direction = _normalize_pair(1, fiber) if K.exc_index == 0 else canonical_scalar(fiber)
        return self.center(K.center).key + ((K.center, direction),)

    def is_valid_point(self, chart: str, coords) -> bool:
        return self.point_key(chart, coords) not in self.center_keys

    def divisors_through(self, chart: str, coords) -> list[str]:
        return [d.name for d in self.divisors.values()
                if d.is_visible(chart) and d.local[chart].eval(*coords) == 0]

    # blowing up -----------------------------------------------------------
    def blow_up(self, chart: str, point, name: str | None = None,
                fiber_names: tuple[str, str] | None = None,
                fiber_param: tuple | None = None) -> "SurfaceModel":
        """A new model with ``point`` of ``chart`` blown up.

        ``fiber_names`` names the slope coordinates of the two new charts
        (b/a in the first, a/b in the second). ``fiber_param`` (p, q, r, s)
        names the parameter (p*w + q)/(r*w + s) on the exceptional curve, w = a/b.
        """
        if chart not in self.charts:
            raise CenterError(f"unknown chart {chart!r}")
        pt = []
        for v in point:
            if isinstance(v, QuadElem):
                if not v.is_rational():
                    raise CenterError(
                        "blowup centers must have rational coordinates; "
                        f"{v} generates a quadratic extension"
                    )
                v = v.a
            if v is INF:
                raise CenterError("center coordinates must be finite in the chosen chart")
            pt.append(Fraction(v))
        pt = tuple(pt)
        key = self.point_key(chart, pt)
        if key in self.center_keys:
            raise CenterError(f"center {pt} in chart {chart} coincides with a previous center")
        name = name or f"E{len(self.centers) + 1}"
        if name in self.divisors:
            raise CenterError(f"divisor name {name!r} already used")

        m = self.copy()
        P = m.charts[chart]
        a_name, b_name = P.coords
        s_name, w_name = fiber_names or (f"s_{name}", f"w_{name}")
        p1, p2 = pt
        X, Y = BiPoly.X(), BiPoly.Y()
        e1, e2 = _shifted(a_name, p1), _shifted(b_name, p2)
        c1 = Chart(
            f"{name}.1", (e1, s_name), (), parent=chart, center=name,
            to_parent=(X + p1, X * Y + p2), exc_index=0,
        )
        c2 = Chart(
            f"{name}.2", (w_name, e2), (), parent=chart, center=name,
            to_parent=(X * Y + p1, Y + p2), exc_index=1,
        )
        for c in (c1, c2):
            tp = tuple(RatExpr(q) for q in c.to_parent)
            tb = tuple(f.subs(*tp) for f in P.to_base)
            m.charts[c.name] = Chart(c.name, c.coords, tb, c.parent, c.center,
                                     c.to_parent, c.exc_index)
        m.centers.append(Center(name, chart, pt, key))

        new_e: dict[str, int] = {}
        for d in m.divisors.values():
            f = d.local.get(chart)
            mult = 0
            if f is not None and not f.is_constant():
                mult = f.translate(p1, p2).min_degree()
            for cname, exc in ((c1.name, (1, 0)), (c2.name, (0, 1))):
                if f is None or f.is_constant():
                    d.local[cname] = BiPoly.const(1)
                    continue
                K = m.charts[cname]
                total = f.compose(*K.to_parent)
                d.local[cname] = total.divide_by_monomial(exc[0] * mult, exc[1] * mult)
            if mult:
                d.multiplicities[name] = mult
                d.e[name] = d.e.get(name, 0) - mult
                d.self_intersection -= mult * mult
                new_e[d.name] = mult

        local = {c: BiPoly.const(1) for c in m.charts}
        local[c1.name] = X
        local[c2.name] = Y
        m.divisors[name] = DivisorRecord(
            name, "exceptional", local, e={name: 1}, parent_center=name, self_intersection=-1,
        )
        m.fiber_params[name] = tuple(Fraction(v) for v in (fiber_param or (1, 0, 0, 1)))
        return m

    # classes ------------------------------------------------------------
    def dot(self, d1: str, d2: str) -> int:
        a, b = self.divisor(d1), self.divisor(d2)
        return pair_classes(a.h, a.e, b.h, b.e)

    def fiber_parameter(self, exceptional: str, direction):
        """The named parameter on an exceptional curve for a key direction a/b."""
        p, q, r, s = self.fiber_params[exceptional]
        if direction == ("inf",):
            return INF if r == 0 else p / r
        w = direction[0] if len(direction) == 1 else None
        if w is None:
            raise ValueError("irrational direction on an exceptional curve")
        den = r * w + s
        return INF if den == 0 else (p * w + q) / den


def base_curves(components=ALL_COMPONENTS, diagonal: bool = True) -> list:
    """(name, affine, bidegree) triples for the diagonal and the degeneracy loci."""
    out = []
    if diagonal:
        out.append(("Vhat", BiPoly.X() - BiPoly.Y(), (1, 1)))
    for c in components:
        out.append((curve_name(c), c.affine, c.bidegree))
    return out


def curve_name(c: LocusComponent) -> str:
    if c.kind == "Z":
        return c.name
    axis, value = c.name.split("=")
    return f"L_{axis}{value}"


def paper_model() -> SurfaceModel:
    """Blow up (0,0), (1,1), (inf,inf), then the point where E_inf meets y = inf."""
    m = SurfaceModel.base(base_curves())
    m = m.blow_up("xy", (0, 0), "E_0")
    m = m.blow_up("xy", (1, 1), "E_1")
    m = m.blow_up("xbar_ybar", (0, 0), "E_inf", fiber_names=("ubar", "u"))
    # q sits at ubar = 0 in the first chart; parametrize E_q by v = 1 - w
    m = m.blow_up("E_inf.1", (0, 0), "E_q", fiber_names=("s_q", "w"), fiber_param=(-1, 1, 0, 1))
    return m


def blow_up(model: SurfaceModel, center, **kwargs) -> SurfaceModel:
    """``center`` is (chart name, (a, b)); see :meth:`SurfaceModel.blow_up`."""
    chart, point = center
    return model.blow_up(chart, point, **kwargs)
