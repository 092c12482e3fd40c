"""Transforms, intersection matrices, incidence graphs and their JSON form."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..exactfield.scalars import format_scalar
from .intersect import describe_key, intersection_points
from .model import DivisorRecord, SurfaceModel, pair_classes


@dataclass
class Transforms:
    proper: DivisorRecord
    total: dict[str, int]  # divisor name -> coefficient

    def __str__(self):
        return " + ".join(n if k == 1 else f"{k}*{n}" for n, k in self.total.items())


def transforms(model: SurfaceModel, curve: str) -> Transforms:
    """Proper transform and total transform (pullback) of a registered curve.

    Exceptional curves are pulled back from the surface on which they were born.
    """
    rec = model.divisor(curve)
    total = {curve: 1}
    started = rec.kind == "base"
    for c in model.centers:
        if not started:
            started = c.name == curve
            continue
        n = sum(k * model.divisor(d).multiplicities.get(c.name, 0) for d, k in total.items())
        if n:
            total[c.name] = n
    return Transforms(rec, total)


def total_class(model: SurfaceModel, combo: dict[str, int]) -> tuple[tuple[int, int], dict]:
    h0, h1, e = 0, 0, {}
    for name, k in combo.items():
        d = model.divisor(name)
        h0 += k * d.h[0]
        h1 += k * d.h[1]
        for c, v in d.e.items():
            e[c] = e.get(c, 0) + k * v
    return (h0, h1), {c: v for c, v in e.items() if v}


def combo_dot(model: SurfaceModel, a: dict[str, int], b: dict[str, int], pairing=None) -> int:
    """Intersection of two integer combinations of divisors, bilinearly from ``pairing``."""
    pairing = pairing or model.dot
    return sum(ka * kb * pairing(da, db) for da, ka in a.items() for db, kb in b.items())


def intersection_matrix(model: SurfaceModel, divisors) -> list[list[int]]:
    names = list(divisors)
    return [[model.dot(a, b) for b in names] for a in names]


def base_pairing(bideg1, bideg2) -> int:
    return pair_classes(bideg1, {}, bideg2, {})


@dataclass(frozen=True)
class Edge:
    a: str
    b: str
    chart: str
    coords: tuple
    point: str
    multiplicity: int


@dataclass
class IncidenceGraph:
    vertices: dict[str, dict] = field(default_factory=dict)
    edges: list[Edge] = field(default_factory=list)

    def edge_pairs(self) -> list[list[str]]:
        return [[e.a, e.b] for e in self.edges]

    def multiplicity(self, a: str, b: str) -> int:
        return sum(e.multiplicity for e in self.edges if {e.a, e.b} == {a, b})


def incidence_and_boundary(model: SurfaceModel, divisors) -> tuple[IncidenceGraph, dict]:
    """Incidence graph of the chosen curves and the plumbing data of their boundary manifold.

    Every vertex is a rational curve, so its piece is a circle bundle over a
    sphere with Euler number the self-intersection, with one boundary torus per
    incident edge (counted with multiplicity).
    """
    names = list(divisors)
    g = IncidenceGraph()
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            for ip in intersection_points(model, a, b):
                g.edges.append(Edge(a, b, ip.chart, ip.coords, describe_key(ip.key), ip.multiplicity))
    for n in names:
        degree = sum(e.multiplicity for e in g.edges if n in (e.a, e.b))
        g.vertices[n] = {
            "self_intersection": model.divisor(n).self_intersection,
            "genus": 0,
            "degree": degree,
        }
    boundary = {
        n: {
            "base": "S^2",
            "euler_number": v["self_intersection"],
            "boundary_tori": v["degree"],
            "neighbors": sorted({e.b if e.a == n else e.a for e in g.edges if n in (e.a, e.b)}),
        }
        for n, v in g.vertices.items()
    }
    return g, boundary


# --- JSON ---------------------------------------------------------------------

def _scalar(v) -> str:
    return format_scalar(v)


def model_to_json(model: SurfaceModel) -> dict:
    return {
        "centers": [
            {"name": c.name, "chart": c.chart, "point": [_scalar(v) for v in c.point],
             "location": describe_key(c.key)}
            for c in model.centers
        ],
        "charts": [
            {"name": k.name, "coords": list(k.coords), "parent": k.parent,
             "to_base": {"x": k.to_base[0].to_str(k.coords), "y": k.to_base[1].to_str(k.coords)}}
            for k in model.charts.values()
        ],
        "divisors": {n: divisor_to_json(model, d) for n, d in model.divisors.items()},
    }


def divisor_to_json(model: SurfaceModel, d: DivisorRecord) -> dict:
    out = {
        "kind": d.kind,
        "self_intersection": d.self_intersection,
        "multiplicities": dict(d.multiplicities),
    }
    if d.kind == "base":
        out["bidegree"] = list(d.h)
    else:
        out["parent_center"] = d.parent_center
    out["local"] = {
        c: f.to_str(model.charts[c].coords) for c, f in d.local.items() if not f.is_constant()
    }
    return out


def graph_to_json(g: IncidenceGraph, boundary: dict | None = None) -> dict:
    out = {
        "vertices": g.vertices,
        "edges": [
            {"divisors": [e.a, e.b], "chart": e.chart,
             "coords": [_scalar(v) for v in e.coords], "point": e.point,
             "multiplicity": e.multiplicity}
            for e in g.edges
        ],
    }
    if boundary is not None:
        out["boundary"] = boundary
    return out
