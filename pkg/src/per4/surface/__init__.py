"""Blowups of P^1 x P^1, intersection theory and the limits of z on exceptional curves."""

from .incidence import (
    Edge,
    IncidenceGraph,
    Transforms,
    combo_dot,
    graph_to_json,
    incidence_and_boundary,
    intersection_matrix,
    model_to_json,
    total_class,
    transforms,
)
from .intersect import (
    CommonComponentError,
    IntersectionPoint,
    NormalCrossingReport,
    common_zeros,
    describe_key,
    geometric_intersection_number,
    intersection_multiplicity,
    intersection_points,
    normal_crossing_check,
)
from .limits import ExceptionalLimit, exceptional_limits, factored_str, restrict_to_exceptional
from .model import (
    CenterError,
    Chart,
    DivisorRecord,
    SurfaceModel,
    base_curves,
    blow_up,
    paper_model,
)

EXCEPTIONAL = ("E_0", "E_1", "E_inf", "E_q")
L_NAMES = ("L_x0", "L_y0", "L_x1", "L_y1", "L_xinf", "L_yinf")
Z_NAMES = ("Z1", "Z2", "Z3", "Z4")
V_TOTAL = ("Vhat",) + EXCEPTIONAL

__all__ = [
    "CenterError", "Chart", "CommonComponentError", "DivisorRecord", "EXCEPTIONAL", "Edge",
    "ExceptionalLimit", "IncidenceGraph", "IntersectionPoint", "L_NAMES", "NormalCrossingReport",
    "SurfaceModel", "Transforms", "V_TOTAL", "Z_NAMES", "base_curves", "blow_up", "combo_dot",
    "common_zeros", "describe_key", "exceptional_limits", "factored_str",
    "geometric_intersection_number", "graph_to_json", "incidence_and_boundary",
    "intersection_matrix", "intersection_multiplicity", "intersection_points", "model_to_json",
    "normal_crossing_check", "paper_model", "restrict_to_exceptional", "total_class", "transforms",
]
