"""Command-line front end: ``per4 verify | locus | blowup | strata | classify``.

Exit codes: 0 when every check passes, 1 when a certificate fails, 2 for
usage or internal errors. Output is JSON (UTF-8, sorted keys).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from ..exactfield import INF, RatExpr
from ..exactfield.scalars import format_scalar, minpoly_str, parse_scalar
from .report import ReportDocument, Timer
from .svg import Window, locus_svg

DEFAULT_WINDOW = "-2,3,-2,3"
DEFAULT_SAMPLES = 201


class UsageError(ValueError):
    pass


# --- verify ------------------------------------------------------------------

def _poly(p) -> str:
    return p.to_str() if p is not None else None


def cmd_verify(components=None) -> ReportDocument:
    """Run every certificate. ``components`` replaces Z curves by name (fault injection)."""
    from .. import family, strata, surface

    doc = ReportDocument("verify")
    for cert in family.verify_cycle_identities():
        doc.add(cert.name, cert.holds, {"statement": cert.statement, "residual": _poly(cert.residual)})
    loci = family.degeneracy_loci(components)
    for cert in loci.certificates:
        doc.add(cert.name, cert.holds, {
            "component": cert.component, "target": cert.target,
            "numerator": _poly(cert.numerator), "square_root": _poly(cert.square_root),
            "quotient": None if cert.quotient is None else str(cert.quotient),
        })

    model = surface.paper_model()
    limits = surface.exceptional_limits(model)
    zinf, zq = limits["E_inf"], limits["E_q"]
    u = RatExpr.X()
    expected_inf = RatExpr(-1) / (4 * u * (1 + u))
    doc.add("z-inf-limit", zinf.expr == expected_inf, {"z_inf": zinf.to_str()})
    u_set = sorted(format_scalar(d.parameter) for d in zinf.degenerate)
    doc.add("z-inf-degeneracy-set", set(u_set) == {"0", "-1", "-1/2", "inf"},
            {"u": u_set, "meaning": {format_scalar(d.parameter): list(d.meaning) for d in zinf.degenerate}})
    printed = -u / (4 * (1 - u) ** 2)
    doc.add("z-q-limit", zq.expr == printed, {
        "computed": zq.to_str(), "printed": "-v/(4*(1-v)^2)", "agree": zq.expr == printed,
    }, flagged=zq.expr != printed)
    doc.add("z-q-degeneracy-count", True, {
        "z=0": [format_scalar(t) for t in zq.solutions(Fraction(0))],
        "z=1": [format_scalar(t) for t in zq.solutions(Fraction(1))],
        "poles": [format_scalar(t) for t in zq.solutions(INF)],
    }, flagged=True)

    si = {n: model.divisor(n).self_intersection for n in ("Vhat", "E_inf", "E_q")}
    doc.add("self-intersections", si == {"Vhat": -1, "E_inf": -2, "E_q": -1}, si)
    doc.add("pullback-conservation", _pullback_ok(), {})
    eq_pts = surface.intersection_points(model, "E_inf", "E_q")
    doc.add("E_inf-meets-E_q-at-v=1",
            len(eq_pts) == 1 and model.fiber_parameter("E_q", eq_pts[0].key[-1][1]) == 1,
            {"points": [surface.describe_key(p.key) for p in eq_pts]})
    doc.add("Vhat-misses-E_q", not surface.intersection_points(model, "Vhat", "E_q"), {})

    base = surface.SurfaceModel.base(surface.base_curves())
    before = surface.normal_crossing_check(base, ["Vhat"], surface.L_NAMES + surface.Z_NAMES)
    witness = [v for v in before.failures if v.point.key[0][1:] == (("inf",), ("inf",))]
    doc.add("normal-crossing-fails-before-blowup", bool(witness) and len(witness[0].branches) >= 3, {
        "witness": surface.describe_key(witness[0].point.key) if witness else None,
        "branches": list(witness[0].branches) if witness else [],
    })
    after = surface.normal_crossing_check(model, surface.V_TOTAL, surface.L_NAMES + surface.Z_NAMES)
    doc.add("normal-crossing-paper-model", after.ok, {
        "points": len(after.verdicts),
        "failures": [surface.describe_key(v.point.key) for v in after.failures],
        "unavailable": after.unavailable,
    })

    summary = family.puncture_summary()
    doc.add("diagonal-punctures",
            summary["Z_real_points"] == 5 and summary["Z_complex_pairs"] == 1
            and len(summary["L_points"]) == 3,
            {k: [list(m) if isinstance(m, tuple) else m for m in v] if isinstance(v, list) else v
             for k, v in summary.items()})

    eq = strata.equalizer_strata()
    doc.add("equalizer-strata", eq.names() == {"A1", "A2", "corner"},
            {r.name: r.partition for r in eq.admitted})
    two_c = next(r for r in eq.records if r.subtype == "2c")
    doc.add("2c-cross-ratio", not two_c.witness["solutions"], two_c.witness,
            flagged=bool(two_c.witness["solutions"]))
    return doc


def _pullback_ok() -> bool:
    from ..surface import SurfaceModel, base_curves, combo_dot, transforms

    steps = [("xy", (0, 0), "E_0", {}), ("xy", (1, 1), "E_1", {}),
             ("xbar_ybar", (0, 0), "E_inf", {"fiber_names": ("ubar", "u")}),
             ("E_inf.1", (0, 0), "E_q", {"fiber_names": ("s_q", "w"), "fiber_param": (-1, 1, 0, 1)})]
    m = SurfaceModel.base(base_curves())
    names = list(m.divisors)
    for chart, pt, name, kw in steps:
        m = m.blow_up(chart, pt, name, **kw)
        for i, a in enumerate(names):
            ta = transforms(m, a).total
            for b in names[i:]:
                da, db = m.divisor(a).h, m.divisor(b).h
                if combo_dot(m, ta, transforms(m, b).total) != da[0] * db[1] + da[1] * db[0]:
                    return False
    return True


# --- locus -------------------------------------------------------------------

def parse_window(text: str) -> Window:
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError("--window needs xmin,xmax,ymin,ymax")
    try:
        vals = [Fraction(p.strip()) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"window bounds must be rational numbers: {text!r}") from None
    try:
        return Window(*vals)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_locus(window: str = DEFAULT_WINDOW, samples: int = DEFAULT_SAMPLES):
    from ..family import diagonal_punctures

    if samples < 2:
        raise UsageError("--samples must be at least 2")
    win = parse_window(window)
    svg, drawn = locus_svg(win, samples)
    doc = ReportDocument("locus", {"window": win.as_list(), "samples": samples})
    doc.payload = {
        "drawn": drawn,
        "diagonal_intersections": [
            {"component": p.component, "kind": p.kind,
             "minpoly": _minpoly_text(p.minpoly), "coefficients": list(p.minpoly),
             "roots": [format_scalar(r) for r in p.roots], "real": p.real,
             "multiplicity": p.multiplicity}
            for p in diagonal_punctures()
        ],
    }
    return doc, svg


def _minpoly_text(coeffs) -> str:
    return minpoly_str(coeffs, "x") if coeffs else "x=inf"


# --- blowup ------------------------------------------------------------------

def cmd_blowup() -> ReportDocument:
    from .. import surface

    model = surface.paper_model()
    limits = surface.exceptional_limits(model)
    names = ["Vhat", *surface.EXCEPTIONAL, *surface.L_NAMES, *surface.Z_NAMES]
    graph, boundary = surface.incidence_and_boundary(model, ["Vhat", "E_inf", "E_q"])
    doc = ReportDocument("blowup")
    data = surface.model_to_json(model)
    data["intersection_matrix"] = {"divisors": names,
                                   "matrix": surface.intersection_matrix(model, names)}
    data["incidence_graph"] = surface.graph_to_json(graph, boundary)
    data["incidence_graph"]["edge_pairs"] = graph.edge_pairs()
    data["total_transform_V"] = surface.transforms(model, "Vhat").total
    for key, name in (("z_inf", "E_inf"), ("z_q", "E_q")):
        lim = limits[name]
        data[key] = lim.to_str()
        data[f"{key}_degenerate"] = [
            {"parameter": format_scalar(d.parameter), "value": format_scalar(d.value),
             "multiplicity": d.multiplicity, "meets": list(d.meets), "meaning": list(d.meaning)}
            for d in lim.degenerate
        ]
    doc.payload = data
    return doc


# --- strata / classify -------------------------------------------------------

def cmd_strata() -> ReportDocument:
    from .. import strata

    eq = strata.equalizer_strata()
    doc = ReportDocument("strata")
    doc.payload = {
        "boundary_strata": [r.to_json() for r in eq.records],
        "in_AV": [r.partition for r in eq.admitted],
        "domain_strata": [r.partition for r in strata.enumerate_boundary_strata(strata.DOMAIN_LABELS)],
    }
    return doc


def cmd_classify(x_text: str, y_text: str) -> ReportDocument:
    from .. import family

    try:
        x, y = parse_scalar(x_text), parse_scalar(y_text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    c = family.classify_parameter(x, y)
    doc = ReportDocument("classify", {"x": x_text, "y": y_text})
    out = {"point": [format_scalar(x), format_scalar(y)], "classification": c.label,
           "interior": c.interior, "on_L": list(c.on_L), "on_Z": list(c.on_Z)}
    if c.interior:
        F = family.family_map(x, y)
        cd = family.critical_data(F)
        images = {"F(0)": F(Fraction(0)), "F(inf)": F(INF), "F(1)": F(Fraction(1)), "F(x)": F(x)}
        expected = {"F(0)": INF, "F(inf)": Fraction(1), "F(1)": y, "F(x)": Fraction(0)}
        ok = images == expected and cd.values[1] == family.z_of(x, y)
        out.update({
            "r": format_scalar(F.r), "z": format_scalar(family.z_of(x, y)),
            "t_c": format_scalar(cd.t_c), "F(t_c)": format_scalar(cd.values[1]),
            "cycle": {k: format_scalar(v) for k, v in images.items()},
            "orbit": [format_scalar(v) for v in family.four_cycle(x, y)],
            "periodic": family.four_cycle(x, y)[-1] == 0,
        })
        doc.add("cycle", ok, {})
    doc.payload = out
    return doc


# --- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="per4", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in (("verify", "run the certificate suite"),
                           ("locus", "draw the real curves and list diagonal intersections"),
                           ("blowup", "describe the blown-up surface"),
                           ("strata", "tabulate boundary strata"),
                           ("classify", "classify a parameter point")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--json-out", metavar="PATH")
        if name == "locus":
            sp.add_argument("--svg-out", metavar="PATH")
            sp.add_argument("--window", default=DEFAULT_WINDOW)
            sp.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
        if name == "classify":
            sp.add_argument("x")
            sp.add_argument("y")
    return p


def _emit(doc: ReportDocument, path: str | None) -> None:
    text = doc.dumps()
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None, *, components=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with Timer() as t:
            svg = None
            if args.command == "verify":
                doc = cmd_verify(components)
            elif args.command == "locus":
                doc, svg = cmd_locus(args.window, args.samples)
            elif args.command == "blowup":
                doc = cmd_blowup()
            elif args.command == "strata":
                doc = cmd_strata()
            else:
                doc = cmd_classify(args.x, args.y)
        doc.seconds = t.seconds
        if svg is not None and args.svg_out:
            with open(args.svg_out, "w", encoding="utf-8") as fh:
                fh.write(svg)
        _emit(doc, args.json_out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"per4: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal error
        print(f"per4: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 1 if doc.failed else 0


if __name__ == "__main__":
    sys.exit(main())
