"""SVG rendering of the real slice of L and Z, with the diagonal.

Every vertex is computed exactly at a rational abscissa; the only decimal
conversion is the final one to 15 significant digits.
"""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction

from ..exactfield import BiPoly, RatExpr
from ..family import L_COMPONENTS, Z_COMPONENTS

WIDTH = HEIGHT = 500
DIGITS = 15

STYLE = {
    "L": 'stroke="#c0392b" stroke-width="1.5" fill="none"',
    "L-inf": 'stroke="#c0392b" stroke-width="1.5" stroke-dasharray="6,4" fill="none"',
    "Z": 'stroke="#2c3e50" stroke-width="1.5" fill="none"',
    "diagonal": 'stroke="#27ae60" stroke-width="2" stroke-dasharray="2,3" fill="none"',
}


def decimal_str(q: Fraction) -> str:
    """Round an exact rational once to DIGITS significant digits."""
    with localcontext() as ctx:
        ctx.prec = DIGITS
        d = Decimal(q.numerator) / Decimal(q.denominator)
    text = format(d.normalize(), "f")
    return "0" if text in ("-0", "") else text


class Window:
    def __init__(self, xmin, xmax, ymin, ymax):
        self.xmin, self.xmax, self.ymin, self.ymax = (Fraction(v) for v in (xmin, xmax, ymin, ymax))
        if self.xmin >= self.xmax or self.ymin >= self.ymax:
            raise ValueError("window must satisfy xmin < xmax and ymin < ymax")

    def px(self, x: Fraction) -> Fraction:
        return (x - self.xmin) / (self.xmax - self.xmin) * WIDTH

    def py(self, y: Fraction) -> Fraction:
        return (self.ymax - y) / (self.ymax - self.ymin) * HEIGHT

    def abscissae(self, samples: int) -> list[Fraction]:
        step = (self.xmax - self.xmin) / (samples - 1)
        return [self.xmin + k * step for k in range(samples)]

    def as_list(self) -> list[str]:
        return [str(v) for v in (self.xmin, self.xmax, self.ymin, self.ymax)]


def solved_form(affine) -> RatExpr:
    """y as a rational function of x for a curve of degree 1 in y."""
    if affine.deg_y != 1:
        raise ValueError("curve is not a graph over the x-axis")
    coeff_y, rest = {}, {}
    for (i, j), c in affine.items():
        (coeff_y if j == 1 else rest)[(i, 0)] = c
    return RatExpr(-BiPoly(rest), BiPoly(coeff_y))


def _graph_path(expr: RatExpr, win: Window, xs) -> tuple[str, list[Fraction]]:
    """Polyline through exact samples, restarted across poles and far-off values."""
    span = win.ymax - win.ymin
    lo, hi = win.ymin - 10 * span, win.ymax + 10 * span
    parts, pen_down, skipped = [], False, []
    prev_sign = None
    for x in xs:
        den = expr.den.eval(x, 0)
        sign = (den > 0) - (den < 0)
        if den == 0:
            skipped.append(x)
            pen_down = False
            prev_sign = None
            continue
        if prev_sign is not None and sign != prev_sign:
            pen_down = False
        prev_sign = sign
        y = expr.num.eval(x, 0) / den
        if not lo <= y <= hi:
            pen_down = False
            continue
        cmd = "L" if pen_down else "M"
        parts.append(f"{cmd}{decimal_str(win.px(x))},{decimal_str(win.py(y))}")
        pen_down = True
    return " ".join(parts), skipped


def locus_svg(win: Window, samples: int) -> tuple[str, dict]:
    """The SVG document and a summary of what was drawn."""
    xs = win.abscissae(samples)
    paths = []
    drawn = []
    for c in L_COMPONENTS:
        axis, value = c.name.split("=")
        if value == "inf":
            # schematic: the line at infinity sits on the far edge of the frame
            d = f"M{WIDTH},0 L{WIDTH},{HEIGHT}" if axis == "x" else f"M0,0 L{WIDTH},0"
            cls = "L-inf"
        else:
            v = Fraction(value)
            if axis == "x":
                p = decimal_str(win.px(v))
                d = f"M{p},0 L{p},{HEIGHT}"
            else:
                p = decimal_str(win.py(v))
                d = f"M0,{p} L{WIDTH},{p}"
            cls = "L"
        paths.append((c.name, cls, d))
        drawn.append({"name": c.name, "kind": "L", "schematic": value == "inf"})
    for c in Z_COMPONENTS:
        expr = solved_form(c.affine)
        d, skipped = _graph_path(expr, win, xs)
        paths.append((c.name, "Z", d))
        drawn.append({"name": c.name, "kind": "Z", "solved_form": "y = " + expr.to_str(),
                      "omitted_abscissae": [str(x) for x in skipped]})
    d, _ = _graph_path(RatExpr.X(), win, xs)
    paths.append(("diagonal", "diagonal", d))
    drawn.append({"name": "diagonal", "kind": "V", "solved_form": "y = x"})

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<defs><clipPath id="frame"><rect x="0" y="0" '
        f'width="{WIDTH}" height="{HEIGHT}"/></clipPath></defs>',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white" stroke="#999"/>',
        '<g clip-path="url(#frame)">',
    ]
    for name, cls, d in paths:
        lines.append(f'<path id="{_svg_id(name)}" class="{cls}" {STYLE[cls]} d="{d}"/>')
    lines += ["</g>", "</svg>", ""]
    return "\n".join(lines), {"paths": len(paths), "curves": drawn}


def _svg_id(name: str) -> str:
    return name.replace("=", "-").replace("inf", "infinity")
