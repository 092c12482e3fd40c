"""Exact arithmetic kernel: rationals, quadratic fields, polynomials, rational functions."""

from .bipoly import BiPoly, NotExactError, X, Y, gcd, sqrt_poly
from .ratexpr import IndeterminateError, PoleError, RatExpr
from .scalars import (
    INF,
    FieldMismatchError,
    Infinity,
    QuadElem,
    QuadraticField,
    QuadraticRoots,
    as_fraction,
    format_scalar,
    is_inf,
    minpoly_str,
    parse_scalar,
    rational_roots,
    rational_sqrt,
    solve_quadratic,
)
from .unipoly import RootsUnavailable, UniPoly, exact_roots, resultant

__all__ = [
    "BiPoly", "FieldMismatchError", "INF", "IndeterminateError", "Infinity", "NotExactError",
    "PoleError", "QuadElem", "QuadraticField", "QuadraticRoots", "RatExpr", "RootsUnavailable",
    "UniPoly", "X", "Y", "as_fraction", "exact_roots", "format_scalar", "gcd", "is_inf",
    "minpoly_str", "parse_scalar", "poly_arith", "quad_ext", "rational_roots", "rational_sqrt",
    "resultant", "solve_quadratic", "sqrt_poly",
]


def poly_arith(a, b, op: str):
    """Dispatch add/sub/mul/divmod/gcd on two BiPoly or two UniPoly operands."""
    if type(a) is not type(b):
        raise TypeError(f"mixed operand types {type(a).__name__} and {type(b).__name__}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divmod":
        if not isinstance(a, UniPoly):
            raise TypeError("divmod requires univariate operands")
        return a.divmod(b)
    if op == "gcd":
        return UniPoly.gcd(a, b) if isinstance(a, UniPoly) else gcd(a, b)
    raise ValueError(f"unknown operation {op!r}")


def quad_ext(minpoly, a=0, b=0) -> QuadElem:
    """The element a + b*alpha of Q[alpha]/(minpoly); minpoly given low-to-high."""
    if isinstance(minpoly, UniPoly):
        minpoly = minpoly.coeffs
    return QuadraticField(minpoly)(a, b)
