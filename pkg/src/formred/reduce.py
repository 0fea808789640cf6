"""End-to-end reduction: zero map -> fundamental-domain matrix -> reduced form.

Both zero maps are supported: "centroid" (closed-form hyperbolic center of
mass of the roots) and "julia" (distance-sum minimizer).  A reduction report
records the zero point, the matrix, the transformed form and the heights; the
report serializes deterministically (exact coefficients as strings, point
coordinates as 30-significant-digit decimals, exact rational t and u^2
whenever the centroid path stayed rational).
"""

import json
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from . import centroid as _centroid
from .errors import FormParseError, RealRootDetected
from .forms import BinaryForm, UnimodularMatrix, normalized_height, transform
from .hyperbolic import (
    PointH2,
    dist_h2,
    in_fundamental_domain,
    mobius_h2,
    reduce_point_exact,
    reduce_point_to_fundamental_domain,
)
from .julia import julia_zero_real
from .roots import real_quadratic_factors, root_set

SCHEMA_VERSION = 1
METHODS = ("centroid", "julia")


def format_decimal(value, digits=30):
    """Deterministic decimal string with the given number of significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        if isinstance(value, Fraction):
            d = Decimal(value.numerator) / Decimal(value.denominator)
        elif isinstance(value, int):
            d = +Decimal(value)
        else:
            d = +Decimal(float(value))
    return str(d)


def format_decimal_sqrt(value, digits=30):
    """Decimal string of sqrt(value) for an exact nonnegative Fraction."""
    with localcontext() as ctx:
        ctx.prec = digits
        d = (Decimal(value.numerator) / Decimal(value.denominator)).sqrt()
    return str(d)


@dataclass(frozen=True)
class ZeroPoint:
    """A zero-map value with optional exact rational coordinates (t, u^2)."""

    point: PointH2
    t_exact: Fraction | None = None
    u_sq_exact: Fraction | None = None

    def to_dict(self, digits=30):
        out = {
            "x": format_decimal(self.t_exact if self.t_exact is not None else self.point.x, digits),
            "y": (format_decimal_sqrt(self.u_sq_exact, digits)
                  if self.u_sq_exact is not None else format_decimal(self.point.y, digits)),
        }
        out["exact_t"] = str(self.t_exact) if self.t_exact is not None else None
        out["exact_u_sq"] = str(self.u_sq_exact) if self.u_sq_exact is not None else None
        return out


@dataclass(frozen=True)
class ReductionReport:
    input: BinaryForm
    method: str
    zero_point: ZeroPoint
    matrix: UnimodularMatrix
    reduced: BinaryForm
    height_before: Fraction
    height_after: Fraction
    reduced_point: ZeroPoint
    diagnostics: dict

    def to_dict(self, digits=30):
        return {
            "schema_version": SCHEMA_VERSION,
            "method": self.method,
            "input": {"degree": self.input.degree,
                      "coefficients": [str(c) for c in self.input.coeffs]},
            "zero_point": self.zero_point.to_dict(digits),
            "matrix": [[self.matrix.a, self.matrix.b], [self.matrix.c, self.matrix.d]],
            "reduced": {"degree": self.reduced.degree,
                        "coefficients": [str(c) for c in self.reduced.coeffs]},
            "reduced_point": self.reduced_point.to_dict(digits),
            "height_before": str(self.height_before),
            "height_after": str(self.height_after),
            "diagnostics": self.diagnostics,
        }

    def to_json(self, digits=30):
        return json.dumps(self.to_dict(digits), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class ComparisonReport:
    centroid_report: ReductionReport
    julia_report: ReductionReport
    zero_gap: float
    same_matrix: bool
    same_reduced_form: bool

    def to_dict(self, digits=30):
        return {
            "schema_version": SCHEMA_VERSION,
            "centroid": self.centroid_report.to_dict(digits),
            "julia": self.julia_report.to_dict(digits),
            "zero_gap": format_decimal(self.zero_gap, digits),
            "same_matrix": self.same_matrix,
            "same_reduced_form": self.same_reduced_form,
        }


def _check_method(method):
    if method not in METHODS:
        raise FormParseError(f"unknown method {method!r}; expected one of {METHODS}")


def zero_point(F, method="centroid", tol=1e-10, rootset=None):
    """Zero-map value of F under the requested method, with diagnostics."""
    _check_method(method)
    rs = rootset if rootset is not None else root_set(F, tol=tol)
    if method == "centroid":
        factors = real_quadratic_factors(F, tol=tol, rootset=rs)
        exact = _centroid.center_from_quadratic_factors_exact(factors)
        if exact is not None:
            t, u_sq = exact
            pt = PointH2(float(t), math.sqrt(float(u_sq)))
            zp = ZeroPoint(pt, t, u_sq)
        else:
            pt = _centroid.center_from_quadratic_factors(factors)
            zp = ZeroPoint(pt)
        xs = [p.x for p in rs.pairs]
        ys = [p.y for p in rs.pairs]
        r1 = sum((pt.x - x) / y for x, y in zip(xs, ys))
        r2 = sum((pt.y * pt.y - _centroid.q_of_t(pt.x, x, y)) / y for x, y in zip(xs, ys))
        diag = {"root_residual": rs.residual, "exact": exact is not None,
                "system_residuals": [r1, r2]}
        return zp, diag
    result = julia_zero_real(rs, tol=tol)
    diag = {"root_residual": rs.residual, "exact": False,
            "gradient_norm": result.gradient_norm, "iterations": result.iterations,
            "objective": result.objective}
    return ZeroPoint(result.point), diag


def reduce_form(F, method="centroid", tol=1e-10):
    """Reduce F: move its zero-map value into the fundamental domain.

    Works for real forms of even degree without real roots; raises
    RealRootDetected otherwise.
    """
    _check_method(method)
    if F.degree % 2:
        raise RealRootDetected("odd-degree real forms always have a real root")
    zp, diag = zero_point(F, method=method, tol=tol)
    if zp.t_exact is not None:
        t_red, u_sq_red, M = reduce_point_exact(zp.t_exact, zp.u_sq_exact)
        red_pt = ZeroPoint(PointH2(float(t_red), math.sqrt(float(u_sq_red))), t_red, u_sq_red)
    else:
        pt, M = reduce_point_to_fundamental_domain(zp.point)
        red_pt = ZeroPoint(pt)
    reduced = transform(F, M)
    return ReductionReport(
        input=F,
        method=method,
        zero_point=zp,
        matrix=M,
        reduced=reduced,
        height_before=normalized_height(F),
        height_after=normalized_height(reduced),
        reduced_point=red_pt,
        diagnostics=diag,
    )


def is_reduced(F, method="centroid", tol=1e-10):
    """True when the zero-map value of F already lies in the closed domain."""
    zp, _ = zero_point(F, method=method, tol=tol)
    return in_fundamental_domain(zp.point)


def compare_methods(F, tol=1e-10):
    """Run both reductions and measure how far apart the two zero maps land."""
    rc = reduce_form(F, method="centroid", tol=tol)
    rj = reduce_form(F, method="julia", tol=tol)
    gap = dist_h2(rc.zero_point.point, rj.zero_point.point)
    return ComparisonReport(
        centroid_report=rc,
        julia_report=rj,
        zero_gap=gap,
        same_matrix=rc.matrix == rj.matrix,
        same_reduced_form=rc.reduced == rj.reduced,
    )


def reduced_zero_matches(report, tol=1e-9):
    """Consistency check: the recorded matrix really moves the zero into the domain."""
    moved = mobius_h2(report.zero_point.point, report.matrix)
    return (in_fundamental_domain(moved, tol)
            and dist_h2(moved, report.reduced_point.point) <= tol)
