"""Reduction of totally complex real binary forms via hyperbolic zero maps."""

from .errors import (
    ConvergenceFailure,
    DegenerateCombination,
    FormParseError,
    FormReductionError,
    NotPositiveDefinite,
    RealRootDetected,
    UnpairedRoot,
)
from .forms import (
    BinaryForm,
    RealQuadraticFactor,
    UnimodularMatrix,
    evaluate,
    from_quadratic_factors,
    height,
    normalized_height,
    parse,
    serialize,
    transform,
)
from .hyperbolic import PointH2, PointH3, HyperboloidPoint, INFINITY
from .reduce import ReductionReport, ComparisonReport, compare_methods, is_reduced, reduce_form

__version__ = "0.1.0"

__all__ = [
    "BinaryForm",
    "ComparisonReport",
    "ConvergenceFailure",
    "DegenerateCombination",
    "FormParseError",
    "FormReductionError",
    "HyperboloidPoint",
    "INFINITY",
    "NotPositiveDefinite",
    "PointH2",
    "PointH3",
    "RealQuadraticFactor",
    "RealRootDetected",
    "ReductionReport",
    "UnimodularMatrix",
    "UnpairedRoot",
    "compare_methods",
    "evaluate",
    "from_quadratic_factors",
    "height",
    "is_reduced",
    "normalized_height",
    "parse",
    "reduce_form",
    "serialize",
    "transform",
    "__version__",
]
