"""Exception types shared across the package."""


class FormReductionError(Exception):
    """Base class for all errors raised by formred."""


class FormParseError(FormReductionError, ValueError):
    """Malformed form input: bad syntax, degree < 2, zero leading coefficient."""


class RealRootDetected(FormReductionError):
    """The form has a real (or numerically real) root; reduction is undefined."""


class UnpairedRoot(FormReductionError):
    """Conjugate pairing of the computed roots failed."""


class ConvergenceFailure(FormReductionError):
    """An iterative solver hit its iteration cap without converging."""


class NotPositiveDefinite(FormReductionError, ValueError):
    """The operation requires a positive definite form."""


class DegenerateCombination(FormReductionError, ValueError):
    """A convex combination collapsed onto a single boundary point."""
