"""Exception types shared across the package.

Everything raised on purpose derives from DpdError so callers (and the
command line driver) can separate expected failures from genuine bugs.
"""


class DpdError(Exception):
    """Base class for all errors raised deliberately by this package."""


class DomainError(DpdError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DpdValidityError(DomainError):
    """Shape parameter too small for the requested DPD tuning parameter.

    The gamma and Weibull per-term integrals only exist when the shape
    satisfies a > alpha/(1+alpha).
    """


class QuadratureError(DpdError):
    """Numerical integration did not reach the requested accuracy.

    Carries the best estimate and its error bound so callers that can
    tolerate a loose integral may still inspect it.
    """

    def __init__(self, message, value=None, err_estimate=None):
        super().__init__(message)
        self.value = value
        self.err_estimate = err_estimate


class BracketingError(DpdError):
    """A root finder was handed an interval without a sign change."""


class InversionError(DpdError):
    """CDF inversion failed to bracket or converge on the target probability."""


class FitError(DpdError):
    """Estimation failed (degenerate sample, optimizer breakdown, bad start)."""


class SingularInformationError(DpdError):
    """The information matrix J is numerically singular or not positive definite."""


class TuningError(DpdError):
    """A leave-one-out refit inside the tuning sweep failed."""


class SelectionError(DpdError):
    """No candidate family could be fitted at any tuning parameter."""


class DataError(DpdError, ValueError):
    """Input data violates the expected schema or contains unusable values."""
