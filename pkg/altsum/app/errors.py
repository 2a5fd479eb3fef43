from typing import Any, Dict


class AltsumError(Exception):
    """
    Base error for every domain failure.
    Carries a machine-readable kind plus a context dict for the JSON error object.
    """

    kind = "domain_error"

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context: Dict[str, Any] = context


class DivisionByZero(AltsumError):
    kind = "division_by_zero"


class OutOfRange(AltsumError):
    kind = "out_of_range"


class GuardExceeded(AltsumError):
    kind = "guard_exceeded"


class UnknownName(AltsumError):
    kind = "unknown_name"


class HypothesisRefused(AltsumError):
    """Monotone-differences check failed; context has the failing order and n."""

    kind = "hypothesis_failed"


class Unreachable(AltsumError):
    kind = "eps_unreachable"


class NoKnownLimit(AltsumError):
    kind = "no_known_limit"


class Undecidable(AltsumError):
    """The reference constant is too coarse to decide a comparison."""

    kind = "undecidable"


class UsageError(AltsumError):
    kind = "usage_error"


class NotExact(AltsumError):
    """The term family has no exact rational value here; only float64 applies."""

    kind = "not_exact"
