"""Exception hierarchy shared by every pneufold layer.

Two broad families matter to callers: :class:`InputError` covers bad user
input (rejected before any numerics run), everything else under
:class:`PneufoldError` is a numeric/solver failure on input that was
structurally valid.  The CLI maps the first family to exit code 2 and the
second to exit code 3; the HTTP service maps them to 422 and 409.
"""

from __future__ import annotations


class PneufoldError(Exception):
    """Base class for all package errors."""


class InputError(PneufoldError, ValueError):
    """Invalid input: violated precondition, malformed file, bad field value."""


class InsufficientDataError(InputError):
    """A dataset is too small for the requested operation."""


class ConditioningError(PneufoldError):
    """A linear system is rank deficient or numerically singular."""

    def __init__(self, message: str, condition_number: float | None = None):
        super().__init__(message)
        self.condition_number = condition_number


class SaturationError(PneufoldError):
    """The pressure load exceeds what the wall material can balance below
    the configured stretch bound."""

    def __init__(
        self,
        message: str,
        pressure_kpa: float | None = None,
        gradient_at_lambda_max: float | None = None,
        required_gradient: float | None = None,
        partial_states: list | None = None,
    ):
        super().__init__(message)
        self.pressure_kpa = pressure_kpa
        self.gradient_at_lambda_max = gradient_at_lambda_max
        self.required_gradient = required_gradient
        # Populated when a sweep dies partway: states solved so far.
        self.partial_states = partial_states


class SolverError(PneufoldError):
    """Root finding failed for a reason other than saturation, e.g. a
    non-monotone strain-energy gradient (pathological material)."""


class CalibrationError(PneufoldError):
    """No candidate exponent in the search range could be scored."""
