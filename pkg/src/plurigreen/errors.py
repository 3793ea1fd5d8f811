"""Exception hierarchy shared by all modules.

Every exception carries a short machine-readable ``code`` used by the CLI
when emitting error JSON.
"""

from __future__ import annotations


class PlurigreenError(Exception):
    """Base class for all domain errors."""

    code = "ERROR"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details


class DimensionMismatchError(PlurigreenError):
    code = "DIMENSION_MISMATCH"


class LaurentDomainError(PlurigreenError):
    """Negative exponent evaluated at a zero coordinate, or Laurent input
    where only ordinary polynomials are allowed."""

    code = "LAURENT_DOMAIN"


class CompositionError(PlurigreenError):
    code = "ILLEGAL_COMPOSITION"


class SpecError(PlurigreenError):
    """Malformed variety / compact-set / polynomial specification."""

    code = "SPEC_INVALID"


class SpecIOError(PlurigreenError):
    code = "SPEC_IO"


class UnsupportedError(PlurigreenError):
    """Requested query is not resolvable with the given description."""

    code = "UNSUPPORTED"


class InvalidSplitError(SpecError):
    """Coordinate-split growth bound fails on sampled variety points."""

    code = "INVALID_SPLIT"


class RejectionStarvedError(PlurigreenError):
    code = "REJECTION_STARVED"


class BracketingFailedError(PlurigreenError):
    code = "BRACKETING_FAILED"


class SolverStallError(PlurigreenError):
    code = "SOLVER_STALL"


class EmptyFiberError(PlurigreenError):
    """No preimage point found; ``details['best_residual']`` separates
    'target outside the image' from plain solver failure."""

    code = "EMPTY_FIBER"


class BallTooSmallError(PlurigreenError):
    code = "BALL_TOO_SMALL"


class BoundedMapError(PlurigreenError):
    code = "F_BOUNDED"


class NoChartError(PlurigreenError):
    code = "NO_CHART"


class InconsistentDesignError(PlurigreenError):
    code = "INCONSISTENT_DESIGNS"
