"""
Exception hierarchy for volprod.

Library modules raise these; only the command line layer turns them into
exit codes.
"""

from typing import Optional


class VolprodError(Exception):
    """Base class for every error raised by volprod."""


class GeometryError(VolprodError):
    """A body or map does not satisfy a geometric precondition."""


class DegenerateInput(GeometryError):
    """Hull, clip or construction produced (near) zero area."""


class SingularMap(GeometryError):
    """A linear map with vanishing determinant was used as a transform."""


class CentreNotInterior(GeometryError):
    """The polarity centre is not strictly inside the body."""

    def __init__(self, message: str, edge: Optional[int] = None):
        super().__init__(message)
        self.edge = edge


class NotSymmetric(GeometryError):
    """The body lacks the central or rotational symmetry an operation needs."""


class BadConfiguration(GeometryError):
    """A sector configuration violates the supporting-line condition."""


class ParameterError(VolprodError):
    """Base class for bad numeric parameters."""


class InvalidParameter(ParameterError):
    """A scalar parameter is outside its admissible range."""


class VerificationError(VolprodError):
    """Base class for failures of the numeric procedures themselves."""


class NoConvergence(VerificationError):
    """An iterative solver hit its iteration cap."""

    def __init__(self, message: str, iterations: int = 0, residual: float = float("nan")):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual


class HypothesisViolated(VerificationError):
    """A precondition of a lemma or theorem check does not hold."""

    def __init__(self, message: str, hypothesis: str = ""):
        super().__init__(message)
        self.hypothesis = hypothesis


class ConfigError(ValueError, VolprodError):
    """Invalid run configuration."""


class DocumentError(ValueError, VolprodError):
    """A body document or vertex file is malformed."""
