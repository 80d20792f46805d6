"""Exceptions shared across the engine."""


class EngineError(Exception):
    """Base class for all engine errors."""


class HalvingError(EngineError):
    """Halving an exponent form produced non-integral coefficients."""


class DivisionByZero(EngineError):
    """Division by a zero scalar."""


class PoleError(EngineError):
    """A substitution made a denominator vanish."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class DepthError(EngineError):
    """A computation left the configured weight-depth window."""


class MalformedPoint(EngineError):
    """A torus point violating d1 = d2*d3 or with non-invertible entries."""


class BranchError(EngineError):
    """No square root of a torus-point entry exists in the working field."""


class PathError(EngineError):
    """No lowering-monomial path between two representation indices."""


class DomainError(EngineError):
    """A weight outside the domain required by the operation."""


class RegularityError(EngineError):
    """A coefficient expected to be a Laurent polynomial is not."""


class ConventionError(EngineError):
    """R-matrix calibration failed; ordering or bracket conventions are wrong."""


class ContradictionError(EngineError):
    """A divisibility or non-vanishing fact guaranteed by the theory failed."""


class FiltrationError(EngineError):
    """A vector lies outside the filtration layer required by the operation."""
