"""Exception types shared by the engine and the command line."""


class WeightError(Exception):
    """Base class for all engine errors."""


class StructureError(WeightError, ValueError):
    """Malformed place structure, embedding index or vector length."""


class DomainError(WeightError, ValueError):
    """Input outside the domain of an operation (e.g. a non-positive ``k`` entry)."""


class InapplicableError(WeightError):
    """The hypotheses of a check are not met; this is not a falsification."""


class InvariantViolation(WeightError, AssertionError):
    """An identity that must hold by construction failed; indicates a bug."""


class StripLimitExceeded(WeightError, RuntimeError):
    """Hasse stripping did not reach the minimal cone within its step budget."""
