"""Exception hierarchy shared by every weblab module."""


class WeblabError(Exception):
    """Base class for all errors raised by weblab."""


class AlgebraError(WeblabError, ValueError):
    """Invalid input to an exact-algebra routine (zero form, degenerate resultant, ...)."""


class WebError(WeblabError, ValueError):
    """A web or form violates the preconditions of a geometric operation."""


class MapError(WeblabError, ValueError):
    """A plane map is not dominant, contracts a curve, or has base points."""


class SamplingError(WeblabError, RuntimeError):
    """Random genericity sampling did not produce a consistent answer."""


class TrackingError(WeblabError, RuntimeError):
    """Numerical continuation of web directions failed."""


class ParseError(WeblabError, ValueError):
    """Syntax or typing error in the expression grammar."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
