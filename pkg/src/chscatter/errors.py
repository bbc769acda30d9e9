"""Exception hierarchy shared by the library and the CLI exit-code contract."""


class ChscatterError(Exception):
    """Base class for all errors raised by this package."""


class InvariantError(ChscatterError):
    """Input data or configuration violates a documented invariant (CLI exit 2)."""


class DomainError(ChscatterError):
    """A query or grid lies outside the admissible domain/range (CLI exit 3)."""


class ConvergenceError(ChscatterError):
    """An iterative solver failed to converge or produced non-finite state (CLI exit 4).

    Carries the last residual seen by the solver in ``residual`` when available.
    """

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual
