"""Exception types raised across the package."""


class VcatError(Exception):
    """Base class for all package errors."""


class ShapeError(VcatError):
    """Domain/codomain or instance mismatch between composed pieces."""


class LawError(VcatError):
    """A structure failed a law check that its constructor enforces."""


class UniversalPropertyError(VcatError):
    """Zero or multiple factorizations where exactly one was required."""


class UnverifiedError(VcatError):
    """An operation required a verified opfibration and did not get one."""


class FixtureError(VcatError):
    """Fixture text could not be parsed or resolved."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
