"""Exception types shared across the package."""


class IsingLabError(Exception):
    pass


class GraphParseError(IsingLabError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class VertexRangeError(GraphParseError):
    pass


class InvalidMoveError(IsingLabError, ValueError):
    """Raised for graph operations that are undefined on the given edge (e.g. contracting a loop)."""


class CapacityError(IsingLabError):
    """An enumeration would exceed its configured cap. Never silently truncated."""

    def __init__(self, message, achieved=None):
        self.achieved = achieved
        super().__init__(message)


class DomainError(IsingLabError, ValueError):
    pass


class OutOfRegionError(DomainError):
    pass


class RootFindingError(IsingLabError):
    def __init__(self, message, iterates=None, residuals=None):
        self.iterates = iterates
        self.residuals = residuals
        super().__init__(message)


class CertificateViolation(IsingLabError):
    """A zero-freeness certificate held but the polynomial vanished."""
