"""Exception hierarchy shared by all qdesign modules."""


class QDesignError(Exception):
    """Base class for every error raised by qdesign."""


class DimensionError(QDesignError, ValueError):
    """Operands have incompatible or missing dimensions / bipartitions."""


class ValidationError(QDesignError, ValueError):
    """A state, ensemble or file violates one of its invariants."""


class UnsupportedError(QDesignError, ValueError):
    """The requested case is outside what the library implements."""


class CapacityError(QDesignError, ValueError):
    """The request would exceed a size guard (factorial or dense N^t growth)."""


class ConstructionError(QDesignError, RuntimeError):
    """Two independent construction routes disagree (corrupted table data)."""


class UnverifiedDesignError(QDesignError, ValueError):
    """An ensemble used as a measurement design failed its design check."""

    def __init__(self, message, delta=None):
        super().__init__(message)
        self.delta = delta
