"""Exception hierarchy shared by the library and the CLI."""


class MaxPlusError(Exception):
    """Base class for every error raised by mpqueue."""


class DimensionError(MaxPlusError, ValueError):
    """Operands of a matrix operation are not conformable."""


class InputError(MaxPlusError, ValueError):
    """A spec, profile, horizon or config value is malformed.

    ``field`` names the offending item when one can be pinned down.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class UnsupportedTopologyError(MaxPlusError):
    """The requested representation does not exist for this system."""


class EnumerationBudgetError(MaxPlusError):
    """Chain enumeration would exceed the configured budget."""
