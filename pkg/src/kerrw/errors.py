"""Exception types shared across the package."""


class KerrWError(Exception):
    """Base class for all package-specific errors."""


class SizeError(KerrWError):
    """A dimension precondition was violated (wrong length, photon count out of range)."""


class ValidationError(KerrWError):
    """A numerical invariant was violated (normalization, parameter range)."""


class UnsupportedError(KerrWError):
    """The requested preset or mode is not defined."""


class ResourceLimitError(KerrWError):
    """A configured search ceiling was exceeded without success."""
