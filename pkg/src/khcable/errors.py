"""Exception types shared across the package."""


class KhCableError(Exception):
    """Base class for errors raised by this package."""


class ParseError(KhCableError, ValueError):
    """Malformed PD, nanoword or command-line input."""


class EnumerationCapError(KhCableError, RuntimeError):
    """A state enumeration would exceed the configured resolution cap."""

    def __init__(self, needed: int, cap: int):
        super().__init__(f"state enumeration needs {needed} resolutions, cap is {cap}")
        self.needed = needed
        self.cap = cap


class DifferentialLawError(KhCableError, ArithmeticError):
    """A composite of differentials that must vanish does not."""

    def __init__(self, message: str, where=None):
        super().__init__(message)
        self.where = where


class IllegalMoveError(KhCableError, ValueError):
    """A Reidemeister move was requested at a site that does not admit it."""
