"""
Exceptions raised by the State Transition Algorithm library.

Everything derives from StaError so callers can catch the whole family;
the more specific bases (ValueError, KeyError) keep the usual idioms working.
"""


class StaError(Exception):
    """Base class for all library errors."""


class InvalidRange(StaError, ValueError):
    """A sampling interval or index range is empty or reversed."""


class DegenerateState(StaError, ArithmeticError):
    """The rotation operator was asked to rotate the zero vector."""


class DegenerateDirection(StaError, ArithmeticError):
    """Translation has no direction: current and previous best coincide."""


class ConfigError(StaError, ValueError):
    """Invalid run, experiment or CLI configuration.

    `keys` lists the offending configuration keys when they are known.
    """

    def __init__(self, message: str, keys: list[str] | None = None):
        super().__init__(message)
        self.keys = list(keys or [])

    def __reduce__(self):
        # keys survive the trip back from a worker process
        return type(self), (str(self), self.keys)


class NotFound(StaError, KeyError):
    """A benchmark name is not in the registry."""

    def __str__(self) -> str:
        # KeyError quotes its argument; keep the plain message
        return str(self.args[0]) if self.args else ""
