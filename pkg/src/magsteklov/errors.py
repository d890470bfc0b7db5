"""Exception hierarchy shared by all modules.

Every error raised by the library derives from :class:`SteklovError`; the CLI
maps these to exit status 2 (usage) and reports the class name.
"""


class SteklovError(Exception):
    """Base class for library errors."""


class NoSignChange(SteklovError):
    pass


class MaxIterations(SteklovError):
    pass


class MaxSubdivisions(SteklovError):
    pass


class Blowup(SteklovError):
    pass


class NonFinite(SteklovError, ValueError):
    pass


class InvalidModulus(SteklovError, ValueError):
    pass


class InvalidAnnulus(SteklovError, ValueError):
    pass


class FluxOutOfRange(SteklovError, ValueError):
    pass


class DegenerateMode(SteklovError, ValueError):
    pass


class GridTooCoarse(SteklovError, ValueError):
    pass


class DomainError(SteklovError, ValueError):
    pass


class OutOfRange(SteklovError, ValueError):
    pass


class BracketExhausted(SteklovError):
    pass


class InvalidRadius(SteklovError, ValueError):
    pass
