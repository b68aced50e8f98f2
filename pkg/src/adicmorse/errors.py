"""Exception types raised across the package."""


class AdicMorseError(Exception):
    """Base class for all errors raised by adicmorse."""


class EvenDenominator(AdicMorseError, ValueError):
    """A rational with an even denominator is not a 2-adic integer."""


class StreamedUnderdetermined(AdicMorseError):
    """A streamed point needed more digits than the digit budget allows."""


class NoRepeat(AdicMorseError):
    """The digit sequence never repeats (the points -1/3 and -2/3)."""


class NonIntegerDisplacement(AdicMorseError):
    """An orbit left the odometer orbit of its base point where it must not."""


class ExceptionalPoint(AdicMorseError, ValueError):
    """Operation only defined for generic (non-exceptional) points."""


class OutOfInterval(AdicMorseError, ValueError):
    """An element lies outside the interval a permutation acts on."""


class PointSyntaxError(AdicMorseError, ValueError):
    """A point literal does not follow the ``p/q`` or ``prefix(period)`` grammar."""


class IntervalTooLarge(AdicMorseError):
    """An interval of the order construction exceeds the materialization cap."""
