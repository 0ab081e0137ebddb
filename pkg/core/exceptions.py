"""
Exception hierarchy shared by every app.

All errors derive from ValueError so callers that only care about
"this input was rejected" can catch one type.
"""


class CupCapError(ValueError):
    """Base class for rejected inputs and failed preconditions."""


class DuplicatePointError(CupCapError):
    def __init__(self, point):
        self.point = point
        super().__init__(f'Duplicate point {point}.')


class DistinctXRequired(CupCapError):
    def __init__(self, first, second):
        self.witness = (first, second)
        super().__init__(
            f'Points {first} and {second} share an x-coordinate; '
            f'normalise with shear_distinct_x first.'
        )


class PreconditionError(CupCapError):
    """A geometric precondition does not hold. `witness` names the offending points."""

    def __init__(self, message, witness=()):
        self.witness = tuple(witness)
        super().__init__(message)


class OrderViolation(PreconditionError):
    """A materialised relation is not a strict partial order."""


class NoStructureFound(CupCapError):
    pass


class CapacityError(CupCapError):
    pass


class PlacementError(CupCapError):
    """An adaptive placement loop ran out of rounds."""


class ConfigError(CupCapError):
    pass


class EsptsParseError(CupCapError):
    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f'line {lineno}: {message}')
