"""Exception hierarchy shared by every module."""


class QuintsectError(Exception):
    pass


class PoleError(QuintsectError):
    """A gamma function argument sits on a pole (nonpositive integer)."""


class UndefinedQuotientError(PoleError):
    pass


class SpecError(QuintsectError, ValueError):
    """Parameter lists violate the constraints of the series they define."""


class DomainError(QuintsectError, ValueError):
    """Argument lies outside the region where the series (or oracle) is valid."""
