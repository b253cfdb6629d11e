"""Exception hierarchy shared by every invcensus module."""


class InvCensusError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(InvCensusError, ValueError):
    pass


class DegreeTooLarge(InvCensusError, ValueError):
    pass


class FieldMismatch(InvCensusError, ValueError):
    pass


class DivisionByZero(InvCensusError, ZeroDivisionError):
    pass


class NotSquareField(InvCensusError, ValueError):
    pass


class DimMismatch(InvCensusError, ValueError):
    pass


class Singular(InvCensusError, ValueError):
    pass


class UnsupportedFamily(InvCensusError, ValueError):
    pass


class DegreeMismatch(InvCensusError, ValueError):
    pass


class UnknownName(InvCensusError, KeyError):
    pass


class CapExceeded(InvCensusError, RuntimeError):
    """Closure grew past the element cap."""

    def __init__(self, cap, group_id=None):
        self.cap = cap
        self.group_id = group_id
        where = f" while enumerating {group_id}" if group_id else ""
        super().__init__(f"closure exceeded cap of {cap} elements{where}")


class ConditionViolated(InvCensusError, ValueError):
    pass


class HypothesisViolated(InvCensusError, ValueError):
    pass


class GroupIdError(InvCensusError, ValueError):
    pass
