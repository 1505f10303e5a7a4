"""Exception hierarchy shared by every module of the package."""


class SIGameError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SIGameError, ValueError):
    """An instance, coalition or allocation does not satisfy its invariants."""


class NegativeCost(ValidationError):
    def __init__(self, player, period, field="cost"):
        self.player, self.period, self.field = player, period, field
        super().__init__(f"negative {field} for player {player}, period {period}")


class NegativeDemand(ValidationError):
    def __init__(self, player, period):
        self.player, self.period = player, period
        super().__init__(f"negative demand for player {player}, period {period}")


class ShapeMismatch(ValidationError):
    def __init__(self, message, player=None, period=None):
        self.player, self.period = player, period
        super().__init__(message)


class EmptyCoalition(ValidationError):
    def __init__(self, message="coalition must be nonempty"):
        super().__init__(message)


class LengthMismatch(ValidationError):
    pass


class InconsistentPlan(ValidationError):
    pass


class CapExceeded(SIGameError):
    """A size cap (players, periods, enumerated plans) was exceeded."""


class MalformedLP(SIGameError, ValueError):
    pass


class NotInCore(SIGameError):
    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class NotInSurplusCore(NotInCore):
    pass


class EmptyCore(SIGameError):
    pass
