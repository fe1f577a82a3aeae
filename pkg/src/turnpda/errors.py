"""Exception hierarchy shared by every module of the package."""


class TurnPdaError(Exception):
    """Base class for all errors raised by turnpda."""


class MalformedDocument(TurnPdaError, ValueError):
    pass


class UndeclaredSymbol(TurnPdaError, ValueError):
    pass


class DuplicateState(TurnPdaError, ValueError):
    pass


class InconsistentTrace(TurnPdaError, ValueError):
    pass


class BudgetExceeded(TurnPdaError):
    """A generator or exact computation would exceed its size budget."""


class StateBudgetExceeded(BudgetExceeded):
    """Subset construction produced more states than allowed."""


class ExplosionCapped(TurnPdaError):
    """Exhaustive enumeration visited more configurations than allowed."""


class NonHaltingWithinCap(TurnPdaError):
    """A Turing machine did not halt within the given step cap."""
