"""Exception hierarchy shared by all solvers."""


class PPXHError(Exception):
    """Base class for every error raised by this package."""


class UsageError(PPXHError, ValueError):
    """A function was called with arguments violating its contract."""


class InvariantError(PPXHError):
    """An internal consistency check failed."""


class NotInClassError(UsageError):
    """The instance does not belong to the restricted class a solver handles."""


class BudgetError(PPXHError):
    """An exhaustive search would exceed its configured budget."""


class ParseError(PPXHError, ValueError):
    """Malformed input file."""


class CycleSumError(UsageError):
    """A cycle whose edge labels do not xor to the empty set.

    ``cycle`` holds the offending edge indices.
    """

    def __init__(self, message, cycle=()):
        super().__init__(message)
        self.cycle = tuple(cycle)
