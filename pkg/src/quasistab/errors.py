"""Exception hierarchy shared across the toolkit.

The CLI maps these onto its exit-code contract: VerificationError -> 1,
BudgetError and bad input -> 2.
"""


class QuasistabError(Exception):
    pass


class DimensionError(QuasistabError, ValueError):
    """Operands disagree on length or field order."""


class DomainError(QuasistabError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class VerificationError(QuasistabError):
    """A code failed a mathematical check (commutation, rank, distance...)."""


class BudgetError(QuasistabError):
    """An enumeration or table would exceed the configured resource budget."""


class DegenerateStateError(QuasistabError, ValueError):
    """An overlap specification produced a non-normalizable state."""
