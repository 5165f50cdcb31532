"""Exception hierarchy shared by all cantorkit modules."""

from __future__ import annotations


class CantorKitError(Exception):
    """Base class for all library errors."""


class WorkBudgetError(CantorKitError):
    """An exhaustive search would enumerate more points than the work budget allows."""


class StepBudgetError(CantorKitError):
    """A single evaluation exceeded its interpreter step budget (nontermination suspected)."""


class ValueOverflowError(CantorKitError):
    """An arithmetic result exceeded the representable natural range."""


class UncertifiedError(CantorKitError):
    """A result could not be certified within the configured caps.

    Carries the best-effort value (when one exists) so callers can still
    report it.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class DomainError(CantorKitError):
    """An input violates an operation's precondition (bad partition, non-positive grid, ...)."""


class PartialityError(CantorKitError):
    """A sequence code had no hit within the configured depth."""


class DslError(CantorKitError):
    """Base class for DSL front-end errors."""


class DslSyntaxError(DslError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class DslNameError(DslError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        if line or column:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column
