"""Work budgets and a deterministic work-unit tally.

The budget caps how many points a single exhaustive enumeration may visit;
the tally records how many it actually visited, so CLI output can report a
deterministic ``work_units`` figure.  Both are structural counts, never
wall-clock measurements.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from contextvars import ContextVar

from .errors import WorkBudgetError

DEFAULT_WORK_BUDGET = 1 << 22
DEFAULT_STEP_BUDGET = 1_000_000
DEFAULT_FORK_BUDGET = 1 << 14
VALUE_CAP = 1 << 62

_ENV_VAR = "CANTORKIT_BUDGET"

_current_tally: ContextVar["Tally | None"] = ContextVar("cantorkit_tally", default=None)


def work_budget(override: int | None = None) -> int:
    """Resolve the effective work budget: explicit override > env var > default."""
    if override is not None:
        if override <= 0:
            raise ValueError("work budget must be positive")
        return override
    env = os.environ.get(_ENV_VAR)
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise WorkBudgetError(f"{_ENV_VAR} must be an integer, got {env!r}")
        if value <= 0:
            raise WorkBudgetError(f"{_ENV_VAR} must be positive, got {value}")
        return value
    return DEFAULT_WORK_BUDGET


class Tally:
    """Accumulates work units for one top-level operation."""

    __slots__ = ("units",)

    def __init__(self) -> None:
        self.units = 0


@contextmanager
def tally():
    """Collect work units performed inside the block."""
    t = Tally()
    token = _current_tally.set(t)
    try:
        yield t
    finally:
        _current_tally.reset(token)


def add_work(units: int) -> None:
    t = _current_tally.get()
    if t is not None:
        t.units += units


def ensure_within_budget(points: int, budget: int | None = None) -> None:
    """Raise WorkBudgetError if a single scan of `points` points exceeds the budget."""
    limit = work_budget(budget)
    if points > limit:
        raise WorkBudgetError(
            f"scan of {points} points exceeds work budget {limit}"
        )
