"""Step budgets for exhaustive searches."""

from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


def default_limit() -> int:
    raw = os.environ.get("WARING_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise BudgetExceeded(f"WARING_BUDGET must be an integer, got {raw!r}") from None
    return DEFAULT_BUDGET


@dataclass
class Budget:
    """Counts work units and stops the search once ``limit`` is passed."""

    limit: int = 0
    used: int = 0

    def __post_init__(self):
        if self.limit <= 0:
            self.limit = default_limit()

    def spend(self, n: int = 1, what: str = "search") -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(f"{what} exceeded the step budget ({self.limit})")

    def afford(self, n: int, what: str = "search") -> None:
        """Fail early if ``n`` more steps would not fit."""
        if self.used + n > self.limit:
            raise BudgetExceeded(f"{what} needs {n} steps; budget {self.limit}, used {self.used}")


def ensure(budget: Budget | None) -> Budget:
    return budget if budget is not None else Budget()
