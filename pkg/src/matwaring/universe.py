"""The set of finite test rings every check runs on."""

from __future__ import annotations

from dataclasses import dataclass, field

from .budget import default_limit
from .rings import Ring, RingSpecError, make_ring

DEFAULT_UNIVERSE = (
    "Z/2", "Z/3", "Z/4", "Z/5", "Z/8", "Z/9", "Z/10", "Z/12", "Z/14", "Z/15", "Z/16",
    "F_4", "F_8", "F_9", "Z/3[e]/(e^2)", "Z/2[e]/(e^2)", "Z/4[e]/(e^2)", "(Z/2)x(Z/3)",
)


class ConfigError(ValueError):
    pass


@dataclass
class TestUniverse:
    __test__ = False  # not a pytest class

    specs: list[str] = field(default_factory=lambda: list(DEFAULT_UNIVERSE))
    budgets: dict[str, int] = field(default_factory=dict)

    def rings(self) -> list[Ring]:
        return [make_ring(s) for s in self.specs]

    def budget_for(self, spec: str) -> int:
        return self.budgets.get(spec, default_limit())

    @classmethod
    def parse(cls, text: str) -> TestUniverse:
        """One ring spec per line, optionally followed by ``budget=N``; ``#`` starts a comment."""
        specs, budgets = [], {}
        for n, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            spec, budget = line, None
            if "budget=" in line:
                spec, _, tail = line.rpartition("budget=")
                spec = spec.strip()
                try:
                    budget = int(tail.strip())
                except ValueError:
                    raise ConfigError(f"line {n}: bad budget {tail.strip()!r}") from None
                if budget <= 0:
                    raise ConfigError(f"line {n}: budget must be positive")
            try:
                ring = make_ring(spec)
            except RingSpecError as exc:
                raise ConfigError(f"line {n}: {exc}") from None
            specs.append(ring.spec)
            if budget is not None:
                budgets[ring.spec] = budget
        if not specs:
            raise ConfigError("no rings listed")
        return cls(specs, budgets)

    @classmethod
    def load(cls, path: str) -> TestUniverse:
        try:
            with open(path) as fh:
                return cls.parse(fh.read())
        except OSError as exc:
            raise ConfigError(f"cannot read {path}: {exc}") from None


def default_rings() -> list[Ring]:
    return TestUniverse().rings()
