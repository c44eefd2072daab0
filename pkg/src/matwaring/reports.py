"""Structured verdicts and their JSON form."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

DEFAULT_SEED = 20240229


@dataclass
class Statement:
    id: str
    verdict: bool
    text: str = ""
    # JSON-ready; "kind" says how to re-check it (see matwaring.theorems.revalidate)
    witness: dict[str, Any] | None = None


@dataclass
class TheoremReport:
    family: str
    ring: str
    statements: list[Statement] = field(default_factory=list)
    agreement: bool = True
    budget_used: int = 0
    seed: int = DEFAULT_SEED
    notes: list[str] = field(default_factory=list)

    def statement(self, sid: str) -> Statement:
        for s in self.statements:
            if s.id == sid:
                return s
        raise KeyError(sid)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> TheoremReport:
        stmts = [Statement(**s) for s in data.get("statements", [])]
        rest = {k: v for k, v in data.items() if k != "statements"}
        return cls(statements=stmts, **rest)

    @classmethod
    def from_json(cls, text: str) -> TheoremReport:
        return cls.from_dict(json.loads(text))

    def format(self) -> str:
        lines = [f"{self.family} over {self.ring}: agreement={'yes' if self.agreement else 'NO'}"]
        for s in self.statements:
            mark = "true " if s.verdict else "false"
            line = f"  ({s.id}) {mark}  {s.text}"
            if s.witness:
                line += "  [" + ", ".join(f"{k}={v}" for k, v in s.witness.items()) + "]"
            lines.append(line)
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)
