"""Verification report structures with a stable JSON schema (version "1")."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckItem:
    name: str
    max_residual: float
    tolerance: float
    advisory: bool = False  # reported but not gating (flagged instead of failed)

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tolerance

    def to_dict(self) -> dict:
        d = {"name": self.name, "max_residual": self.max_residual,
             "tolerance": self.tolerance, "pass": bool(self.passed)}
        if self.advisory:
            d["advisory"] = True
        return d


@dataclass
class VerifyReport:
    family: str
    params: dict
    grid: dict
    tolerances: dict
    items: list[CheckItem] = field(default_factory=list)
    schema: str = "1"

    @property
    def passed(self) -> bool:
        return all(item.passed or item.advisory for item in self.items)

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "family": self.family,
            "params": self.params,
            "grid": self.grid,
            "tolerances": self.tolerances,
            "items": [i.to_dict() for i in self.items],
            "pass": bool(self.passed),
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    def summary_lines(self) -> list[str]:
        lines = []
        for item in self.items:
            status = "pass" if item.passed else ("FLAG" if item.advisory else "FAIL")
            lines.append(f"{status:4s}  {item.name:28s} max {item.max_residual:.3e}"
                         f"  tol {item.tolerance:.1e}")
        return lines
