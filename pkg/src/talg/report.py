"""Machine-readable reports for the command line tool."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .checks import CheckResult

__all__ = ["Report", "EXIT_PASS", "EXIT_FAIL", "EXIT_ERROR"]

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


@dataclass
class Report:
    command: str
    details: list = field(default_factory=list)
    derived: dict = field(default_factory=dict)
    error: str | None = None

    def add(self, result: CheckResult) -> CheckResult:
        self.details.append(result.as_dict())
        return result

    @property
    def verdict(self) -> str:
        if self.error is not None:
            return "error"
        return "fail" if any(d["verdict"] == "fail" for d in self.details) else "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "error": EXIT_ERROR}[self.verdict]

    def as_dict(self) -> dict:
        out = {"command": self.command, "verdict": self.verdict, "details": self.details}
        if self.derived:
            out["derived"] = self.derived
        if self.error is not None:
            out["error"] = self.error
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"{self.command}: {self.verdict.upper()}"]
        if self.error is not None:
            lines.append(f"  error: {self.error}")
        for d in self.details:
            line = f"  {d['check']}: {d['verdict']}"
            if "tuples_checked" in d:
                line += f" ({d['tuples_checked']} tuples)"
            lines.append(line)
            ce = d.get("counterexample")
            if ce:
                args = ", ".join(f"{a}={i}" for a, i in zip(ce["arguments"], ce["tuple"]))
                lines.append(f"    counterexample: {ce['identity']} at {args}")
                lines.append(f"    residual: [{', '.join(ce['residual'])}]")
        for key, value in self.derived.items():
            if isinstance(value, (dict, list)):
                value = json.dumps(value)
            lines.append(f"  {key}: {value}")
        return "\n".join(lines)
