"""The single structured document emitted by each CLI invocation."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

PASS, FAIL = "pass", "fail"


@dataclass
class Verdict:
    name: str
    status: str
    detail: dict[str, Any] = field(default_factory=dict)
    counterexample: Any = None

    def __post_init__(self):
        if self.status not in (PASS, FAIL):
            raise ValueError(f"verdict must be {PASS!r} or {FAIL!r}, got {self.status!r}")
        if self.status == FAIL and self.counterexample is None:
            raise ValueError("a failing verdict needs a counterexample")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @classmethod
    def of(cls, name: str, counterexample: Any = None, **detail) -> Verdict:
        """Pass when no counterexample was found."""
        return cls(name, PASS if counterexample is None else FAIL, detail, counterexample)


@dataclass
class ReportDocument:
    command: list[str]
    parameters: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    verdicts: list[Verdict] = field(default_factory=list)
    timing: dict[str, float] | None = None

    @property
    def ok(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def first_failure(self) -> Verdict | None:
        return next((v for v in self.verdicts if not v.passed), None)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        if self.timing is None:
            del d["timing"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> ReportDocument:
        return cls(
            command=list(d["command"]),
            parameters=dict(d.get("parameters", {})),
            results=dict(d.get("results", {})),
            verdicts=[Verdict(**v) for v in d.get("verdicts", [])],
            timing=d.get("timing"),
        )

    @classmethod
    def from_json(cls, text: str) -> ReportDocument:
        return cls.from_dict(json.loads(text))

    def to_table(self) -> str:
        lines = ["$ " + " ".join(self.command)]
        for k, v in self.parameters.items():
            lines.append(f"{k}: {v}")
        for k, v in self.results.items():
            lines.append(f"{k}:")
            lines.extend("  " + ln for ln in _render(v))
        for v in self.verdicts:
            extra = ", ".join(f"{k}={val}" for k, val in v.detail.items())
            lines.append(f"[{v.status.upper()}] {v.name}" + (f" ({extra})" if extra else ""))
            if not v.passed:
                lines.append(f"  counterexample: {json.dumps(v.counterexample, ensure_ascii=False)}")
        if self.timing:
            for k, t in self.timing.items():
                lines.append(f"time {k}: {t:.3f}s")
        return "\n".join(lines) + "\n"


def _render(value: Any) -> list[str]:
    if isinstance(value, list) and value and all(isinstance(r, list) for r in value):
        width = max(len(str(x)) for r in value for x in r)
        return [" ".join(str(x).rjust(width) for x in r) for r in value]
    if isinstance(value, dict):
        out = []
        for k, v in value.items():
            sub = _render(v)
            if len(sub) == 1:
                out.append(f"{k}: {sub[0]}")
            else:
                out.append(f"{k}:")
                out.extend("  " + s for s in sub)
        return out
    if isinstance(value, list):
        return [", ".join(str(x) for x in value)]
    return [str(value)]
