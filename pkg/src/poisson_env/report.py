"""Verdict records and their text/json serialisations."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Iterable

PASS = "pass"
FAIL = "fail"


@dataclass
class Verdict:
    name: str
    status: str
    witness: str | None = None
    elapsed_ms: float = 0.0
    # structured witness for programmatic callers; never serialised
    data: dict[str, Any] = field(default_factory=dict, compare=False, repr=False)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def __bool__(self) -> bool:
        return self.passed


def timed_call(fn, *args, **kwargs) -> Verdict:
    t0 = time.perf_counter()
    v = fn(*args, **kwargs)
    v.elapsed_ms = (time.perf_counter() - t0) * 1000.0
    return v


def emit_report(verdicts: Iterable[Verdict], format: str = "text", timing: bool = True) -> str:
    """Serialise verdicts sorted by name.

    With ``timing=False`` the elapsed time is written as 0 so that repeated
    runs are byte-identical.
    """
    vs = sorted(verdicts, key=lambda v: v.name)
    if format == "text":
        lines = []
        for v in vs:
            ms = round(v.elapsed_ms) if timing else 0
            wit = f" [witness: {v.witness}]" if v.witness is not None else ""
            lines.append(f"CHECK {v.name} {v.status.upper()}{wit} ({ms} ms)")
        return "".join(line + "\n" for line in lines)
    if format == "json":
        rows = [
            {
                "name": v.name,
                "status": v.status,
                "witness": v.witness,
                "elapsed_ms": round(v.elapsed_ms, 3) if timing else 0,
            }
            for v in vs
        ]
        return json.dumps(rows, separators=(",", ":")) + "\n"
    raise ValueError(f"unknown report format {format!r}")
