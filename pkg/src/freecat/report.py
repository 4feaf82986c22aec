"""Run reports: one record per check, rendered as text or structured JSON.

The structured rendering is deterministic — identical configuration and
input produce byte-identical output — so wall-clock timings appear only
in the text rendering.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

FORMAT = "freecat-report"
VERSION = 1

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped-sizeguard"


@dataclass
class RunConfig:
    index_bound: int = 3
    shape_bound: int = 2
    guard: int = 10 ** 6
    testbed: int = 12
    seed: int = 0
    fmt: str = "text"

    def __post_init__(self):
        for f in ("index_bound", "shape_bound", "guard", "testbed"):
            if getattr(self, f) < 1:
                raise ValueError(f"{f} must be >= 1")

    def as_dict(self):
        return {"index_bound": self.index_bound, "shape_bound": self.shape_bound,
                "guard": self.guard, "testbed": self.testbed, "seed": self.seed}


@dataclass
class Report:
    command: str
    config: RunConfig
    checks: list = field(default_factory=list)

    def add(self, name, status, witness=None, cardinalities=None, wall_ms=None):
        if status == FAIL and witness is None:
            raise ValueError("a failing check must carry a witness")
        self.checks.append({"name": name, "status": status, "witness": witness,
                            "cardinalities": cardinalities, "wall_ms": wall_ms})

    def run(self, name, fn):
        """Record ``fn``'s report dict, degrading size-guard hits to skips."""
        from .errors import SizeGuardError
        t0 = time.perf_counter()
        try:
            out = fn()
        except SizeGuardError as exc:
            self.add(name, SKIPPED, witness={"kind": "sizeguard", "detail": str(exc)},
                     wall_ms=1000 * (time.perf_counter() - t0))
            return None
        ms = 1000 * (time.perf_counter() - t0)
        if isinstance(out, dict) and "status" in out:
            self.add(name, out["status"], witness=out.get("witness"),
                     cardinalities=out.get("cardinalities"), wall_ms=ms)
        else:
            self.add(name, PASS, wall_ms=ms)
        return out

    @property
    def ok(self):
        return all(c["status"] != FAIL for c in self.checks)

    # -- rendering ----------------------------------------------------------

    def structured(self) -> str:
        doc = {"format": FORMAT, "version": VERSION, "command": self.command,
               "config": self.config.as_dict(),
               "checks": [{k: v for k, v in c.items() if k != "wall_ms"}
                          for c in self.checks]}
        return json.dumps(doc, indent=2, sort_keys=True, default=repr) + "\n"

    def text(self) -> str:
        lines = [f"freecat {self.command}", f"config: {self.config.as_dict()}"]
        for c in self.checks:
            ms = f" ({c['wall_ms']:.0f} ms)" if c["wall_ms"] is not None else ""
            lines.append(f"  [{c['status']:>4}] {c['name']}{ms}")
            if c["cardinalities"]:
                lines.append(f"         {c['cardinalities']}")
            if c["witness"] is not None and c["status"] != PASS:
                lines.append(f"         witness: {c['witness']}")
        lines.append("result: " + ("ok" if self.ok else "FAILED"))
        return "\n".join(lines) + "\n"

    def render(self) -> str:
        return self.structured() if self.config.fmt == "structured" else self.text()
