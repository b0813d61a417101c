"""Check reports: verdicts, witnesses, and their frozen JSON form.

Every checker returns a CheckReport.  Verdict semantics:

    PASS               property verified over the full enumeration domain
    FAIL               counterexample found; witness is always attached
                       and independently re-checkable
    INCONCLUSIVE-PASS  sampled run found no violation; not a proof
    INCONCLUSIVE       search budget exhausted before any verdict

Only exhaustive enumeration yields an unqualified PASS, because these
reports may be cited as verification evidence and must not overclaim.
The JSON field names are frozen (see docs/report-schema.md); the
`deterministic` flag zeroes wall-clock fields so identical inputs and
seed produce byte-identical reports.
"""

from __future__ import annotations

import enum
import json
import time
from dataclasses import dataclass, field
from typing import Any

__all__ = ["Verdict", "CheckReport", "DEFAULT_MAX_EXHAUSTIVE", "Stopwatch"]

# Checks whose enumeration domain exceeds this fall back to seeded sampling.
DEFAULT_MAX_EXHAUSTIVE = 1 << 20


class Verdict(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"
    INCONCLUSIVE_PASS = "INCONCLUSIVE-PASS"

    def __str__(self) -> str:
        return self.value


@dataclass
class CheckReport:
    """Outcome of one property check over an enumerated or sampled domain."""

    property_name: str
    verdict: Verdict
    mode: str  # "exhaustive" or "sampled"
    contexts_checked: int
    witness: dict[str, Any] | None = None
    seed: int | None = None
    elapsed: float = 0.0
    details: list[str] = field(default_factory=list)
    q: int | None = None
    k: int | None = None
    twiddles: list[int] | None = None

    def __post_init__(self) -> None:
        if self.verdict is Verdict.FAIL and self.witness is None:
            raise ValueError(f"{self.property_name}: FAIL verdict requires a witness")

    @property
    def passed(self) -> bool:
        """True when no violation was observed (qualified or not)."""
        return self.verdict in (Verdict.PASS, Verdict.INCONCLUSIVE_PASS)

    def to_dict(self, deterministic: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {
            "property": self.property_name,
            "verdict": self.verdict.value,
            "mode": self.mode,
            "q": self.q,
            "k": self.k,
            "twiddles": self.twiddles,
            "seed": self.seed,
            "contexts_checked": self.contexts_checked,
            "details": list(self.details),
            "elapsed_seconds": 0.0 if deterministic else round(self.elapsed, 6),
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def to_json(self, deterministic: bool = False) -> str:
        return json.dumps(self.to_dict(deterministic), sort_keys=True, indent=2)

    def summary_line(self) -> str:
        extra = f"  witness={json.dumps(self.witness, sort_keys=True)}" if self.witness else ""
        return (
            f"{self.verdict.value:17s} {self.property_name:42s} "
            f"mode={self.mode} contexts={self.contexts_checked}{extra}"
        )

    def to_text(self, deterministic: bool = False) -> str:
        lines = [
            f"property : {self.property_name}",
            f"verdict  : {self.verdict.value}",
            f"mode     : {self.mode}",
            f"q        : {self.q}",
            f"k        : {self.k}",
            f"twiddles : {self.twiddles}",
            f"seed     : {self.seed}",
            f"contexts : {self.contexts_checked}",
            f"elapsed  : {0.0 if deterministic else round(self.elapsed, 6)} s",
        ]
        if self.witness is not None:
            lines.append(f"witness  : {json.dumps(self.witness, sort_keys=True)}")
        for d in self.details:
            lines.append(f"note     : {d}")
        return "\n".join(lines)


class Stopwatch:
    """Context manager measuring elapsed wall-clock seconds."""

    def __enter__(self) -> "Stopwatch":
        self._t0 = time.perf_counter()
        self.elapsed = 0.0
        return self

    def __exit__(self, *exc: object) -> None:
        self.elapsed = time.perf_counter() - self._t0
