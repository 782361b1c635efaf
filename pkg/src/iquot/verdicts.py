"""Three-valued verdicts shared by the verifier and the quotient builder."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value


_RANK = {Status.PASS: 0, Status.UNKNOWN: 1, Status.FAIL: 2}


def worst(statuses) -> Status:
    out = Status.PASS
    for s in statuses:
        if _RANK[s] > _RANK[out]:
            out = s
    return out


@dataclass
class Verdict:
    """Outcome of one check.

    Element-valued entries of ``witnesses`` and ``counterexample`` hold
    canonical element ids (triples in reference mode, labels in abstract
    mode), so they can be re-evaluated against the window.
    """

    name: str
    status: Status
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    counterexample: dict[str, Any] | None = None
    limitation: str | None = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status.value,
            "witnesses": [_jsonable(w) for w in self.witnesses],
            "counterexample": _jsonable(self.counterexample),
            "limitation": self.limitation,
            "details": _jsonable(self.details),
        }


def _jsonable(obj):
    if obj is None or isinstance(obj, (bool, int, float, str)):
        if isinstance(obj, float) and obj == float("inf"):
            return "inf"
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_jsonable(v) for v in obj)
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"cannot serialise {type(obj).__name__}")
