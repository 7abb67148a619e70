"""Decisions with an auditable certificate chain."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA = "v1"


@dataclass(frozen=True)
class Step:
    """One link of a certificate chain: which rule fired on what."""

    rule: str
    inputs: dict[str, Any] = field(default_factory=dict)
    outputs: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"rule": self.rule, "inputs": _jsonable(self.inputs), "outputs": _jsonable(self.outputs)}


@dataclass(frozen=True)
class Verdict:
    value: bool
    established: tuple[int, ...] | None = None
    chain: tuple[Step, ...] = ()
    caveats: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.value

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA,
            "value": self.value,
            "established": None if self.established is None else list(self.established),
            "chain": [s.to_dict() for s in self.chain],
            "caveats": list(self.caveats),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    return str(obj)
