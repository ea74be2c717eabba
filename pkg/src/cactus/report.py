"""Check reports and deterministic JSON serialization."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    name: str
    checks: dict[str, bool] = field(default_factory=dict)
    metrics: dict[str, Any] = field(default_factory=dict)
    expected: dict[str, Any] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    def check(self, key: str, ok: bool, detail: str | None = None) -> bool:
        ok = bool(ok)
        self.checks[key] = ok and self.checks.get(key, True)
        if not ok:
            self.failures.append(f"{key}: {detail}" if detail else key)
        return ok

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def merge(self, other: CheckReport, prefix: str | None = None):
        p = f"{prefix or other.name}."
        for k, v in other.checks.items():
            self.checks[p + k] = v
        for k, v in other.metrics.items():
            self.metrics[p + k] = v
        for k, v in other.expected.items():
            self.expected[p + k] = v
        self.failures.extend(p + f for f in other.failures)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": dict(self.checks),
            "metrics": dict(self.metrics),
            "expected": dict(self.expected),
            "failures": list(self.failures),
        }


def _normalize(obj):
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            return str(obj)
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {str(k): _normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalize(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_normalize(v) for v in obj)
    if hasattr(obj, "as_dict"):
        return _normalize(obj.as_dict())
    if isinstance(obj, (str, int, bool)) or obj is None:
        return obj
    return str(obj)


def dumps(obj) -> str:
    """JSON with sorted keys and floats rounded to 12 significant digits."""
    return json.dumps(_normalize(obj), sort_keys=True, indent=2)
