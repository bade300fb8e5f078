from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class VerifierReport:
    """Outcome of one instance-level theorem check.

    ``passed`` is False only when a conclusion failed on an instance that met
    every hypothesis; hypothesis failures are raised as ``HypothesisError``.
    """

    name: str
    checks: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def check(self, label: str, ok: bool) -> bool:
        self.checks[label] = bool(ok)
        return bool(ok)

    def failed_checks(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]
