from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass
class Verdict:
    """Outcome of a checker: a certificate on yes, a witness on no."""

    answer: bool
    certificate: dict[str, Any] = field(default_factory=dict)
    witness: Optional[dict[str, Any]] = None
    cycle: Any = None
    monoid: Any = None
    rho: Optional[list[list[int]]] = None

    def __bool__(self):
        return self.answer
