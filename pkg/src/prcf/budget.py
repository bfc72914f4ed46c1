"""Search limits shared by enumeration and coloring search."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

DEFAULT_MAX_NODES = 10**9


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


@dataclass(frozen=True)
class Budget:
    max_nodes: int = DEFAULT_MAX_NODES
    max_seconds: Optional[float] = None

    def meter(self) -> "Meter":
        return Meter(self)

    def as_dict(self) -> dict:
        return {"max_nodes": self.max_nodes, "max_seconds": self.max_seconds}


class Meter:
    """Counts expanded search nodes against a :class:`Budget`."""

    __slots__ = ("budget", "nodes", "_deadline", "_next_clock")

    def __init__(self, budget: Budget):
        self.budget = budget
        self.nodes = 0
        self._deadline = (
            None if budget.max_seconds is None else time.monotonic() + budget.max_seconds
        )
        self._next_clock = 4096

    def tick(self, count: int = 1) -> None:
        self.nodes += count
        if self.nodes > self.budget.max_nodes:
            raise BudgetExceeded(
                f"node budget of {self.budget.max_nodes} exhausted", self.nodes
            )
        if self._deadline is not None and self.nodes >= self._next_clock:
            self._next_clock = self.nodes + 4096
            if time.monotonic() > self._deadline:
                raise BudgetExceeded(
                    f"time budget of {self.budget.max_seconds}s exhausted", self.nodes
                )
