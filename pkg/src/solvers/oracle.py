"""Query-counting access to a hard instance.

Solvers see an instance only through `QueryOracle.query`, which logs every
call. `distinct_queries` counts vertices asked at least once and
`total_queries` counts every call; lower-bound comparisons use the former.
Graph structure (neighbour lists) is free information.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from src.errors import InputValidationError
from src.graph.graph import Graph
from src.staircase.instance import DecoratedValue, HardInstance, eval_f, eval_g

OracleMode = Literal["f", "g"]


@dataclass(frozen=True)
class QueryRecord:
    vertex: int
    value: int
    tag: int | None = None


class QueryOracle:
    def __init__(self, instance: HardInstance, mode: OracleMode = "f", b: int | None = None) -> None:
        if mode not in ("f", "g"):
            raise InputValidationError(f"Oracle mode must be 'f' or 'g' (got {mode!r}).")
        if mode == "g" and b not in (0, 1):
            raise InputValidationError("A g-mode oracle needs a hidden bit b in {0, 1}.")
        self.instance = instance
        self.mode = mode
        self._b = b
        self.transcript: list[QueryRecord] = []
        self._seen: set[int] = set()

    @property
    def graph(self) -> Graph:
        return self.instance.graph

    @property
    def distinct_queries(self) -> int:
        return len(self._seen)

    @property
    def total_queries(self) -> int:
        return len(self.transcript)

    def query(self, v: int) -> int | DecoratedValue:
        if not 1 <= v <= self.instance.n:
            raise InputValidationError(f"Query vertex {v} is outside 1..{self.instance.n}.")
        self._seen.add(v)
        if self.mode == "f":
            value = eval_f(self.instance, v)
            self.transcript.append(QueryRecord(vertex=v, value=value))
            return value

        assert self._b is not None
        decorated = eval_g(self.instance, self._b, v)
        self.transcript.append(QueryRecord(vertex=v, value=decorated.value, tag=decorated.tag))
        return decorated

    def f_value(self, v: int) -> int:
        """Query v and return the f-component of the answer."""

        answer = self.query(v)
        return answer.value if isinstance(answer, DecoratedValue) else answer

    def was_queried(self, v: int) -> bool:
        return v in self._seen

    def last_record(self, v: int) -> QueryRecord | None:
        for record in reversed(self.transcript):
            if record.vertex == v:
                return record
        return None
