"""Staircase walks, tails, and the hard-instance functions f_x and g_{x,b}.

For a milestone sequence x and a path system P, the staircase S_x is the walk
P^{x_1,x_2} ∘ P^{x_2,x_3} ∘ ... ∘ P^{x_L,x_{L+1}}. Segments are concatenated
whole, so an interior milestone appears once as the end of segment i and once
more as the start of segment i+1. Tails and membership tests use that same
walk.

f_x(v) is dist(v, 1) off the staircase and -i·n - j on it, where i is the
largest segment index containing v and j is v's 1-based position in that
segment. f_x has its unique local minimum at x_{L+1}; g_{x,b} additionally
reveals the hidden bit b there and nowhere else.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path as FilePath
from typing import Any, Literal

from pydantic import BaseModel

from src.errors import MilestoneValidationError
from src.graph.graph import Graph, GraphPayload, graph_from_payload
from src.graph.metrics import bfs_row
from src.routing.paths import Path, PathSystem, PathSystemPayload, path_system_from_payload
from src.staircase.milestones import MilestoneSequence, milestone_sequence
from src.utils.artifacts import read_json, write_json_atomic


@dataclass(frozen=True)
class Staircase:
    milestones: MilestoneSequence
    segments: tuple[Path, ...]

    @property
    def walk(self) -> tuple[int, ...]:
        return tuple(v for segment in self.segments for v in segment)

    @property
    def L(self) -> int:
        return self.milestones.L


def build_staircase(x: MilestoneSequence, system: PathSystem) -> Staircase:
    for v in x:
        if not 1 <= v <= system.n:
            raise MilestoneValidationError(f"Milestone {v} is outside 1..{system.n}.")
    segments = tuple(system.path(x[i], x[i + 1]) for i in range(1, x.L + 1))
    return Staircase(milestones=x, segments=segments)


def tail(j: int, staircase: Staircase) -> tuple[int, ...]:
    """Tail(j, S): segments j..L concatenated, minus the first occurrence of x_j.

    Tail(L+1, S) is the empty sequence.
    """

    L = staircase.L
    if not 1 <= j <= L + 1:
        raise MilestoneValidationError(f"Tail index must be in 1..{L + 1} (got {j}).")
    if j == L + 1:
        return ()

    suffix = [v for segment in staircase.segments[j - 1 :] for v in segment]
    suffix.remove(staircase.milestones[j])
    return tuple(suffix)


@dataclass(frozen=True)
class DecoratedValue:
    value: int
    tag: Literal[-1, 0, 1]


@dataclass(frozen=True)
class HardInstance:
    graph: Graph
    path_system: PathSystem
    milestones: MilestoneSequence
    dist_to_root: tuple[int, ...]

    @classmethod
    def from_graph(cls, graph: Graph, path_system: PathSystem, milestones: MilestoneSequence) -> "HardInstance":
        milestones = milestone_sequence(milestones.entries, graph.n)
        return cls(
            graph=graph,
            path_system=path_system,
            milestones=milestones,
            dist_to_root=bfs_row(graph, 1),
        )

    @property
    def n(self) -> int:
        return self.graph.n

    @cached_property
    def staircase(self) -> Staircase:
        return build_staircase(self.milestones, self.path_system)

    def value_table(self) -> tuple[int, ...]:
        """f_x on vertices 1..n, evaluated one lazy call at a time."""

        return tuple(eval_f(self, v) for v in self.graph.vertices)


def eval_f(inst: HardInstance, v: int) -> int:
    """Evaluate f_x(v) by scanning segments from the last one backwards."""

    segments = inst.staircase.segments
    for i in range(len(segments), 0, -1):
        segment = segments[i - 1]
        if v in segment:
            return -i * inst.n - (segment.index(v) + 1)
    return inst.dist_to_root[v - 1]


def eval_g(inst: HardInstance, b: int, v: int) -> DecoratedValue:
    if b not in (0, 1):
        raise MilestoneValidationError(f"Hidden bit must be 0 or 1 (got {b}).")
    value = eval_f(inst, v)
    if v == inst.milestones.final:
        return DecoratedValue(value=value, tag=b)
    return DecoratedValue(value=value, tag=-1)


def local_minima(graph: Graph, f: Callable[[int], int]) -> frozenset[int]:
    """All v with f(v) <= f(u) for every neighbour u."""

    values = {v: f(v) for v in graph.vertices}
    return frozenset(v for v in graph.vertices if all(values[v] <= values[u] for u in graph.neighbors(v)))


class InstancePayload(BaseModel):
    graph: GraphPayload
    paths: PathSystemPayload
    milestones: list[int]
    b: Literal[0, 1] | None = None


def instance_from_payload(payload: InstancePayload | dict[str, Any]) -> tuple[HardInstance, int | None]:
    if not isinstance(payload, InstancePayload):
        payload = InstancePayload.model_validate(payload)
    graph = graph_from_payload(payload.graph)
    system = path_system_from_payload(payload.paths, graph)
    milestones = milestone_sequence(payload.milestones, graph.n)
    return HardInstance.from_graph(graph, system, milestones), payload.b


def load_instance(path: FilePath) -> tuple[HardInstance, int | None]:
    return instance_from_payload(read_json(path))


def dump_instance(inst: HardInstance, b: int | None, path: FilePath) -> None:
    payload = InstancePayload(
        graph=inst.graph.to_payload(),
        paths=inst.path_system.to_payload(),
        milestones=list(inst.milestones.entries),
        b=b,
    )
    write_json_atomic(path, payload.model_dump(mode="json", by_alias=True))
