"""All-pairs path systems and their congestion.

A path system fixes one path P^{u,v} for every ordered pair (u, v), with
P^{u,u} = (u). Vertex congestion counts, for every vertex, how many times it
appears across all n² paths (with multiplicity); the system's `g` is the
maximum of those loads. Downstream modules never assume `g` is the graph's
optimal congestion: they use whatever system they are handed and record its
measured congestion.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path as FilePath
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from src.config import Settings, settings
from src.errors import PathSystemValidationError
from src.graph.graph import Graph
from src.graph.metrics import bfs_row, expansion_exact, metrics
from src.utils.artifacts import read_json, write_json_atomic
from src.utils.ids import path_system_fingerprint
from src.utils.logging import get_logger

logger = get_logger(__name__)

Path = tuple[int, ...]

TIE_BREAK_RULE = "bfs-ascending-neighbors/smallest-label-parent"


class PathEntry(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    source: int = Field(alias="from")
    target: int = Field(alias="to")
    vertices: list[int]


class PathSystemPayload(BaseModel):
    """PathSystem JSON: all n² ordered pairs sorted by (from, to)."""

    n: int = Field(ge=1)
    paths: list[PathEntry]


@dataclass(frozen=True)
class PathSystem:
    n: int
    paths: dict[tuple[int, int], Path] = field(hash=False)

    def path(self, u: int, v: int) -> Path:
        return self.paths[(u, v)]

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.paths)

    def replace(self, u: int, v: int, new_path: Path) -> "PathSystem":
        updated = dict(self.paths)
        updated[(u, v)] = tuple(new_path)
        return PathSystem(n=self.n, paths=updated)

    def to_payload(self) -> PathSystemPayload:
        return PathSystemPayload(
            n=self.n,
            paths=[
                PathEntry(source=u, target=v, vertices=list(self.paths[(u, v)]))
                for u, v in self.pairs()
            ],
        )

    def fingerprint(self) -> str:
        return path_system_fingerprint(self.n, self.paths)


def is_path_in(graph: Graph, path: Path) -> bool:
    """True when `path` is nonempty and consecutive vertices are adjacent."""

    if not path:
        return False
    if any(not 1 <= v <= graph.n for v in path):
        return False
    return all(graph.has_edge(a, b) for a, b in zip(path, path[1:]))


def validate_path_system(graph: Graph, system: PathSystem) -> None:
    """Check every invariant of a path system against its host graph.

    Raises
    ------
    PathSystemValidationError
        On a missing pair, wrong endpoints, a non-adjacent step, or
        P^{u,u} != (u).
    """

    if system.n != graph.n:
        raise PathSystemValidationError(f"Path system is for n={system.n}, graph has n={graph.n}.")

    for u in graph.vertices:
        for v in graph.vertices:
            path = system.paths.get((u, v))
            if path is None:
                raise PathSystemValidationError(f"Missing path P^({u},{v}).")
            if u == v and path != (u,):
                raise PathSystemValidationError(f"P^({u},{u}) must be ({u},), got {path}.")
            if path[0] != u or path[-1] != v:
                raise PathSystemValidationError(f"P^({u},{v}) = {path} has wrong endpoints.")
            if not is_path_in(graph, path):
                raise PathSystemValidationError(f"P^({u},{v}) = {path} is not a walk in the graph.")

    if len(system.paths) != graph.n * graph.n:
        raise PathSystemValidationError("Path system lists pairs outside the vertex set.")


def path_system_from_payload(payload: PathSystemPayload | dict[str, Any], graph: Graph) -> PathSystem:
    if not isinstance(payload, PathSystemPayload):
        payload = PathSystemPayload.model_validate(payload)
    paths: dict[tuple[int, int], Path] = {}
    for entry in payload.paths:
        key = (entry.source, entry.target)
        if key in paths:
            raise PathSystemValidationError(f"Pair {key} listed twice.")
        paths[key] = tuple(entry.vertices)
    system = PathSystem(n=payload.n, paths=paths)
    validate_path_system(graph, system)
    return system


def load_path_system(path: FilePath, graph: Graph) -> PathSystem:
    return path_system_from_payload(read_json(path), graph)


def dump_path_system(system: PathSystem, path: FilePath) -> None:
    write_json_atomic(path, system.to_payload().model_dump(mode="json", by_alias=True))


def shortest_path_system(graph: Graph) -> PathSystem:
    """Shortest paths for all pairs with deterministic tie-breaking.

    From each source, BFS explores neighbours in ascending label order; every
    vertex then records as parent its smallest-labelled neighbour one level
    closer to the source.
    """

    paths: dict[tuple[int, int], Path] = {}
    for source in graph.vertices:
        dist = bfs_row(graph, source)
        parent: dict[int, int] = {}
        for w in graph.vertices:
            if w != source:
                parent[w] = min(u for u in graph.neighbors(w) if dist[u - 1] == dist[w - 1] - 1)
        for target in graph.vertices:
            walk = [target]
            while walk[-1] != source:
                walk.append(parent[walk[-1]])
            paths[(source, target)] = tuple(reversed(walk))
    return PathSystem(n=graph.n, paths=paths)


class CongestionReport(BaseModel):
    vertex_load: dict[int, int]
    edge_load: dict[str, int]
    g: int
    g_e: int


def _edge_key(a: int, b: int) -> str:
    return f"{min(a, b)}-{max(a, b)}"


def vertex_congestion(system: PathSystem) -> CongestionReport:
    """Vertex and edge loads across all n² paths, counted with multiplicity."""

    vertex_load: Counter[int] = Counter({v: 0 for v in range(1, system.n + 1)})
    edge_load: Counter[str] = Counter()
    for path in system.paths.values():
        vertex_load.update(path)
        edge_load.update(_edge_key(a, b) for a, b in zip(path, path[1:]))

    return CongestionReport(
        vertex_load=dict(sorted(vertex_load.items())),
        edge_load=dict(sorted(edge_load.items())),
        g=max(vertex_load.values()),
        g_e=max(edge_load.values(), default=0),
    )


def num_paths_through(system: PathSystem, u: int, v: int) -> int:
    """q_v(u): the number of paths P^{u,w} (w in 1..n) that contain v."""

    return sum(1 for w in range(1, system.n + 1) if v in system.paths[(u, w)])


class CongestionInequalityReport(BaseModel):
    n: int
    g: int
    max_degree: int
    beta: str
    ratio: float


def check_congestion_inequality(
    graph: Graph,
    system: PathSystem,
    beta: Fraction | None = None,
    *,
    cfg: Settings = settings,
) -> CongestionInequalityReport:
    """Report g / (n · ln²(n) · Δ/β) for trend tables; there is no pass/fail."""

    if graph.n < 2:
        raise PathSystemValidationError("The congestion inequality needs n >= 2 (ln 1 = 0).")

    g = vertex_congestion(system).g
    delta = metrics(graph).max_degree
    if beta is None:
        beta = expansion_exact(graph, cfg=cfg)

    n = graph.n
    ratio = g / (n * math.log(n) ** 2 * delta / float(beta))
    logger.info(
        "Congestion inequality ratio",
        extra={"context": {"n": n, "g": g, "delta": delta, "beta": str(beta), "ratio": ratio}},
    )
    return CongestionInequalityReport(n=n, g=g, max_degree=delta, beta=str(beta), ratio=ratio)
