"""Graph representation, validation, and JSON round-tripping.

Vertices are the integers 1..n, matching the vertex set [n] the staircase
construction anchors at vertex 1. A `Graph` is immutable once built: every
constructor goes through `build_graph`, which enforces the invariants
(connected, simple, labels exactly 1..n).
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field

from src.errors import (
    DisconnectedGraphError,
    DuplicateEdgeError,
    GraphValidationError,
    LabelOutOfRangeError,
    SelfLoopError,
)
from src.utils.artifacts import read_json, write_json_atomic
from src.utils.ids import graph_fingerprint


class GraphPayload(BaseModel):
    """Graph JSON: `{"n": <int>, "edges": [[u, v], ...]}` with u < v, sorted."""

    n: int = Field(ge=1)
    edges: list[tuple[int, int]] = Field(default_factory=list)


@dataclass(frozen=True)
class Graph:
    """Connected undirected simple graph on vertices 1..n."""

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: dict[int, tuple[int, ...]] = field(compare=False, hash=False, repr=False)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency.get(u, ())

    def to_payload(self) -> GraphPayload:
        return GraphPayload(n=self.n, edges=list(self.edges))

    def fingerprint(self) -> str:
        return graph_fingerprint(self.n, self.edges)

    def to_networkx(self) -> Any:
        import networkx as nx

        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(self.vertices)
        nx_graph.add_edges_from(self.edges)
        return nx_graph


def _is_connected(n: int, adjacency: dict[int, list[int]]) -> bool:
    seen = {1}
    queue = deque([1])
    while queue:
        u = queue.popleft()
        for w in adjacency[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == n


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Validate an edge list and return an immutable `Graph`.

    Raises
    ------
    LabelOutOfRangeError
        An endpoint is outside 1..n (or n itself is below 1).
    SelfLoopError
        An edge joins a vertex to itself.
    DuplicateEdgeError
        The same unordered pair appears twice (in either orientation).
    DisconnectedGraphError
        The graph has more than one connected component.
    """

    if n < 1:
        raise LabelOutOfRangeError(f"Vertex count must be >= 1 (got {n}).")

    normalized: set[tuple[int, int]] = set()
    for raw in edge_list:
        if len(raw) != 2:
            raise GraphValidationError(f"Edge {raw!r} must have exactly two endpoints.")
        u, v = int(raw[0]), int(raw[1])
        for endpoint in (u, v):
            if not 1 <= endpoint <= n:
                raise LabelOutOfRangeError(f"Edge ({u}, {v}) has endpoint {endpoint} outside 1..{n}.")
        if u == v:
            raise SelfLoopError(f"Self-loop at vertex {u}.")
        key = (min(u, v), max(u, v))
        if key in normalized:
            raise DuplicateEdgeError(f"Duplicate edge {key}.")
        normalized.add(key)

    neighbor_lists: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for u, v in normalized:
        neighbor_lists[u].append(v)
        neighbor_lists[v].append(u)

    if not _is_connected(n, neighbor_lists):
        raise DisconnectedGraphError(f"Graph on {n} vertices with {len(normalized)} edges is disconnected.")

    adjacency = {v: tuple(sorted(ws)) for v, ws in neighbor_lists.items()}
    return Graph(n=n, edges=tuple(sorted(normalized)), adjacency=adjacency)


def graph_from_payload(payload: GraphPayload | dict[str, Any]) -> Graph:
    if not isinstance(payload, GraphPayload):
        payload = GraphPayload.model_validate(payload)
    return build_graph(payload.n, payload.edges)


def load_graph(path: Path) -> Graph:
    return graph_from_payload(read_json(path))


def dump_graph(graph: Graph, path: Path) -> None:
    write_json_atomic(path, graph.to_payload().model_dump(mode="json"))
