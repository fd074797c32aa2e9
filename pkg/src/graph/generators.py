"""Deterministic graph families.

Structured families come from `networkx` generators and are relabelled to
1..n in sorted node order. Random regular graphs use the pairing (stub) model
with rejection of self-loops and multi-edges, retried until the result is
connected; the generator state is `random.Random(seed)`, so a fixed
(family, params, seed) always yields the same edge set.
"""

from __future__ import annotations

import random
from enum import Enum
from typing import Any

import networkx as nx
from pydantic import BaseModel

from src.config import Settings, settings
from src.errors import DisconnectedGraphError, InfeasibleParametersError
from src.graph.graph import Graph, build_graph
from src.utils.logging import get_logger

logger = get_logger(__name__)


class GraphFamily(str, Enum):
    PATH = "path"
    CYCLE = "cycle"
    COMPLETE = "complete"
    GRID = "grid"
    HYPERCUBE = "hypercube"
    RANDOM_REGULAR = "random_regular"

    @classmethod
    def parse(cls, name: str) -> "GraphFamily":
        try:
            return cls(name.replace("-", "_"))
        except ValueError as exc:
            choices = ", ".join(member.value for member in cls)
            raise InfeasibleParametersError(f"Unknown graph family {name!r}; expected one of: {choices}.") from exc


class FamilyParams(BaseModel):
    """Parameters shared by all families; each family reads the ones it needs."""

    n: int | None = None
    degree: int | None = None
    rows: int | None = None
    cols: int | None = None
    dim: int | None = None


def _require(value: int | None, name: str, family: GraphFamily, minimum: int) -> int:
    if value is None:
        raise InfeasibleParametersError(f"Family {family.value!r} requires parameter {name!r}.")
    if value < minimum:
        raise InfeasibleParametersError(f"Family {family.value!r} requires {name} >= {minimum} (got {value}).")
    return value


def _from_networkx(nx_graph: Any) -> Graph:
    ordering = sorted(nx_graph.nodes())
    relabel = {node: index for index, node in enumerate(ordering, start=1)}
    edges = [(relabel[u], relabel[v]) for u, v in nx_graph.edges()]
    return build_graph(len(ordering), edges)


def _pairing_attempt(n: int, degree: int, rng: random.Random) -> set[tuple[int, int]] | None:
    """One pass of the pairing model; None when a pair collides."""

    stubs = [v for v in range(1, n + 1) for _ in range(degree)]
    rng.shuffle(stubs)
    edges: set[tuple[int, int]] = set()
    stub_iter = iter(stubs)
    for s1, s2 in zip(stub_iter, stub_iter):
        if s1 > s2:
            s1, s2 = s2, s1
        if s1 == s2 or (s1, s2) in edges:
            return None
        edges.add((s1, s2))
    return edges


def random_regular(n: int, degree: int, seed: int, *, cfg: Settings = settings) -> Graph:
    """Sample a connected simple `degree`-regular graph on n vertices."""

    if not 0 < degree < n:
        raise InfeasibleParametersError(f"random_regular requires 0 < degree < n (got degree={degree}, n={n}).")
    if (n * degree) % 2 != 0:
        raise InfeasibleParametersError(f"random_regular requires n*degree even (got {n}*{degree}).")

    rng = random.Random(seed)
    for attempt in range(1, cfg.random_regular_max_attempts + 1):
        edges = _pairing_attempt(n, degree, rng)
        if edges is None:
            continue
        try:
            graph = build_graph(n, sorted(edges))
        except DisconnectedGraphError:
            continue
        logger.debug(
            "random_regular accepted",
            extra={"context": {"n": n, "degree": degree, "seed": seed, "attempt": attempt}},
        )
        return graph

    raise InfeasibleParametersError(
        f"No connected simple {degree}-regular graph on {n} vertices found in "
        f"{cfg.random_regular_max_attempts} attempts (seed={seed})."
    )


def generate(family: GraphFamily | str, params: FamilyParams, seed: int = 0, *, cfg: Settings = settings) -> Graph:
    """Build a graph of the requested family; deterministic in (family, params, seed)."""

    if isinstance(family, str):
        family = GraphFamily.parse(family)

    if family is GraphFamily.PATH:
        n = _require(params.n, "n", family, 1)
        return _from_networkx(nx.path_graph(n))
    if family is GraphFamily.CYCLE:
        n = _require(params.n, "n", family, 3)
        return _from_networkx(nx.cycle_graph(n))
    if family is GraphFamily.COMPLETE:
        n = _require(params.n, "n", family, 1)
        return _from_networkx(nx.complete_graph(n))
    if family is GraphFamily.GRID:
        rows = _require(params.rows, "rows", family, 1)
        cols = _require(params.cols, "cols", family, 1)
        return _from_networkx(nx.grid_2d_graph(rows, cols))
    if family is GraphFamily.HYPERCUBE:
        dim = _require(params.dim, "dim", family, 1)
        return _from_networkx(nx.hypercube_graph(dim))

    n = _require(params.n, "n", family, 1)
    degree = _require(params.degree, "degree", family, 1)
    return random_regular(n, degree, seed, cfg=cfg)
