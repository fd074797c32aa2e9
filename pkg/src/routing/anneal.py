"""Local-move heuristic that lowers the vertex congestion of a path system.

Each iteration picks a random ordered pair (u, v), u != v, proposes a random
alternative simple path for it and keeps the proposal when the maximum vertex
load does not increase. Proposals are either a uniformly random shortest path
or a detour through one random intermediate vertex.
"""

from __future__ import annotations

import random
from collections import Counter

from src.graph.graph import Graph
from src.graph.metrics import DistanceMatrix, distances
from src.routing.paths import Path, PathSystem, validate_path_system
from src.utils.logging import get_logger

logger = get_logger(__name__)


def _random_shortest_path(dist: DistanceMatrix, graph: Graph, u: int, v: int, rng: random.Random) -> Path:
    walk = [v]
    while walk[-1] != u:
        w = walk[-1]
        closer = [p for p in graph.neighbors(w) if dist.dist(u, p) == dist.dist(u, w) - 1]
        walk.append(rng.choice(closer))
    return tuple(reversed(walk))


def _propose(dist: DistanceMatrix, graph: Graph, u: int, v: int, rng: random.Random) -> Path | None:
    if rng.random() < 0.5:
        return _random_shortest_path(dist, graph, u, v, rng)

    via = rng.randint(1, graph.n)
    if via in (u, v):
        return None
    candidate = _random_shortest_path(dist, graph, u, via, rng) + _random_shortest_path(dist, graph, via, v, rng)[1:]
    if len(set(candidate)) != len(candidate):
        return None
    return candidate


def anneal_congestion(graph: Graph, start: PathSystem, iterations: int, seed: int) -> PathSystem:
    """Return a system whose congestion is at most that of `start`.

    Deterministic given `seed`. With `iterations == 0`, `start` itself is returned.
    """

    validate_path_system(graph, start)
    if iterations <= 0 or graph.n < 2:
        return start

    rng = random.Random(seed)
    dist = distances(graph)

    loads: Counter[int] = Counter()
    for path in start.paths.values():
        loads.update(path)
    current_max = max(loads.values())

    paths = dict(start.paths)
    accepted = 0
    for _ in range(iterations):
        u = rng.randint(1, graph.n)
        v = rng.randint(1, graph.n - 1)
        if v >= u:
            v += 1

        proposal = _propose(dist, graph, u, v, rng)
        old = paths[(u, v)]
        if proposal is None or proposal == old:
            continue

        loads.subtract(old)
        loads.update(proposal)
        new_max = max(loads.values())
        if new_max <= current_max:
            paths[(u, v)] = proposal
            current_max = new_max
            accepted += 1
        else:
            loads.subtract(proposal)
            loads.update(old)

    logger.info(
        "Anneal finished",
        extra={"context": {"iterations": iterations, "accepted": accepted, "g": current_max, "seed": seed}},
    )
    return PathSystem(n=start.n, paths=paths)
