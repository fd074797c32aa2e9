"""Exhaustive minimum-congestion routing for tiny graphs.

Used as an oracle: it proves (by search) that no choice of simple paths beats
the congestion it returns. Every vertex v lies on its own 2(n-1) paths plus
P^{v,v}, so 2n-1 is a lower bound on the congestion of any system; the search
stops as soon as the incumbent reaches it.
"""

from __future__ import annotations

import networkx as nx

from src.config import Settings, settings
from src.errors import BudgetExceededError
from src.graph.graph import Graph
from src.routing.paths import Path, PathSystem, shortest_path_system, vertex_congestion
from src.utils.logging import get_logger

logger = get_logger(__name__)


def _candidate_paths(nx_graph: object, u: int, v: int, cap: int) -> list[Path]:
    candidates = sorted((tuple(p) for p in nx.all_simple_paths(nx_graph, u, v)), key=lambda p: (len(p), p))
    if len(candidates) > cap:
        raise BudgetExceededError(
            f"Pair ({u}, {v}) has {len(candidates)} simple paths; the brute-force cap is {cap} per pair."
        )
    return candidates


def min_congestion_bruteforce(graph: Graph, *, cfg: Settings = settings) -> tuple[PathSystem, int]:
    """Return a path system of minimum vertex congestion and its congestion g.

    Raises
    ------
    BudgetExceededError
        When n exceeds `cfg.bruteforce_max_vertices`, some pair has more than
        `cfg.bruteforce_paths_per_pair` simple paths, or the search visits more
        than `cfg.bruteforce_node_budget` nodes.
    """

    n = graph.n
    if n > cfg.bruteforce_max_vertices:
        raise BudgetExceededError(
            f"Brute-force routing supports n <= {cfg.bruteforce_max_vertices} (got n={n})."
        )

    incumbent = shortest_path_system(graph)
    best_g = vertex_congestion(incumbent).g
    lower_bound = 2 * n - 1
    if best_g == lower_bound:
        return incumbent, best_g

    nx_graph = graph.to_networkx()
    pairs = [(u, v) for u in graph.vertices for v in graph.vertices if u != v]
    candidates = {pair: _candidate_paths(nx_graph, *pair, cfg.bruteforce_paths_per_pair) for pair in pairs}

    loads = [0] + [1] * n  # P^{v,v} = (v) is fixed
    chosen: dict[tuple[int, int], Path] = {}
    best_choice: dict[tuple[int, int], Path] | None = None
    nodes = 0

    def search(index: int) -> bool:
        nonlocal best_g, best_choice, nodes
        nodes += 1
        if nodes > cfg.bruteforce_node_budget:
            raise BudgetExceededError(f"Brute-force routing exceeded {cfg.bruteforce_node_budget} search nodes.")

        if index == len(pairs):
            best_g = max(loads)
            best_choice = dict(chosen)
            return best_g == lower_bound

        pair = pairs[index]
        for path in candidates[pair]:
            for w in path:
                loads[w] += 1
            if max(loads) < best_g:
                chosen[pair] = path
                if search(index + 1):
                    return True
            for w in path:
                loads[w] -= 1
        return False

    search(0)

    if best_choice is not None:
        paths = {(v, v): (v,) for v in graph.vertices}
        paths.update(best_choice)
        incumbent = PathSystem(n=n, paths=paths)

    logger.info("Brute-force routing finished", extra={"context": {"n": n, "g": best_g, "nodes": nodes}})
    return incumbent, best_g
