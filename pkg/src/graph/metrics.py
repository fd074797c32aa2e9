"""Distances, degree/regularity, exact edge expansion, and bound formulas."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from pydantic import BaseModel

from src.config import Settings, settings
from src.errors import BudgetExceededError, InputValidationError
from src.graph.graph import Graph
from src.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class DistanceMatrix:
    """Hop distances for all ordered vertex pairs (rows indexed by source)."""

    n: int
    rows: tuple[tuple[int, ...], ...]

    def dist(self, u: int, v: int) -> int:
        return self.rows[u - 1][v - 1]

    def row(self, u: int) -> tuple[int, ...]:
        """Distances from u to 1..n, position v-1 holding dist(u, v)."""

        return self.rows[u - 1]


@dataclass(frozen=True)
class GraphMetrics:
    max_degree: int
    is_regular: bool
    expansion: Fraction | None = None


def bfs_row(graph: Graph, source: int) -> tuple[int, ...]:
    dist = [-1] * (graph.n + 1)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in graph.neighbors(u):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return tuple(dist[1:])


def distances(graph: Graph) -> DistanceMatrix:
    """Exact BFS hop distances for every ordered pair."""

    return DistanceMatrix(n=graph.n, rows=tuple(bfs_row(graph, s) for s in graph.vertices))


def expansion_exact(graph: Graph, *, cfg: Settings = settings) -> Fraction:
    """Minimum of |E(S, V∖S)| / |S| over all S with 0 < |S| <= n/2.

    Subsets are enumerated exhaustively as bitmasks; the cut size of S is the
    number of (u in S, neighbour outside S) incidences.

    Raises
    ------
    BudgetExceededError
        When n exceeds `cfg.expansion_max_vertices`.
    """

    n = graph.n
    if n > cfg.expansion_max_vertices:
        raise BudgetExceededError(
            f"Exact expansion enumerates 2^{n} subsets; n={n} exceeds the cap of {cfg.expansion_max_vertices}."
        )
    if n == 1:
        # No admissible S exists; report 0 rather than an empty minimum.
        return Fraction(0)

    neighbor_masks = [0] * (n + 1)
    for v in graph.vertices:
        for w in graph.neighbors(v):
            neighbor_masks[v] |= 1 << (w - 1)

    best: Fraction | None = None
    for size in range(1, n // 2 + 1):
        for subset in combinations(graph.vertices, size):
            mask = 0
            for v in subset:
                mask |= 1 << (v - 1)
            cut = sum((neighbor_masks[v] & ~mask).bit_count() for v in subset)
            ratio = Fraction(cut, size)
            if best is None or ratio < best:
                best = ratio

    assert best is not None
    logger.debug("expansion computed", extra={"context": {"n": n, "beta": str(best)}})
    return best


def metrics(graph: Graph, compute_expansion: bool = False, *, cfg: Settings = settings) -> GraphMetrics:
    degrees = [graph.degree(v) for v in graph.vertices]
    max_degree = max(degrees)
    return GraphMetrics(
        max_degree=max_degree,
        is_regular=all(d == max_degree for d in degrees),
        expansion=expansion_exact(graph, cfg=cfg) if compute_expansion else None,
    )


class BoundEstimates(BaseModel):
    """Bound formulas evaluated without their hidden asymptotic constants."""

    n: int
    g: int
    quantum: float
    threshold: float
    two_branch_threshold: float
    classical_reference: float
    expander: float | None = None
    regular_graph: float | None = None


def bound_calculator(n: int, g: int, delta: int | None = None, beta: Fraction | None = None) -> BoundEstimates:
    """Evaluate the quantum lower-bound formulas for given (n, g, Δ, β).

    - quantum: n^{0.75} / √g, without constants
    - threshold: (1/(8e)) · n^{0.75} / √g, the constant-bearing form
    - two_branch_threshold: (1/(8e)) · min{n^{1.5}/g, n^{0.75}/√g}
    - classical_reference: n^{1.5} / g
    - expander: √β · n^{1/4} / (√Δ · log n), when Δ and β are given
    - regular_graph: n^{1/4} / √(log n)
    """

    if n < 2:
        raise InputValidationError(f"bound_calculator requires n >= 2 (got {n}).")
    if g < 1:
        raise InputValidationError(f"bound_calculator requires g >= 1 (got {g}).")

    quantum = n**0.75 / math.sqrt(g)
    classical = n**1.5 / g
    log_n = math.log(n)

    expander = None
    if delta is not None and beta is not None:
        expander = math.sqrt(float(beta)) * n**0.25 / (math.sqrt(delta) * log_n)

    return BoundEstimates(
        n=n,
        g=g,
        quantum=quantum,
        threshold=quantum / (8 * math.e),
        two_branch_threshold=min(classical, quantum) / (8 * math.e),
        classical_reference=classical,
        expander=expander,
        regular_graph=n**0.25 / math.sqrt(log_n),
    )
