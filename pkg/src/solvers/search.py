"""Classical local-search baselines and the search-to-decision reduction."""

from __future__ import annotations

import random

from pydantic import BaseModel, Field

from src.errors import InputValidationError, SolverConsistencyError
from src.solvers.oracle import QueryOracle
from src.staircase.instance import eval_f, local_minima
from src.utils.logging import get_logger

logger = get_logger(__name__)


class SolveResult(BaseModel):
    algorithm: str
    seed: int | None = None
    answer: int | None = None
    bit: int | None = None
    distinct_queries: int
    total_queries: int
    trace: list[int] = Field(default_factory=list)


def _check_local_minimum(oracle: QueryOracle, v: int) -> None:
    instance = oracle.instance
    minima = local_minima(instance.graph, lambda u: eval_f(instance, u))
    if v not in minima:
        raise SolverConsistencyError(f"Solver answered vertex {v}, which is not a local minimum.")


def steepest_descent(oracle: QueryOracle, start: int) -> SolveResult:
    """Move to the smallest-valued neighbour while it improves on the current value.

    The start is queried once; every round then queries all neighbours of the
    current vertex in ascending label order. Among equally small neighbours
    the smallest label wins.
    """

    current = start
    value = oracle.f_value(start)
    trace = [start]
    while True:
        best, best_value = None, value
        for u in oracle.graph.neighbors(current):
            candidate = oracle.f_value(u)
            if candidate < best_value:
                best, best_value = u, candidate
        if best is None:
            break
        current, value = best, best_value
        trace.append(current)

    _check_local_minimum(oracle, current)
    logger.debug(
        "steepest descent finished",
        extra={"context": {"start": start, "answer": current, "total_queries": oracle.total_queries}},
    )
    return SolveResult(
        algorithm="steepest",
        answer=current,
        distinct_queries=oracle.distinct_queries,
        total_queries=oracle.total_queries,
        trace=trace,
    )


def random_descent(oracle: QueryOracle, probes: int, seed: int) -> SolveResult:
    """Probe random vertices, then descend from the smallest probe."""

    if probes < 1:
        raise InputValidationError(f"random_descent needs probes >= 1 (got {probes}).")

    rng = random.Random(seed)
    sample = rng.sample(range(1, oracle.instance.n + 1), min(probes, oracle.instance.n))
    values = {v: oracle.f_value(v) for v in sample}
    start = min(sample, key=lambda v: (values[v], v))

    descent = steepest_descent(oracle, start)
    return descent.model_copy(
        update={
            "algorithm": "random",
            "seed": seed,
            "distinct_queries": oracle.distinct_queries,
            "total_queries": oracle.total_queries,
        }
    )


def decision_from_search(oracle: QueryOracle, start: int = 1) -> SolveResult:
    """Recover the hidden bit: search for the local minimum, then read its tag.

    The tag is taken from the transcript when the minimum was already queried;
    otherwise exactly one more query is issued.
    """

    if oracle.mode != "g":
        raise InputValidationError("decision_from_search needs a g-mode oracle.")

    search = steepest_descent(oracle, start)
    assert search.answer is not None
    record = oracle.last_record(search.answer)
    if record is None:
        oracle.query(search.answer)
        record = oracle.last_record(search.answer)
    assert record is not None

    if record.tag not in (0, 1):
        raise SolverConsistencyError(f"Vertex {search.answer} carries no hidden bit (tag {record.tag}).")

    return SolveResult(
        algorithm="decide",
        answer=search.answer,
        bit=record.tag,
        distinct_queries=oracle.distinct_queries,
        total_queries=oracle.total_queries,
        trace=search.trace,
    )
