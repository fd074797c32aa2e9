"""Exact and sampled evaluation of the strong weighted adversary minimum.

The objective is

    min  M(F1)·M(F2) / (ν(F1, v)·ν(F2, v))

over triples with r(F1, F2) > 0 and F1(v) != F2(v). The minimum is taken on
the squared ratio as an exact rational; a square root is only rendered for
display.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from src.adversary.family import FunctionLabel, InstanceFamily
from src.adversary.weights import M_table, M_value, admissible_vertices, nu_row, nu_table
from src.config import Settings
from src.errors import BudgetExceededError, EmptyEstimateError, EmptyRelationError
from src.staircase.milestones import MilestoneSequence
from src.utils.logging import get_logger
from src.utils.rationals import sqrt_decimal_string

logger = get_logger(__name__)


@dataclass(frozen=True)
class Witness:
    F1: FunctionLabel
    F2: FunctionLabel
    v: int


@dataclass
class AdversaryEvaluation:
    n: int
    L: int
    g: int
    exact: bool
    M: dict[MilestoneSequence, Fraction]
    nu: dict[MilestoneSequence, tuple[Fraction, ...]]
    min_ratio_squared: Fraction
    witness: Witness
    triples: int = 0

    @property
    def bound(self) -> str:
        return sqrt_decimal_string(self.min_ratio_squared)


@dataclass
class SampledEstimate:
    n: int
    L: int
    g: int
    exact: bool
    samples: int
    seed: int
    pool: list[MilestoneSequence]
    min_ratio_squared: Fraction
    witness: Witness
    upper_bound: bool = field(default=True)

    @property
    def bound(self) -> str:
        return sqrt_decimal_string(self.min_ratio_squared)


def require_relation(fam: InstanceFamily) -> None:
    """Raise `EmptyRelationError` unless two distinct good sequences exist."""

    if fam.good_count < 2:
        raise EmptyRelationError(
            f"No pair of functions has r > 0 for n={fam.n}, L={fam.L}: a nonzero weight needs two distinct "
            f"sequences with all-distinct milestones, and only {fam.good_count} exist."
        )


def require_enumerable(fam: InstanceFamily, cfg: Settings | None = None) -> None:
    """Raise `BudgetExceededError` when full enumeration is over budget."""

    cfg = cfg or fam.cfg
    if fam.size > cfg.budget_labels:
        raise BudgetExceededError(
            f"Family has {fam.size} labels, above the budget of {cfg.budget_labels}; use sampled mode."
        )
    evaluations = fam.good_count**2 * fam.n
    if evaluations > cfg.budget_rprime:
        raise BudgetExceededError(
            f"Full evaluation needs about {evaluations} r' terms, above the budget of {cfg.budget_rprime}; "
            "use sampled mode."
        )


def ratio_squared(M1: Fraction, M2: Fraction, nu1: Fraction, nu2: Fraction) -> Fraction:
    return M1 * M2 / (nu1 * nu2)


def adversary_bound(fam: InstanceFamily, cfg: Settings | None = None) -> AdversaryEvaluation:
    """Evaluate the adversary minimum by full enumeration.

    The witness is the first minimising triple in the order (x, y, v), with
    x < y lexicographically, F1 = (x, 0) and F2 = (y, 1).

    Raises
    ------
    EmptyRelationError
        If no pair has r > 0.
    BudgetExceededError
        If the family is larger than the configured budgets.
    """

    require_relation(fam)
    require_enumerable(fam, cfg)
    _ = fam.scale

    M = M_table(fam)
    nu = nu_table(fam)
    good = fam.good_sequences

    best: Fraction | None = None
    witness: Witness | None = None
    triples = 0
    for i, x in enumerate(good):
        for y in good[i + 1 :]:
            for v in admissible_vertices(x, y, fam):
                triples += 1
                value = ratio_squared(M[x], M[y], nu[x][v - 1], nu[y][v - 1])
                if best is None or value < best:
                    best = value
                    witness = Witness(FunctionLabel(x, 0), FunctionLabel(y, 1), v)

    assert best is not None and witness is not None
    evaluation = AdversaryEvaluation(
        n=fam.n,
        L=fam.L,
        g=fam.g,
        exact=fam.exact,
        M=M,
        nu=nu,
        min_ratio_squared=best,
        witness=witness,
        triples=triples,
    )
    logger.info(
        "Adversary minimum computed",
        extra={
            "context": {
                "n": fam.n,
                "L": fam.L,
                "g": fam.g,
                "triples": triples,
                "min_ratio_squared": str(best),
            }
        },
    )
    return evaluation


def _sample_pool(fam: InstanceFamily, size: int, rng: random.Random) -> list[MilestoneSequence]:
    if fam.good_count <= size:
        return list(fam.good_sequences)
    pool: set[MilestoneSequence] = set()
    while len(pool) < size:
        rest = rng.sample(range(2, fam.n + 1), fam.L)
        pool.add(MilestoneSequence((1, *rest)))
    return sorted(pool)


def sampled_adversary_bound(
    fam: InstanceFamily,
    samples: int,
    seed: int,
    cfg: Settings | None = None,
) -> SampledEstimate:
    """Estimate the adversary minimum from sampled triples.

    A pool of good sequences is drawn uniformly, M and ν are computed exactly
    for pool members, and `samples` triples are drawn uniformly among pool
    pairs and their differing vertices. The result is the minimum over a
    subset of valid triples, so it is an upper bound on the exact minimum.

    Raises
    ------
    EmptyEstimateError
        If `samples` is not positive.
    """

    cfg = cfg or fam.cfg
    if samples <= 0:
        raise EmptyEstimateError(f"Sampled mode needs samples >= 1 (got {samples}).")
    require_relation(fam)
    _ = fam.scale

    rng = random.Random(seed)
    pool = _sample_pool(fam, max(cfg.sample_pool, 2), rng)
    M = {x: M_value(FunctionLabel(x, 0), fam) for x in pool}
    nu = {x: nu_row(x, fam) for x in pool}
    logger.info(
        "Sampled pool evaluated",
        extra={"context": {"n": fam.n, "L": fam.L, "pool": len(pool), "samples": samples, "seed": seed}},
    )

    best: Fraction | None = None
    witness: Witness | None = None
    for _ in range(samples):
        x, y = sorted(rng.sample(pool, 2))
        v = rng.choice(admissible_vertices(x, y, fam))
        value = ratio_squared(M[x], M[y], nu[x][v - 1], nu[y][v - 1])
        if best is None or value < best:
            best = value
            witness = Witness(FunctionLabel(x, 0), FunctionLabel(y, 1), v)

    assert best is not None and witness is not None
    return SampledEstimate(
        n=fam.n,
        L=fam.L,
        g=fam.g,
        exact=fam.exact,
        samples=samples,
        seed=seed,
        pool=pool,
        min_ratio_squared=best,
        witness=witness,
    )
