"""The instance family 𝒳 = {g_{x,b} : x in {1} x [n]^L, b in {0, 1}}.

A `FunctionLabel` names one member without materialising its values. Weights
only look at a label's milestones through a `SequenceProfile` (the f-values,
the final milestone, goodness, and the tail sets for every index), which the
family computes once per sequence and caches.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations

from src.config import ExactnessMode, Settings, settings
from src.errors import InexactArithmeticError, MilestoneValidationError
from src.graph.graph import Graph
from src.graph.metrics import bfs_row
from src.routing.paths import PathSystem, validate_path_system, vertex_congestion
from src.staircase.instance import HardInstance, tail
from src.staircase.milestones import MilestoneSequence, all_sequences, is_good
from src.utils.logging import get_logger
from src.utils.rationals import three_halves_power

logger = get_logger(__name__)


@dataclass(frozen=True, order=True)
class FunctionLabel:
    milestones: MilestoneSequence
    b: int

    @property
    def hidden(self) -> int:
        """ℋ(g_{x,b}) = b."""

        return self.b


@dataclass(frozen=True)
class SequenceProfile:
    milestones: MilestoneSequence
    values: tuple[int, ...]
    good: bool
    tails: tuple[frozenset[int], ...]

    @property
    def final(self) -> int:
        return self.milestones.final

    def value(self, v: int) -> int:
        return self.values[v - 1]

    def in_tail(self, j: int, v: int) -> bool:
        """v ∈ Tail(j, S_x) for 1 <= j <= L+1."""

        return v in self.tails[j - 1]


@dataclass(frozen=True)
class ScaleFactors:
    """g/n^{1.5} and n^{1.5}/g, plus whether n^{1.5} was exact."""

    n_three_halves: Fraction
    down: Fraction
    up: Fraction
    exact: bool


class InstanceFamily:
    """All 2·n^L decorated functions for a fixed graph, path system, and L."""

    def __init__(
        self,
        graph: Graph,
        path_system: PathSystem,
        L: int,
        *,
        exactness: ExactnessMode = "exact",
        cfg: Settings = settings,
    ) -> None:
        if L < 1:
            raise MilestoneValidationError(f"L must be >= 1 (got {L}).")
        validate_path_system(graph, path_system)

        self.graph = graph
        self.path_system = path_system
        self.L = L
        self.exactness = exactness
        self.cfg = cfg
        self.g = vertex_congestion(path_system).g
        self._dist_to_root = bfs_row(graph, 1)
        self._profiles: dict[MilestoneSequence, SequenceProfile] = {}

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def size(self) -> int:
        return 2 * self.n**self.L

    @property
    def good_count(self) -> int:
        return math.perm(self.n - 1, self.L)

    def sequences(self) -> Iterator[MilestoneSequence]:
        return all_sequences(self.n, self.L)

    @cached_property
    def good_sequences(self) -> tuple[MilestoneSequence, ...]:
        """Good sequences in lexicographic order, enumerated without visiting bad ones."""

        return tuple(MilestoneSequence((1, *rest)) for rest in permutations(range(2, self.n + 1), self.L))

    def labels(self) -> Iterator[FunctionLabel]:
        for x in self.sequences():
            yield FunctionLabel(x, 0)
            yield FunctionLabel(x, 1)

    def instance(self, x: MilestoneSequence) -> HardInstance:
        return HardInstance(
            graph=self.graph,
            path_system=self.path_system,
            milestones=x,
            dist_to_root=self._dist_to_root,
        )

    def profile(self, x: MilestoneSequence) -> SequenceProfile:
        cached = self._profiles.get(x)
        if cached is not None:
            return cached

        if x.L != self.L:
            raise MilestoneValidationError(f"Sequence {x.entries} has L={x.L}, family has L={self.L}.")
        inst = self.instance(x)
        staircase = inst.staircase
        profile = SequenceProfile(
            milestones=x,
            values=inst.value_table(),
            good=is_good(x),
            tails=tuple(frozenset(tail(j, staircase)) for j in range(1, self.L + 2)),
        )
        self._profiles[x] = profile
        return profile

    @cached_property
    def scale(self) -> ScaleFactors:
        """The congestion factors used by r'.

        Raises
        ------
        InexactArithmeticError
            In exact mode when n is not a perfect square.
        """

        value, exact = three_halves_power(self.n, precision=self.cfg.decimal_precision)
        if not exact and self.exactness == "exact":
            raise InexactArithmeticError(
                f"n={self.n} is not a perfect square, so n^1.5 is irrational; rerun with --float."
            )
        if not exact:
            logger.info("Using float fallback for n^1.5", extra={"context": {"n": self.n}})
        return ScaleFactors(
            n_three_halves=value,
            down=Fraction(self.g) / value,
            up=value / self.g,
            exact=exact,
        )

    @property
    def exact(self) -> bool:
        return self.scale.exact

    def provenance(self) -> dict[str, object]:
        return {
            "n": self.n,
            "L": self.L,
            "g": self.g,
            "labels": self.size,
            "good_sequences": self.good_count,
            "graph_fingerprint": self.graph.fingerprint(),
            "paths_fingerprint": self.path_system.fingerprint(),
            "exactness": self.exactness,
        }
