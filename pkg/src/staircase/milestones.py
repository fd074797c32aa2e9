"""Milestone sequences x = (x_1, ..., x_{L+1}) with x_1 = 1."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import product

from src.errors import MilestoneValidationError


@dataclass(frozen=True, order=True)
class MilestoneSequence:
    entries: tuple[int, ...]

    @property
    def L(self) -> int:
        return len(self.entries) - 1

    @property
    def final(self) -> int:
        return self.entries[-1]

    def __getitem__(self, i: int) -> int:
        """1-based access: x[1] is the anchor vertex 1."""

        return self.entries[i - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def milestone_sequence(entries: Iterable[int], n: int) -> MilestoneSequence:
    """Validate and wrap a milestone sequence for a graph on n vertices.

    Raises
    ------
    MilestoneValidationError
        If fewer than two entries are given, the first is not 1, or an entry
        lies outside 1..n.
    """

    values = tuple(int(v) for v in entries)
    if len(values) < 2:
        raise MilestoneValidationError(f"A milestone sequence needs L >= 1, i.e. at least 2 entries (got {values}).")
    if values[0] != 1:
        raise MilestoneValidationError(f"The first milestone must be vertex 1 (got {values[0]}).")
    for v in values:
        if not 1 <= v <= n:
            raise MilestoneValidationError(f"Milestone {v} is outside 1..{n}.")
    return MilestoneSequence(values)


def all_sequences(n: int, L: int) -> Iterator[MilestoneSequence]:
    """Every sequence in {1} x [n]^L, in lexicographic order."""

    for tail in product(range(1, n + 1), repeat=L):
        yield MilestoneSequence((1, *tail))


def is_good(x: MilestoneSequence) -> bool:
    return len(set(x.entries)) == len(x.entries)


def shared_prefix(x: MilestoneSequence, y: MilestoneSequence) -> int:
    """J_{x,y}: length of the longest common prefix, between 1 and L+1."""

    if len(x) != len(y):
        raise MilestoneValidationError(f"Sequences have different lengths ({len(x)} vs {len(y)}).")
    j = 0
    for a, b in zip(x.entries, y.entries):
        if a != b:
            break
        j += 1
    return j


def multiplicity(sequence: Sequence[int], u: int) -> int:
    """How many times vertex u appears in `sequence`."""

    return sum(1 for w in sequence if w == u)
