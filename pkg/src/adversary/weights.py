"""The weight scheme (r*, r, r') and its row sums M and ν.

For labels F1 = (x, b1) and F2 = (y, b2) with J = J_{x,y}:

    r*(F1, F2) = 0 if b1 = b2 or x or y is bad, else n^J
    r(F1, F2)  = 0 if x = y, else r*(F1, F2)

r'(F1, F2, v) is 0 when the two functions agree at v (or share the hidden
bit), r·g/n^{1.5} when v lies only in Tail(J, S_x), r·n^{1.5}/g when v lies
only in Tail(J, S_y), and r otherwise.

The row sums never depend on F1's bit: exactly one bit of every partner
sequence carries a nonzero weight. `M_value` and `nu_value` therefore loop
over good partner sequences only, and ν is accumulated in three integer
buckets that are scaled once at the end.
"""

from __future__ import annotations

from fractions import Fraction

from src.adversary.family import FunctionLabel, InstanceFamily, SequenceProfile
from src.staircase.milestones import MilestoneSequence, shared_prefix
from src.utils.logging import get_logger

logger = get_logger(__name__)


def values_differ(fam: InstanceFamily, F1: FunctionLabel, F2: FunctionLabel, v: int) -> bool:
    """g_{x,b1}(v) != g_{y,b2}(v), comparing both the value and the tag."""

    p, q = fam.profile(F1.milestones), fam.profile(F2.milestones)
    tag1 = F1.b if v == p.final else -1
    tag2 = F2.b if v == q.final else -1
    return p.value(v) != q.value(v) or tag1 != tag2


def _opposite_bits_differ(p: SequenceProfile, q: SequenceProfile, v: int) -> bool:
    return p.values[v - 1] != q.values[v - 1] or v == p.final or v == q.final


def r_star(F1: FunctionLabel, F2: FunctionLabel, fam: InstanceFamily) -> Fraction:
    if F1.b == F2.b:
        return Fraction(0)
    if not fam.profile(F1.milestones).good or not fam.profile(F2.milestones).good:
        return Fraction(0)
    return Fraction(fam.n ** shared_prefix(F1.milestones, F2.milestones))


def r(F1: FunctionLabel, F2: FunctionLabel, fam: InstanceFamily) -> Fraction:
    if F1.milestones == F2.milestones:
        return Fraction(0)
    return r_star(F1, F2, fam)


def r_prime(F1: FunctionLabel, F2: FunctionLabel, v: int, fam: InstanceFamily) -> Fraction:
    """r'(F1, F2, v); not symmetric in (F1, F2)."""

    if F1.hidden == F2.hidden or not values_differ(fam, F1, F2, v):
        return Fraction(0)
    weight = r(F1, F2, fam)
    if weight == 0:
        return weight

    J = shared_prefix(F1.milestones, F2.milestones)
    in_x = fam.profile(F1.milestones).in_tail(J, v)
    in_y = fam.profile(F2.milestones).in_tail(J, v)
    if in_x and not in_y:
        return weight * fam.scale.down
    if in_y and not in_x:
        return weight * fam.scale.up
    return weight


def M_value(F1: FunctionLabel, fam: InstanceFamily) -> Fraction:
    """M(F1) = Σ_{F2} r(F1, F2) over the whole family."""

    return Fraction(_M_integer(F1.milestones, fam))


def _M_integer(x: MilestoneSequence, fam: InstanceFamily) -> int:
    if not fam.profile(x).good:
        return 0
    n = fam.n
    return sum(n ** shared_prefix(x, y) for y in fam.good_sequences if y != x)


def M_table(fam: InstanceFamily) -> dict[MilestoneSequence, Fraction]:
    """M for every good sequence (bad sequences have M = 0)."""

    return {x: Fraction(_M_integer(x, fam)) for x in fam.good_sequences}


def rstar_sum(F1: FunctionLabel, fam: InstanceFamily) -> Fraction:
    """Σ_{F2} r*(F1, F2) over every label of the family.

    Evaluated term by term through `r_star`, so it is independent of the
    shortcut behind `M_value`.
    """

    if not fam.profile(F1.milestones).good:
        return Fraction(0)
    return sum((r_star(F1, F2, fam) for F2 in fam.labels()), Fraction(0))


def _nu_buckets(x: MilestoneSequence, fam: InstanceFamily) -> list[list[int]]:
    """Per vertex v (index v-1): [unscaled, ×g/n^1.5, ×n^1.5/g] integer sums."""

    n = fam.n
    buckets = [[0, 0, 0] for _ in range(n)]
    p = fam.profile(x)
    if not p.good:
        return buckets

    for y in fam.good_sequences:
        if y == x:
            continue
        q = fam.profile(y)
        J = shared_prefix(x, y)
        weight = n**J
        tail_x, tail_y = p.tails[J - 1], q.tails[J - 1]
        for v in range(1, n + 1):
            if not _opposite_bits_differ(p, q, v):
                continue
            in_x, in_y = v in tail_x, v in tail_y
            if in_x and not in_y:
                buckets[v - 1][1] += weight
            elif in_y and not in_x:
                buckets[v - 1][2] += weight
            else:
                buckets[v - 1][0] += weight
    return buckets


def _combine(bucket: list[int], fam: InstanceFamily) -> Fraction:
    plain, down, up = bucket
    result = Fraction(plain)
    if down:
        result += down * fam.scale.down
    if up:
        result += up * fam.scale.up
    return result


def nu_value(F1: FunctionLabel, v: int, fam: InstanceFamily) -> Fraction:
    """ν(F1, v) = Σ_{F2} r'(F1, F2, v) over the whole family."""

    return _combine(_nu_buckets(F1.milestones, fam)[v - 1], fam)


def nu_row(x: MilestoneSequence, fam: InstanceFamily) -> tuple[Fraction, ...]:
    """ν((x, b), v) for v = 1..n; the same for either bit b."""

    return tuple(_combine(bucket, fam) for bucket in _nu_buckets(x, fam))


def nu_table(fam: InstanceFamily) -> dict[MilestoneSequence, tuple[Fraction, ...]]:
    table = {x: nu_row(x, fam) for x in fam.good_sequences}
    logger.info("Computed ν rows", extra={"context": {"rows": len(table), "n": fam.n, "L": fam.L}})
    return table


def admissible_vertices(x: MilestoneSequence, y: MilestoneSequence, fam: InstanceFamily) -> list[int]:
    """Vertices v where (x, b) and (y, 1-b) differ, for good x != y."""

    p, q = fam.profile(x), fam.profile(y)
    return [v for v in range(1, fam.n + 1) if _opposite_bits_differ(p, q, v)]
