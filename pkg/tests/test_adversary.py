"""Tests for the weight scheme, M and ν, and the adversary minimum."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from src.adversary.bound import adversary_bound, ratio_squared, sampled_adversary_bound
from src.adversary.family import FunctionLabel, InstanceFamily
from src.adversary.weights import M_value, nu_row, nu_value, r, r_prime, r_star, rstar_sum
from src.config import Settings
from src.errors import BudgetExceededError, EmptyEstimateError, EmptyRelationError, InexactArithmeticError
from src.graph.graph import Graph
from src.graph.metrics import bound_calculator
from src.routing.paths import shortest_path_system
from src.staircase.milestones import MilestoneSequence
from tests.strategies import complete, cycle, family_on, path


def _label(b: int, *entries: int) -> FunctionLabel:
    return FunctionLabel(MilestoneSequence(entries), b)


def test_family_shape(k4_family: InstanceFamily) -> None:
    """2·n^L labels, all anchored at vertex 1; six good sequences for n=4, L=2."""

    labels = list(k4_family.labels())
    assert len(labels) == k4_family.size == 32
    assert all(label.milestones[1] == 1 for label in labels)
    assert len(k4_family.good_sequences) == k4_family.good_count == 6
    assert k4_family.g == 7


def test_r_star_and_r_examples(k4_family: InstanceFamily) -> None:
    """n^J for good opposite-bit pairs, zero otherwise."""

    x, y = _label(0, 1, 2, 3), _label(1, 1, 2, 4)
    assert r_star(x, y, k4_family) == 16
    assert r(x, y, k4_family) == 16
    assert r_star(x, _label(0, 1, 2, 4), k4_family) == 0
    assert r_star(_label(0, 1, 3, 1), y, k4_family) == 0
    assert r(_label(0, 1, 3, 1), _label(1, 1, 2, 2), k4_family) == 0

    twin = _label(1, 1, 2, 3)
    assert r_star(x, twin, k4_family) == 64
    assert r(x, twin, k4_family) == 0


@pytest.mark.parametrize("graph", [complete(4), cycle(4)])
def test_r_is_symmetric_and_vanishes_on_equal_bits(graph: Graph) -> None:
    """Exhaustive over all 32 x 32 label pairs."""

    fam = family_on(graph, 2)
    labels = list(fam.labels())
    for F1 in labels:
        for F2 in labels:
            assert r(F1, F2, fam) == r(F2, F1, fam)
            if F1.hidden == F2.hidden:
                assert r(F1, F2, fam) == 0


def test_r_prime_cascade(k4_family: InstanceFamily) -> None:
    """Scaled, cross-scaled, unscaled, and zero branches of r'."""

    F1, F2 = _label(0, 1, 2, 3), _label(1, 1, 2, 4)
    assert r_prime(F1, F2, 3, k4_family) == Fraction(16 * 7, 8)
    assert r_prime(F2, F1, 3, k4_family) == Fraction(16 * 8, 7)
    assert r_prime(F1, F2, 3, k4_family) * r_prime(F2, F1, 3, k4_family) == r(F1, F2, k4_family) ** 2
    assert r_prime(F1, F2, 1, k4_family) == 0
    assert r_prime(F1, F2, 2, k4_family) == 0

    G1, G2 = _label(0, 1, 2, 3), _label(1, 1, 3, 2)
    assert r_prime(G1, G2, 2, k4_family) == 4
    assert r_prime(G1, G2, 2, k4_family) * r_prime(G2, G1, 2, k4_family) == 16


def test_M_values(k4_family: InstanceFamily) -> None:
    """Bad labels have M = 0; every good K4 label has M = 32 and Σr* = 96."""

    assert M_value(_label(0, 1, 3, 1), k4_family) == 0
    lemma2_rhs = Fraction(2 * 4**3) / (2 * Fraction("2.718281828"))
    for x in k4_family.good_sequences:
        for b in (0, 1):
            assert M_value(FunctionLabel(x, b), k4_family) == 32
            assert M_value(FunctionLabel(x, b), k4_family) >= lemma2_rhs
            assert rstar_sum(FunctionLabel(x, b), k4_family) == 96


def test_nu_values(k4_family: InstanceFamily) -> None:
    """Hand-computed ν row for x = (1, 2, 3) on K4."""

    x = MilestoneSequence((1, 2, 3))
    assert nu_row(x, k4_family) == (0, 15, Fraction(59, 2), 32)
    assert nu_value(FunctionLabel(x, 1), 3, k4_family) == Fraction(59, 2)
    assert nu_value(_label(0, 1, 3, 1), 2, k4_family) == 0


@pytest.mark.parametrize("graph", [complete(4), cycle(4), path(4)])
def test_optimized_sums_match_naive_double_loop(graph: Graph) -> None:
    """M and ν agree with direct summation of r and r' over every label."""

    fam = family_on(graph, 2)
    labels = list(fam.labels())
    for F1 in labels:
        assert M_value(F1, fam) == sum((r(F1, F2, fam) for F2 in labels), Fraction(0))
        for v in graph.vertices:
            naive = sum((r_prime(F1, F2, v, fam) for F2 in labels), Fraction(0))
            assert nu_value(F1, v, fam) == naive


def _common_prefix(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    count = 0
    for u, v in zip(a, b):
        if u != v:
            break
        count += 1
    return count


@pytest.mark.parametrize(("graph", "L"), [(complete(4), 2), (cycle(4), 2), (path(4), 3)])
def test_rstar_sum_matches_direct_summation(graph: Graph, L: int) -> None:
    """Σr* equals n^J summed over good opposite-bit partners, the partner x itself included."""

    fam = family_on(graph, L)
    good = set(fam.good_sequences)
    for F1 in fam.labels():
        expected = 0
        if F1.milestones in good:
            expected = sum(fam.n ** _common_prefix(F1.milestones.entries, y.entries) for y in good)
        assert rstar_sum(F1, fam) == expected
        assert rstar_sum(F1, fam) == sum((r_star(F1, F2, fam) for F2 in fam.labels()), Fraction(0))
        if F1.milestones in good:
            assert rstar_sum(F1, fam) - M_value(F1, fam) == fam.n ** (L + 1)


def test_adversary_bound_on_k4(k4_family: InstanceFamily) -> None:
    """Exact minimum 64/59 with a self-consistent witness above the threshold."""

    evaluation = adversary_bound(k4_family)

    assert evaluation.min_ratio_squared == Fraction(64, 59)
    assert evaluation.exact is True
    assert math.sqrt(evaluation.min_ratio_squared) >= bound_calculator(4, 7).threshold

    w = evaluation.witness
    assert (w.F1, w.F2, w.v) == (_label(0, 1, 2, 3), _label(1, 1, 2, 4), 3)
    assert r(w.F1, w.F2, k4_family) > 0
    recomputed = ratio_squared(
        M_value(w.F1, k4_family),
        M_value(w.F2, k4_family),
        nu_value(w.F1, w.v, k4_family),
        nu_value(w.F2, w.v, k4_family),
    )
    assert recomputed == evaluation.min_ratio_squared


def test_empty_relation(k2: Graph) -> None:
    """With n = 2 and L = 2 every sequence repeats a vertex."""

    fam = family_on(k2, 2)
    assert fam.good_count == 0
    with pytest.raises(EmptyRelationError):
        adversary_bound(fam)
    with pytest.raises(EmptyRelationError):
        sampled_adversary_bound(fam, 10, seed=0)


def test_exactness_modes(k3: Graph) -> None:
    """Non-square n is refused in exact mode and flagged inexact otherwise."""

    with pytest.raises(InexactArithmeticError):
        adversary_bound(family_on(k3, 1))

    evaluation = adversary_bound(family_on(k3, 1, exactness="float-fallback"))
    assert evaluation.exact is False
    assert evaluation.min_ratio_squared > 0


def test_budget_exceeded(k4: Graph) -> None:
    """Full enumeration respects the label and r' budgets."""

    system = shortest_path_system(k4)
    with pytest.raises(BudgetExceededError):
        adversary_bound(InstanceFamily(k4, system, 2, cfg=Settings(budget_labels=10)))
    with pytest.raises(BudgetExceededError):
        adversary_bound(InstanceFamily(k4, system, 2, cfg=Settings(budget_rprime=10)))


def test_sampled_estimate_bounds_exact_minimum_from_above(k4_family: InstanceFamily) -> None:
    """A minimum over sampled triples can only be larger; reruns are identical."""

    exact = adversary_bound(k4_family).min_ratio_squared
    first = sampled_adversary_bound(k4_family, 200, seed=5)
    second = sampled_adversary_bound(k4_family, 200, seed=5)

    assert first.upper_bound is True
    assert first.min_ratio_squared >= exact
    assert (first.min_ratio_squared, first.witness) == (second.min_ratio_squared, second.witness)

    with pytest.raises(EmptyEstimateError):
        sampled_adversary_bound(k4_family, 0, seed=5)


def test_path_graph_family(p4: Graph) -> None:
    """P4 has g = 11 >= n^1.5 and still yields a positive exact minimum."""

    evaluation = adversary_bound(family_on(p4, 2))
    assert evaluation.g == 11
    assert evaluation.min_ratio_squared > 0


@pytest.mark.slow
def test_k9_family() -> None:
    """n = 9, L = 3: 1458 labels, 336 good sequences, M = 9207, g = 17."""

    fam = family_on(complete(9), 3)
    assert fam.size == 1458
    assert fam.good_count == 336
    assert fam.g == 17

    evaluation = adversary_bound(fam)
    assert set(evaluation.M.values()) == {Fraction(9207)}
    assert evaluation.min_ratio_squared > 0
