"""Tests for milestone sequences, staircases, tails, and the hard-instance functions."""

from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import MilestoneValidationError
from src.graph.graph import Graph
from src.graph.metrics import bfs_row
from src.routing.paths import shortest_path_system
from src.staircase.instance import (
    DecoratedValue,
    HardInstance,
    build_staircase,
    dump_instance,
    eval_f,
    eval_g,
    load_instance,
    local_minima,
    tail,
)
from src.staircase.milestones import (
    MilestoneSequence,
    all_sequences,
    is_good,
    milestone_sequence,
    multiplicity,
    shared_prefix,
)
from tests.strategies import complete, connected_graphs, cycle, path


def _instance(graph: Graph, *entries: int) -> HardInstance:
    return HardInstance.from_graph(graph, shortest_path_system(graph), milestone_sequence(entries, graph.n))


def test_build_staircase_examples(p3: Graph, c4: Graph) -> None:
    """Segments are the stored paths between consecutive milestones."""

    assert build_staircase(MilestoneSequence((1, 3)), shortest_path_system(p3)).walk == (1, 2, 3)

    c4_staircase = build_staircase(MilestoneSequence((1, 3, 1)), shortest_path_system(c4))
    assert c4_staircase.segments == ((1, 2, 3), (3, 2, 1))
    assert c4_staircase.walk == (1, 2, 3, 3, 2, 1)

    repeated = build_staircase(MilestoneSequence((1, 1, 1)), shortest_path_system(c4))
    assert repeated.walk == (1, 1)

    single = build_staircase(MilestoneSequence((1, 1)), shortest_path_system(c4))
    assert single.segments == ((1,),)
    assert single.walk == (1,)


def test_tail_examples(p3: Graph, c4: Graph) -> None:
    """Tail drops only the first occurrence of x_j and is empty at L+1."""

    p3_staircase = build_staircase(MilestoneSequence((1, 3)), shortest_path_system(p3))
    assert tail(1, p3_staircase) == (2, 3)
    assert tail(2, p3_staircase) == ()

    c4_staircase = build_staircase(MilestoneSequence((1, 3, 1)), shortest_path_system(c4))
    assert tail(2, c4_staircase) == (2, 1)
    assert tail(1, c4_staircase) == (2, 3, 3, 2, 1)

    for j in (0, 4):
        with pytest.raises(MilestoneValidationError):
            tail(j, c4_staircase)


@pytest.mark.parametrize("graph", [complete(4), cycle(4), path(4)])
def test_tail_lengths(graph: Graph) -> None:
    """|Tail(j)| is the total length of segments j..L minus one."""

    system = shortest_path_system(graph)
    for x in all_sequences(graph.n, 2):
        staircase = build_staircase(x, system)
        for j in range(1, x.L + 1):
            expected = sum(len(segment) for segment in staircase.segments[j - 1 :]) - 1
            assert len(tail(j, staircase)) == expected


def test_eval_f_examples(c4: Graph, p3: Graph) -> None:
    """Staircase vertices get -i·n - j, everything else dist(v, 1)."""

    assert _instance(c4, 1, 3).value_table() == (-5, -6, -7, 1)
    assert _instance(p3, 1, 3).value_table() == (-4, -5, -6)
    assert _instance(c4, 1, 3, 1).value_table() == (-11, -10, -9, 1)
    assert eval_f(_instance(complete(4), 1, 2, 3), 1) == -5


def test_eval_g_examples(c4: Graph) -> None:
    """The hidden bit shows only at the final milestone."""

    inst = _instance(c4, 1, 3)
    assert eval_g(inst, 1, 3) == DecoratedValue(-7, 1)
    assert eval_g(inst, 1, 4) == DecoratedValue(1, -1)
    assert eval_g(inst, 0, 3) == DecoratedValue(-7, 0)

    with pytest.raises(MilestoneValidationError):
        eval_g(inst, 2, 3)


def test_local_minima_examples(c4: Graph) -> None:
    """Local minima for staircase, constant, and distance functions."""

    inst = _instance(c4, 1, 3)
    assert local_minima(c4, lambda v: eval_f(inst, v)) == {3}
    assert local_minima(c4, lambda v: 0) == set(c4.vertices)

    dist = bfs_row(c4, 1)
    assert local_minima(c4, lambda v: dist[v - 1]) == {1}


@pytest.mark.parametrize("graph", [complete(4), cycle(4), path(4)])
def test_unique_local_minimum_on_every_sequence(graph: Graph) -> None:
    """All 16 sequences in {1} x [4]², good or bad, have x_3 as the only local minimum."""

    system = shortest_path_system(graph)
    sequences = list(all_sequences(graph.n, 2))
    assert len(sequences) == 16

    for x in sequences:
        inst = HardInstance.from_graph(graph, system, x)
        assert local_minima(graph, lambda v: eval_f(inst, v)) == {x.final}


@settings(max_examples=60, deadline=None)
@given(data=st.data(), graph=connected_graphs(min_n=2, max_n=6))
def test_staircase_value_properties(data: st.DataObject, graph: Graph) -> None:
    """Unique minimum, codomain range, and sign separation on random instances."""

    n = graph.n
    L = data.draw(st.integers(min_value=1, max_value=min(3, n)))
    rest = data.draw(st.lists(st.integers(min_value=1, max_value=n), min_size=L, max_size=L))
    inst = _instance(graph, 1, *rest)

    values = inst.value_table()
    assert local_minima(graph, lambda v: values[v - 1]) == {inst.milestones.final}

    on_walk = set(inst.staircase.walk)
    for v in graph.vertices:
        value = values[v - 1]
        assert -n * n - n <= value <= n
        assert (value < 0) == (v in on_walk)

    assert tuple(eval_f(inst, v) for v in reversed(graph.vertices)) == tuple(reversed(values))


def test_milestone_helpers() -> None:
    """Goodness, shared prefixes, and multiplicities."""

    assert is_good(MilestoneSequence((1, 3, 2))) is True
    assert is_good(MilestoneSequence((1, 3, 1))) is False
    assert is_good(MilestoneSequence((1, 1))) is False

    x = MilestoneSequence((1, 2, 3))
    assert shared_prefix(x, x) == 3
    assert shared_prefix(x, MilestoneSequence((1, 2, 4))) == 2
    assert shared_prefix(x, MilestoneSequence((1, 4, 3))) == 1
    with pytest.raises(MilestoneValidationError):
        shared_prefix(x, MilestoneSequence((1, 2)))

    assert multiplicity((1, 2, 3), 2) == 1
    assert multiplicity((1, 2, 1), 1) == 2
    assert multiplicity((), 5) == 0


@pytest.mark.parametrize("entries", [(1,), (2, 3), (1, 5)])
def test_milestone_validation(entries: tuple[int, ...]) -> None:
    """Sequences must start at 1, have L >= 1, and stay inside 1..n."""

    with pytest.raises(MilestoneValidationError):
        milestone_sequence(entries, 4)


def test_instance_file_round_trip(tmp_path: Path, c4: Graph) -> None:
    """Instances persist graph, paths, milestones, and bit; values are never stored."""

    inst = _instance(c4, 1, 3)
    target = tmp_path / "inst.json"
    dump_instance(inst, 1, target)

    loaded, b = load_instance(target)
    assert b == 1
    assert loaded.milestones == inst.milestones
    assert loaded.value_table() == inst.value_table()
    assert '"values"' not in target.read_text()
