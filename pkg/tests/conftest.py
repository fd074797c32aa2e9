"""Shared graphs and families used across the test suite."""

from __future__ import annotations

import pytest

from src.adversary.family import InstanceFamily
from src.graph.graph import Graph
from tests.strategies import complete, cycle, family_on, path


@pytest.fixture
def k2() -> Graph:
    return complete(2)


@pytest.fixture
def k3() -> Graph:
    return complete(3)


@pytest.fixture
def k4() -> Graph:
    return complete(4)


@pytest.fixture
def c4() -> Graph:
    return cycle(4)


@pytest.fixture
def p3() -> Graph:
    return path(3)


@pytest.fixture
def p4() -> Graph:
    return path(4)


@pytest.fixture
def k4_family(k4: Graph) -> InstanceFamily:
    return family_on(k4, 2)


@pytest.fixture
def c4_family(c4: Graph) -> InstanceFamily:
    return family_on(c4, 2)
