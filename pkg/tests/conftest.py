import pytest

from ntc import graphio
from ntc.lattice import WeightedDualGraph


@pytest.fixture
def fx():
    return graphio.load_fixture


@pytest.fixture
def d5_vertex():
    return WeightedDualGraph.build([("C", -5, 6)])


@pytest.fixture
def rational_vertex():
    return WeightedDualGraph.build([("E", -2, 0)])


@pytest.fixture
def a2():
    return WeightedDualGraph.build([("E1", -2, 0), ("E2", -2, 0)], [("E1", "E2")])
