import pytest

from maxplus_extremal import MaxPlusMatrix, MaxPlusVector

NEG = "-inf"

# the 5x5 worked example, rows as printed
EXAMPLE_ROWS = [
    [-5, 0, NEG, NEG, NEG],
    [0, NEG, NEG, NEG, NEG],
    [0, NEG, NEG, NEG, NEG],
    [NEG, NEG, -3, NEG, 0],
    [NEG, NEG, NEG, 0, NEG],
]


@pytest.fixture
def example_A():
    return MaxPlusMatrix(EXAMPLE_ROWS)


@pytest.fixture
def x_one():
    return MaxPlusVector([0, 0, 0, -3, NEG])


@pytest.fixture
def x_two():
    return MaxPlusVector([0, 0, 0, 0, 0])


def one_based(nodes):
    """Convert a set of 1-based node labels to 0-based indices."""
    return {v - 1 for v in nodes}


def arcs_one_based(arcs):
    return {(j - 1, i - 1) for j, i in arcs}
