import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from skpval import GroupValue, build_skp, compute_relations


@pytest.fixture(scope="session")
def diffskp_table():
    return compute_relations([[2], [3, 9, 10]])


@pytest.fixture(scope="session")
def diffskp(diffskp_table):
    return build_skp(diffskp_table)


@pytest.fixture(scope="session")
def diffskp_swapped():
    # same valuation after swapping the two coordinates of the plane
    return build_skp(compute_relations([[3], [2, 9, 10]]), thetas={(1, 2): -1})


@pytest.fixture(scope="session")
def example2_table():
    return compute_relations(
        [[1], [Fraction(1, 2), Fraction(4, 3), Fraction(21, 5)]]
    )


@pytest.fixture(scope="session")
def example2(example2_table):
    return build_skp(example2_table)


def example1_rows():
    """Three-variable table with two truncated limit positions.

    Row 2 carries blocks n = 0..2 of positions j = 1..4 with values
    (0, n+2, j); positions 5 and 10 are the truncated limit entries
    (0, 3, 0) and (0, 4, 0).
    """
    row2 = []
    labels = {}
    for n in range(3):
        if n > 0:
            row2.append(GroupValue((0, n + 2, 0)))
            labels[(2, len(row2))] = n
        for j in range(1, 5):
            row2.append(GroupValue((0, n + 2, j)))
    rows = [[GroupValue((0, 0, 1))], [GroupValue((0, 1, 0))], row2]
    return rows, labels


@pytest.fixture(scope="session")
def example1_table():
    rows, labels = example1_rows()
    return compute_relations(rows, limit_labels=labels)


@pytest.fixture(scope="session")
def example1(example1_table):
    return build_skp(example1_table)


@pytest.fixture(scope="session")
def free2():
    return build_skp(compute_relations([[(1, 0)], [(0, 1)]]))
