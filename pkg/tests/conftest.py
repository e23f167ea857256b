import numpy as np
import pytest

from kpbit import Assignment, Graph


@pytest.fixture
def triangle():
    return Graph(n=3, edges=((0, 1), (1, 2), (0, 2)))


@pytest.fixture
def path3():
    # path 1-2-3 in file ids, 0-1-2 internally
    return Graph(n=3, edges=((0, 1), (1, 2)))


def assign(states, k):
    return Assignment(np.asarray(states, dtype=np.int64), k)
