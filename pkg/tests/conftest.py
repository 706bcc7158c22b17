import numpy as np
import pytest

from regretlab import (
    ExperimentCase,
    FiniteHypothesisClass,
    Sequence,
    make_case_inputs,
)


@pytest.fixture(scope="session")
def threshold8():
    """d=5 threshold class over the 8-point benchmark domain."""
    cls, _ = make_case_inputs(ExperimentCase("realizable", 8, 5))
    return cls


@pytest.fixture(scope="session")
def realizable8():
    """The length-8 sequence labeled 1 on positive points, 0 elsewhere."""
    _, seq = make_case_inputs(ExperimentCase("realizable", 8, 5))
    return seq


@pytest.fixture(scope="session")
def all_ones8():
    _, seq = make_case_inputs(ExperimentCase("unrealizable", 8, 5))
    return seq


@pytest.fixture(scope="session")
def quad_class():
    """Four hypotheses over three points shattering a depth-2 tree.

    Point 0 splits the class in half; point 1 separates the first half and
    point 2 the second. Unconstrained cells are 0.
    """
    table = np.array(
        [
            [0, 0, 0],
            [0, 1, 0],
            [1, 0, 0],
            [1, 0, 1],
        ],
        dtype=np.int8,
    )
    return FiniteHypothesisClass((0, 1, 2), table)


def make_class(table, domain=None) -> FiniteHypothesisClass:
    table = np.asarray(table, dtype=np.int8)
    if domain is None:
        domain = tuple(range(table.shape[1]))
    return FiniteHypothesisClass(tuple(domain), table)


def seq_of(pairs) -> Sequence:
    return Sequence(tuple((int(x), int(y)) for x, y in pairs))
