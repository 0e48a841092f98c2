import pytest

from convlab.poset import parse_poset


@pytest.fixture
def p3():
    return parse_poset("elements: a b c; order: a<c b<c")


@pytest.fixture
def d4():
    return parse_poset("elements: bot x y top; order: bot<x bot<y x<top y<top")


@pytest.fixture
def singleton():
    return parse_poset("elements: x; order:")


@pytest.fixture
def antichain2():
    return parse_poset("elements: p q; order:")


def chain_poset(k):
    labels = " ".join(f"c{i}" for i in range(k))
    pairs = " ".join(f"c{i}<c{i+1}" for i in range(k - 1))
    return parse_poset(f"elements: {labels}; order: {pairs}")
