import random

import pytest

from convlab.enumeration import canonical_key, enumerate_posets, is_isomorphic
from convlab.errors import CapExceededError
from convlab.poset import Poset, parse_poset
from oracles import brute_isomorphic, brute_partial_orders

LABELED = {0: 1, 1: 1, 2: 3, 3: 19, 4: 219}
UNLABELED = {0: 1, 1: 1, 2: 2, 3: 5, 4: 16}


def test_labeled_counts():
    for n, count in LABELED.items():
        assert sum(1 for _ in enumerate_posets(n)) == count


def test_unlabeled_counts():
    for n, count in UNLABELED.items():
        assert sum(1 for _ in enumerate_posets(n, dedup="unlabeled")) == count


def test_labeled_generator_matches_brute_force_oracle():
    for n in range(4):
        generated = {P.up for P in enumerate_posets(n)}
        assert generated == brute_partial_orders(n)


def test_unlabeled_representatives_pairwise_non_isomorphic():
    reps = list(enumerate_posets(4, dedup="unlabeled"))
    for i, P in enumerate(reps):
        for Q in reps[i + 1:]:
            assert not brute_isomorphic(P, Q)


def test_every_labeled_poset_has_a_representative():
    reps = list(enumerate_posets(3, dedup="unlabeled"))
    for P in enumerate_posets(3):
        assert any(brute_isomorphic(P, Q) for Q in reps)


def test_canonical_key_is_relabeling_invariant():
    rng = random.Random(9)
    for P in enumerate_posets(4, dedup="unlabeled"):
        key = canonical_key(P)
        for _ in range(5):
            perm = list(range(P.n))
            rng.shuffle(perm)
            rows = [0] * P.n
            for i in range(P.n):
                for j in range(P.n):
                    if P.leq(i, j):
                        rows[perm[i]] |= 1 << perm[j]
            Q = Poset(tuple(rows), P.labels)
            assert canonical_key(Q) == key


def test_is_isomorphic_examples(d4, p3):
    assert is_isomorphic(d4, d4.opposite())
    assert not is_isomorphic(p3, p3.opposite()) or p3.up == p3.opposite().up
    assert not is_isomorphic(p3, d4)
    chain2 = parse_poset("elements: u v; order: u<v")
    assert is_isomorphic(chain2, chain2.opposite())


def test_enumeration_cap(monkeypatch):
    with pytest.raises(CapExceededError):
        list(enumerate_posets(9))
    monkeypatch.setenv("CONVLAB_CAP_N", "2")
    with pytest.raises(CapExceededError):
        list(enumerate_posets(3))
    monkeypatch.setenv("CONVLAB_CAP_N", "3")
    assert sum(1 for _ in enumerate_posets(3)) == 19
    assert sum(1 for _ in enumerate_posets(3, cap=3)) == 19


def test_bad_dedup_mode():
    with pytest.raises(ValueError):
        list(enumerate_posets(2, dedup="weird"))
