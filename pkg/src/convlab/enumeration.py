"""Exhaustive poset enumeration.

The labeled generator assigns each element its strict up-set by depth
first search; the pairwise consistency conditions (up-sets nest along the
relation, no two-cycles) are exactly transitivity plus antisymmetry, so
no post-hoc closure is needed.  Unlabeled enumeration keeps the canonical
representative of each isomorphism class, found by invariant refinement
followed by backtracking over the residual label permutations.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterator, Optional

from .errors import CapExceededError
from .limits import enum_cap
from .poset import Poset, bits


def _strict_upset_assignments(n: int) -> Iterator[tuple]:
    """All families (U_0..U_{n-1}) of strict up-sets forming a poset."""
    candidates = list(range(1 << n))
    chosen = [0] * n

    def consistent(k: int, uk: int) -> bool:
        if uk >> k & 1:
            return False
        for j in range(k):
            uj = chosen[j]
            if uk >> j & 1:  # k < j
                if uj & ~uk or uj >> k & 1:
                    return False
            if uj >> k & 1:  # j < k
                if uk & ~uj or uk >> j & 1:
                    return False
        return True

    def rec(k: int) -> Iterator[tuple]:
        if k == n:
            yield tuple(chosen)
            return
        for uk in candidates:
            if consistent(k, uk):
                chosen[k] = uk
                yield from rec(k + 1)
        chosen[k] = 0

    yield from rec(0)


def _rows_from_strict(strict: tuple) -> tuple:
    return tuple(u | 1 << i for i, u in enumerate(strict))


def _default_labels(n: int) -> tuple:
    return tuple(f"x{i}" for i in range(n))


def labeled_posets(n: int) -> Iterator[Poset]:
    labels = _default_labels(n)
    for strict in _strict_upset_assignments(n):
        yield Poset(_rows_from_strict(strict), labels)


# ---------------------------------------------------------------------------
# canonical form
# ---------------------------------------------------------------------------


def _refined_colors(P: Poset) -> list:
    heights = P.heights()
    depths = P.opposite().heights()
    colors = [
        (P.down[i].bit_count(), P.up[i].bit_count(), heights[i], depths[i])
        for i in range(P.n)
    ]
    while True:
        palette = {c: k for k, c in enumerate(sorted(set(colors)))}
        coded = [palette[c] for c in colors]
        refined = [
            (
                coded[i],
                tuple(sorted(coded[j] for j in bits(P.up[i] & ~(1 << i)))),
                tuple(sorted(coded[j] for j in bits(P.down[i] & ~(1 << i)))),
            )
            for i in range(P.n)
        ]
        if len(set(refined)) == len(set(colors)):
            return coded
        colors = refined


def canonical_key(P: Poset) -> tuple:
    """Label-independent encoding: the lexicographically least relabeled
    relation over all permutations consistent with the refined invariant
    classes."""
    n = P.n
    coded = _refined_colors(P)
    order = sorted(range(n), key=lambda i: (coded[i], i))
    groups = []
    for i in order:
        if groups and coded[groups[-1][0]] == coded[i]:
            groups[-1].append(i)
        else:
            groups.append([i])
    best: Optional[tuple] = None
    for perm_parts in _group_permutations(groups):
        old_of_new = [i for part in perm_parts for i in part]
        new_of_old = [0] * n
        for new, old in enumerate(old_of_new):
            new_of_old[old] = new
        rows = []
        for new in range(n):
            row = 0
            for j in bits(P.up[old_of_new[new]]):
                row |= 1 << new_of_old[j]
            rows.append(row)
        key = tuple(rows)
        if best is None or key < best:
            best = key
    return best


def _group_permutations(groups: list) -> Iterator[list]:
    if not groups:
        yield []
        return
    head, *tail = groups
    for p in permutations(head):
        for rest in _group_permutations(tail):
            yield [list(p)] + rest


def is_isomorphic(P: Poset, Q: Poset) -> bool:
    return P.n == Q.n and canonical_key(P) == canonical_key(Q)


def enumerate_posets(n: int, dedup: str = "labeled", cap: Optional[int] = None) -> Iterator[Poset]:
    """Stream all posets on n elements; dedup="unlabeled" keeps one
    canonical representative per isomorphism class."""
    limit = cap if cap is not None else enum_cap()
    if n > limit:
        raise CapExceededError(f"n={n} exceeds enumeration cap {limit}")
    if dedup not in ("labeled", "unlabeled"):
        raise ValueError(f"unknown dedup mode {dedup!r}")
    if dedup == "labeled":
        yield from labeled_posets(n)
        return
    seen = set()
    labels = _default_labels(n)
    for P in labeled_posets(n):
        key = canonical_key(P)
        if key not in seen:
            seen.add(key)
            yield Poset(key, labels)
