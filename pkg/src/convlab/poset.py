"""Finite posets over bitmask rows.

Elements are the integers 0..n-1; a subset of the carrier is an int whose
bit i is set iff element i belongs to the subset.  The order relation is
stored as the full reflexive-transitive matrix, one bitmask row per
element, so comparability checks are O(1).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional

from .errors import CapExceededError, CycleError, DuplicateLabelError, ParseError
from .limits import REALIZE_CAP
from .report import PropertyReport


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elems) -> int:
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def submasks(mask: int) -> Iterator[int]:
    """All nonempty submasks of mask, in ascending cardinality."""
    elems = list(bits(mask))
    for r in range(1, len(elems) + 1):
        for combo in combinations(elems, r):
            yield mask_of(combo)


@dataclass(frozen=True)
class Poset:
    """Immutable finite poset.

    up[i] is the bitmask of {j : i <= j}; down[i] the bitmask of
    {j : j <= i}.  Construction validates reflexivity, transitivity and
    antisymmetry.  The empty poset (n = 0) is allowed; it only shows up in
    exhaustive enumeration.
    """

    up: tuple
    labels: tuple
    down: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.up)
        if len(self.labels) != n:
            raise ValueError("labels/relation size mismatch")
        full = (1 << n) - 1
        for i, row in enumerate(self.up):
            if row & ~full:
                raise ValueError("relation row exceeds carrier")
            if not row >> i & 1:
                raise ValueError(f"relation not reflexive at {i}")
        for i in range(n):
            for j in bits(self.up[i]):
                if self.up[j] & ~self.up[i]:
                    raise ValueError(f"relation not transitive at ({i},{j})")
                if i != j and self.up[j] >> i & 1:
                    raise CycleError(
                        f"antisymmetry violated: {self.labels[i]} and {self.labels[j]}"
                    )
        down = [0] * n
        for i in range(n):
            for j in bits(self.up[i]):
                down[j] |= 1 << i
        object.__setattr__(self, "down", tuple(down))

    # -- basics ---------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.up)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def label_list(self, mask: int) -> list:
        return [self.labels[i] for i in bits(mask)]

    def mask_from_labels(self, names) -> int:
        idx = {lab: i for i, lab in enumerate(self.labels)}
        try:
            return mask_of(idx[name] for name in names)
        except KeyError as exc:
            raise ParseError(f"unknown element {exc.args[0]!r}") from None

    def elem(self, name: str) -> int:
        return next(bits(self.mask_from_labels([name])))

    def subsets(self) -> Iterator[int]:
        """All nonempty subsets of the carrier."""
        for m in range(1, self.full + 1):
            yield m

    # -- bounds ---------------------------------------------------------

    def upper_bounds(self, q: int) -> int:
        """Elements above every member of q; the full carrier for q = 0."""
        ub = self.full
        for i in bits(q):
            ub &= self.up[i]
        return ub

    def lower_bounds(self, q: int) -> int:
        lb = self.full
        for i in bits(q):
            lb &= self.down[i]
        return lb

    def _least(self, mask: int) -> Optional[int]:
        for i in bits(mask):
            if mask & ~self.up[i] == 0:
                return i
        return None

    def _greatest(self, mask: int) -> Optional[int]:
        for i in bits(mask):
            if mask & ~self.down[i] == 0:
                return i
        return None

    def supremum(self, q: int) -> Optional[int]:
        """Least upper bound of q, or None.  sup of the empty set is the
        bottom element when one exists."""
        return self._least(self.upper_bounds(q))

    def infimum(self, q: int) -> Optional[int]:
        return self._greatest(self.lower_bounds(q))

    def bottom(self) -> Optional[int]:
        return self._least(self.full) if self.n else None

    def top(self) -> Optional[int]:
        return self._greatest(self.full) if self.n else None

    # -- subset predicates ------------------------------------------------

    def is_directed(self, q: int) -> bool:
        """Nonempty and every pair has an upper bound inside q."""
        if not q:
            return False
        for i in bits(q):
            for j in bits(q):
                if j > i and not self.up[i] & self.up[j] & q:
                    return False
        return True

    def is_filtered(self, q: int) -> bool:
        if not q:
            return False
        for i in bits(q):
            for j in bits(q):
                if j > i and not self.down[i] & self.down[j] & q:
                    return False
        return True

    def is_chain(self, q: int) -> bool:
        if not q:
            return False
        for i in bits(q):
            for j in bits(q):
                if j > i and not (self.leq(i, j) or self.leq(j, i)):
                    return False
        return True

    def is_antichain(self, q: int) -> bool:
        if not q:
            return False
        for i in bits(q):
            for j in bits(q):
                if j > i and (self.leq(i, j) or self.leq(j, i)):
                    return False
        return True

    # -- up / down closure ------------------------------------------------

    def up_set(self, q: int) -> int:
        s = 0
        for i in bits(q):
            s |= self.up[i]
        return s

    def down_set(self, q: int) -> int:
        s = 0
        for i in bits(q):
            s |= self.down[i]
        return s

    def is_upper_set(self, q: int) -> bool:
        return self.up_set(q) == q

    def is_lower_set(self, q: int) -> bool:
        return self.down_set(q) == q

    # -- structure ---------------------------------------------------------

    def opposite(self) -> "Poset":
        """Same carrier with the order reversed."""
        return Poset(self.down, self.labels)

    def covers(self) -> list:
        """Hasse edges (i, j) with i < j and nothing strictly between."""
        out = []
        for i in range(self.n):
            strict = self.up[i] & ~(1 << i)
            for j in bits(strict):
                between = strict & self.down[j] & ~(1 << j)
                if not between:
                    out.append((i, j))
        return out

    def heights(self) -> list:
        """Length of the longest chain strictly below each element."""
        h = [0] * self.n
        for i in sorted(range(self.n), key=lambda k: self.down[k].bit_count()):
            below = self.down[i] & ~(1 << i)
            h[i] = max((h[j] + 1 for j in bits(below)), default=0)
        return h


# ---------------------------------------------------------------------------
# parsing / serialization
# ---------------------------------------------------------------------------

_PAIR_RE = re.compile(r"([A-Za-z0-9_]+)\s*<\s*([A-Za-z0-9_]+)")
_IDENT_RE = re.compile(r"[A-Za-z0-9_]+\Z")


def _strip_comments(text: str) -> str:
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


def transitive_closure(rows: list) -> list:
    """Close bitmask rows under composition (in place, also returned)."""
    n = len(rows)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = rows[i]
            for j in bits(rows[i]):
                acc |= rows[j]
            if acc != rows[i]:
                rows[i] = acc
                changed = True
    return rows


def _build(labels: list, cover_pairs: list) -> Poset:
    seen = set()
    for lab in labels:
        if lab in seen:
            raise DuplicateLabelError(f"duplicate element {lab!r}")
        seen.add(lab)
    idx = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    rows = [1 << i for i in range(n)]
    for lo, hi in cover_pairs:
        if lo not in idx or hi not in idx:
            missing = lo if lo not in idx else hi
            raise ParseError(f"order mentions unknown element {missing!r}")
        rows[idx[lo]] |= 1 << idx[hi]
    transitive_closure(rows)
    for i in range(n):
        for j in bits(rows[i]):
            if i != j and rows[j] >> i & 1:
                raise CycleError(f"cycle through {labels[i]!r} and {labels[j]!r}")
    return Poset(tuple(rows), tuple(labels))


def parse_poset(text: str) -> Poset:
    """Parse the DSL ("elements: a b c; order: a<c b<c") or the JSON form
    ({"elements": [...], "covers": [[lo, hi], ...]}).  The declared pairs
    are covers; the relation is their reflexive-transitive closure."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}") from None
        if not isinstance(doc, dict) or "elements" not in doc:
            raise ParseError('JSON poset needs an "elements" list')
        labels = [str(x) for x in doc["elements"]]
        covers = [(str(a), str(b)) for a, b in doc.get("covers", [])]
        return _build(labels, covers)

    body = _strip_comments(text)
    m = re.search(r"elements\s*:(.*?);", body, re.S)
    if not m:
        raise ParseError('expected "elements: ... ;"')
    labels = m.group(1).split()
    for lab in labels:
        if not _IDENT_RE.match(lab):
            raise ParseError(f"bad element name {lab!r}")
    rest = body[m.end():]
    o = re.search(r"order\s*:(.*)\Z", rest, re.S)
    if not o:
        raise ParseError('expected "order: ..." after the element list')
    order_body = o.group(1)
    pairs = _PAIR_RE.findall(order_body)
    leftover = _PAIR_RE.sub("", order_body).replace(";", "").split()
    if leftover:
        raise ParseError(f"unparsed order tokens: {' '.join(leftover)}")
    return _build(labels, pairs)


def poset_to_dsl(P: Poset) -> str:
    pairs = " ".join(f"{P.labels[i]}<{P.labels[j]}" for i, j in P.covers())
    return f"elements: {' '.join(P.labels)}; order: {pairs}".rstrip()


def poset_to_json(P: Poset) -> dict:
    return {
        "elements": list(P.labels),
        "covers": [[P.labels[i], P.labels[j]] for i, j in P.covers()],
    }


def poset_to_dot(P: Poset, name: str = "poset") -> str:
    """Hasse diagram in DOT; edges are covers, elements ranked by height."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    by_height = {}
    for i, h in enumerate(P.heights()):
        by_height.setdefault(h, []).append(i)
    for h in sorted(by_height):
        same = " ".join(f'"{P.labels[i]}"' for i in by_height[h])
        lines.append(f"  {{ rank=same; {same} }}")
    for i in range(P.n):
        lines.append(f'  "{P.labels[i]}";')
    for i, j in P.covers():
        lines.append(f'  "{P.labels[i]}" -> "{P.labels[j]}";')
    lines.append("}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# meet continuity
# ---------------------------------------------------------------------------


def _meet(P: Poset, x: int, y: int) -> Optional[int]:
    return P.infimum(1 << x | 1 << y)


def is_meet_continuous(P: Poset, literal: bool = False) -> PropertyReport:
    """Check that directed sups distribute over binary meets.

    Default reading: for every directed D with existing sup and every
    x in the carrier with x <= sup D, all meets x /\\ d exist and their sup
    exists and equals x.  With literal=True the quantifier runs over all
    nonempty subsets D and only x in D, which is almost always strictly
    harder to satisfy (meets with incomparable elements must exist).
    """
    if P.n > REALIZE_CAP:
        raise CapExceededError(f"carrier {P.n} exceeds cap {REALIZE_CAP}")
    name = "meet_continuous_literal" if literal else "meet_continuous"
    for d_mask in P.subsets():
        if not literal and not P.is_directed(d_mask):
            continue
        sup_d = P.supremum(d_mask)
        if sup_d is None:
            continue
        xs = bits(d_mask) if literal else bits(P.down[sup_d])
        for x in xs:
            meets = []
            for d in bits(d_mask):
                m = _meet(P, x, d)
                if m is None:
                    return PropertyReport(
                        name,
                        False,
                        witnesses=(
                            {
                                "subset": P.label_list(d_mask),
                                "x": P.labels[x],
                                "reason": f"meet of {P.labels[x]} and {P.labels[d]} does not exist",
                            },
                        ),
                    )
                meets.append(m)
            s = P.supremum(mask_of(meets))
            if s != x:
                return PropertyReport(
                    name,
                    False,
                    witnesses=(
                        {
                            "subset": P.label_list(d_mask),
                            "x": P.labels[x],
                            "reason": "sup of meets is "
                            + ("missing" if s is None else P.labels[s]),
                        },
                    ),
                )
    return PropertyReport(name, True)


def condition_star(P: Poset, literal: bool = False) -> PropertyReport:
    """Meet continuity of both the poset and its opposite."""
    fwd = is_meet_continuous(P, literal=literal)
    bwd = is_meet_continuous(P.opposite(), literal=literal)
    holds = fwd.holds and bwd.holds
    witnesses = []
    if not fwd.holds:
        witnesses.append({"side": "poset", **fwd.witnesses[0]})
    if not bwd.holds:
        witnesses.append({"side": "opposite", **bwd.witnesses[0]})
    return PropertyReport("condition_star", holds, witnesses=tuple(witnesses))
