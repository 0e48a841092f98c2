"""Topologies on finite carriers and their order descriptions.

tau_m / tau_mn are built straight from their characterizations over a
realized selection family; the Scott and Alexandrov topologies are
independent baselines computed from the classical definitions, which is
what lets the test suites compare two genuinely different code paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, TYPE_CHECKING

from .errors import NotT0Error
from .poset import Poset, bits, submasks

if TYPE_CHECKING:  # pragma: no cover
    from .selections import SelectionFamily


@dataclass(frozen=True)
class Topology:
    """Family of open subsets of {0..n-1}, each open a bitmask."""

    n: int
    opens: frozenset

    @classmethod
    def from_opens(cls, n: int, opens: Iterable[int], check: bool = True) -> "Topology":
        fam = frozenset(opens)
        if check:
            full = (1 << n) - 1
            if 0 not in fam or full not in fam:
                raise ValueError("topology must contain the empty set and the carrier")
            for a in fam:
                for b in fam:
                    if a & b not in fam or a | b not in fam:
                        raise ValueError("opens not closed under union/intersection")
        return cls(n, fam)

    def is_open(self, mask: int) -> bool:
        return mask in self.opens

    def to_json(self, labels=None) -> dict:
        labels = labels or [f"x{i}" for i in range(self.n)]
        name = lambda m: [labels[i] for i in bits(m)]
        return {"opens": sorted((name(m) for m in self.opens), key=lambda v: (len(v), v))}


def discrete_topology(n: int) -> Topology:
    return Topology.from_opens(n, range(1 << n), check=False)


def topology_eq(t1: Topology, t2: Topology) -> bool:
    return t1.n == t2.n and t1.opens == t2.opens


def is_discrete(t: Topology) -> bool:
    return all(1 << i in t.opens for i in range(t.n))


# ---------------------------------------------------------------------------
# order-side baselines
# ---------------------------------------------------------------------------


def upper_sets(P: Poset) -> list:
    """All upper sets, generated from their antichains of minimal elements
    (never by filtering the full powerset)."""
    out = [0]

    def rec(start: int, banned: int, ups: int):
        for i in range(start, P.n):
            if banned >> i & 1:
                continue
            out.append(ups | P.up[i])
            rec(i + 1, banned | P.up[i] | P.down[i], ups | P.up[i])

    rec(0, 0, 0)
    return out


@lru_cache(maxsize=None)
def alexandrov_topology(P: Poset) -> Topology:
    return Topology.from_opens(P.n, upper_sets(P), check=False)


@lru_cache(maxsize=None)
def scott_topology(P: Poset) -> Topology:
    """Upper sets inaccessible by existing directed suprema."""
    directed = [
        (d, P.supremum(d))
        for d in P.subsets()
        if P.is_directed(d) and P.supremum(d) is not None
    ]
    opens = [
        v
        for v in upper_sets(P)
        if all(not (1 << sup & v) or d & v for d, sup in directed)
    ]
    return Topology.from_opens(P.n, opens, check=False)


def specialization_poset(T: Topology, labels=None) -> Poset:
    """x <= y iff every open containing x contains y.  Raises NotT0Error
    when two points share all their opens."""
    full = (1 << T.n) - 1
    core = [full] * T.n
    for u in T.opens:
        for i in bits(u):
            core[i] &= u
    for i in range(T.n):
        for j in bits(core[i]):
            if i != j and core[j] >> i & 1:
                raise NotT0Error(f"points {i} and {j} are topologically equal")
    labels = tuple(labels) if labels else tuple(f"x{i}" for i in range(T.n))
    return Poset(tuple(core), labels)


# ---------------------------------------------------------------------------
# induced topologies from selection families
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _ub_variants(P: Poset, a_mask: int) -> tuple:
    """Distinct upper-bound sets of the nonempty subsets of a_mask."""
    return tuple(sorted({P.upper_bounds(b) for b in submasks(a_mask)}))


@lru_cache(maxsize=None)
def _lb_variants(P: Poset, s_mask: int) -> tuple:
    return tuple(sorted({P.lower_bounds(t) for t in submasks(s_mask)}))


@lru_cache(maxsize=None)
def is_open_tm(fam: "SelectionFamily", v: int) -> bool:
    """Open for the one-sided convergence structure: an upper set such that
    every family member with supremum inside v has a finite subset whose
    upper-bound set already sits inside v."""
    P = fam.poset
    if not P.is_upper_set(v):
        return False
    for a in fam.m_plus:
        if 1 << P.supremum(a) & v:
            if not any(ub & ~v == 0 for ub in _ub_variants(P, a)):
                return False
    return True


@lru_cache(maxsize=None)
def tau_m(fam: "SelectionFamily") -> Topology:
    opens = [v for v in upper_sets(fam.poset) if is_open_tm(fam, v)]
    return Topology.from_opens(fam.poset.n, opens, check=True)


@lru_cache(maxsize=None)
def is_open_tmn(mfam: "SelectionFamily", nfam: "SelectionFamily", v: int) -> bool:
    """Open for the two-sided structure.  No upper-set requirement: the
    constraint is purely that matching sup/inf pairs inside v admit a
    bound window inside v."""
    P = mfam.poset
    for a in mfam.m_plus:
        sup_a = P.supremum(a)
        if not 1 << sup_a & v:
            continue
        ubs = _ub_variants(P, a)
        for s in nfam.m_minus:
            if P.infimum(s) != sup_a:
                continue
            if not any(
                ub & lb & ~v == 0 for ub in ubs for lb in _lb_variants(P, s)
            ):
                return False
    return True


@lru_cache(maxsize=None)
def tau_mn(mfam: "SelectionFamily", nfam: "SelectionFamily") -> Topology:
    if mfam.poset is not nfam.poset and mfam.poset != nfam.poset:
        raise ValueError("families realized on different posets")
    n = mfam.poset.n
    opens = [v for v in range(1 << n) if is_open_tmn(mfam, nfam, v)]
    return Topology.from_opens(n, opens, check=True)
