"""Finite nets: directed preordered index sets, eventuality, convergence.

Index sets are preorders, not posets: the canonical constructions below
produce order-equivalent but distinct index points, and they are kept
distinct.  An index, like a poset, is a tuple of bitmask rows, so the
"for all indices in a residual" quantifier is a single mask test.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence

from .errors import (
    CapExceededError,
    CofinalityError,
    DegenerateIndexError,
    ParseError,
)
from .limits import ITERATED_CAP
from .poset import Poset, bits, mask_of
from .report import PropertyReport
from .selections import SelectionFamily
from .topology import Topology, _lb_variants, _ub_variants


@dataclass(frozen=True)
class DirectedIndex:
    """Reflexive transitive directed relation; rel[i] = {j : i <= j}."""

    rel: tuple

    def __post_init__(self):
        m = len(self.rel)
        full = (1 << m) - 1
        for i, row in enumerate(self.rel):
            if row & ~full:
                raise ValueError(f"index row {i} exceeds the index size")
            if not row >> i & 1:
                raise ValueError(f"index relation not reflexive at {i}")
        for i in range(m):
            for j in bits(self.rel[i]):
                if self.rel[j] & ~self.rel[i]:
                    raise ValueError(f"index relation not transitive at ({i},{j})")
        for i in range(m):
            for j in range(i + 1, m):
                if not self.rel[i] & self.rel[j]:
                    raise ValueError(f"index not directed at ({i},{j})")

    @property
    def size(self) -> int:
        return len(self.rel)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.rel[i] >> j & 1)


@dataclass(frozen=True)
class Net:
    """Map from a directed index into a poset's carrier."""

    poset: Poset
    index: DirectedIndex
    values: tuple
    provenance: str = "adhoc"

    def __post_init__(self):
        if len(self.values) != self.index.size:
            raise ValueError("values/index size mismatch")
        for v in self.values:
            if not 0 <= v < self.poset.n:
                raise ValueError(f"net value {v} outside carrier")


def constant_net(P: Poset, x: int, size: int = 1) -> Net:
    full = (1 << size) - 1
    idx = DirectedIndex(tuple([full] * size))
    return Net(P, idx, tuple([x] * size), provenance="constant")


# ---------------------------------------------------------------------------
# eventuality and convergence
# ---------------------------------------------------------------------------


def _value_mask(net: Net, subset: int) -> int:
    """Index positions whose value lies in the carrier subset."""
    m = 0
    for i, v in enumerate(net.values):
        if subset >> v & 1:
            m |= 1 << i
    return m


def eventually(net: Net, subset: int) -> bool:
    """Whether some residual of the index maps entirely into subset."""
    inside = _value_mask(net, subset)
    return any(row & ~inside == 0 for row in net.index.rel)


def elb(net: Net) -> int:
    """Eventual lower bounds: elements the net eventually dominates."""
    P = net.poset
    return mask_of(x for x in range(P.n) if eventually(net, P.up[x]))


def m_converges(fam: SelectionFamily, net: Net, x: int) -> bool:
    """Some member with supremum at or above x consists of eventual lower
    bounds of the net."""
    P = fam.poset
    e = elb(net)
    return any(
        a & ~e == 0 and P.leq(x, P.supremum(a)) for a in fam.m_plus
    )


def m_limits(fam: SelectionFamily, net: Net) -> int:
    P = fam.poset
    e = elb(net)
    lim = 0
    for a in fam.m_plus:
        if a & ~e == 0:
            lim |= P.down[P.supremum(a)]
    return lim


def mn_converges(
    mfam: SelectionFamily, nfam: SelectionFamily, net: Net, x: int
) -> bool:
    """Some sup/inf pair of members meeting exactly at x confines the net
    eventually into every window between their elements."""
    P = mfam.poset
    cache: dict = {}

    def ev(window: int) -> bool:
        if window not in cache:
            cache[window] = eventually(net, window)
        return cache[window]

    for a in mfam.m_plus:
        if P.supremum(a) != x:
            continue
        for s in nfam.m_minus:
            if P.infimum(s) != x:
                continue
            if all(
                ev(P.up[i] & P.down[j]) for i in bits(a) for j in bits(s)
            ):
                return True
    return False


def mn_limits(mfam: SelectionFamily, nfam: SelectionFamily, net: Net) -> int:
    return mask_of(
        x for x in range(mfam.poset.n) if mn_converges(mfam, nfam, net, x)
    )


def tau_converges(T: Topology, net: Net, x: int) -> bool:
    """Topological convergence: eventually inside every open around x."""
    return all(eventually(net, u) for u in T.opens if u >> x & 1)


def tau_limits(T: Topology, net: Net) -> int:
    reached = {u: eventually(net, u) for u in T.opens}
    return mask_of(
        x
        for x in range(net.poset.n)
        if all(reached[u] for u in T.opens if u >> x & 1)
    )


# ---------------------------------------------------------------------------
# canonical constructions
# ---------------------------------------------------------------------------


def _net_from_points(P: Poset, points: list, provenance: str) -> Net:
    """Index points are (value, window) pairs ordered by reverse inclusion
    of the window component."""
    points = sorted(set(points))
    rel = []
    for _, w1 in points:
        row = 0
        for k, (_, w2) in enumerate(points):
            if w2 & ~w1 == 0:  # w1 contains w2
                row |= 1 << k
        rel.append(row)
    idx = DirectedIndex(tuple(rel))
    return Net(P, idx, tuple(u for u, _ in points), provenance=provenance)


@lru_cache(maxsize=None)
def canonical_net_from_mset(P: Poset, a_mask: int) -> Net:
    """The witness net of a member with existing supremum: one index point
    per (upper bound, upper-bound set of a finite subset) pair."""
    sup_a = P.supremum(a_mask)
    if sup_a is None:
        raise ValueError("member has no supremum")
    points = [
        (u, ub) for ub in _ub_variants(P, a_mask) for u in bits(ub)
    ]
    net = _net_from_points(P, points, "canonical_IA")
    if a_mask & ~elb(net):
        raise AssertionError("canonical net lost an eventual lower bound")
    return net


@lru_cache(maxsize=None)
def canonical_net_from_mnsets(P: Poset, a_mask: int, s_mask: int) -> Net:
    """Two-sided witness net: index points carry windows cut by upper
    bounds of subsets of the sup-side member and lower bounds of subsets
    of the inf-side member."""
    sup_a, inf_s = P.supremum(a_mask), P.infimum(s_mask)
    if sup_a is None or inf_s is None or sup_a != inf_s:
        raise ValueError("members do not meet at a common sup = inf")
    points = [
        (u, w)
        for ub in _ub_variants(P, a_mask)
        for lb in _lb_variants(P, s_mask)
        for w in [ub & lb]
        for u in bits(w)
    ]
    if not points:
        raise DegenerateIndexError("empty index")
    net = _net_from_points(P, points, "canonical_IAS")
    for i in bits(a_mask):
        for j in bits(s_mask):
            if not eventually(net, P.up[i] & P.down[j]):
                raise AssertionError("canonical net escapes a bound window")
    return net


# ---------------------------------------------------------------------------
# subnets and iterated limits
# ---------------------------------------------------------------------------


def subnet(net: Net, J: DirectedIndex, h: Sequence[int]) -> Net:
    """Compose the net with an index map.  The map must be cofinal in the
    parent index (for every parent residual there is a J-residual mapped
    into it); monotonicity is not required."""
    h = tuple(h)
    if len(h) != J.size:
        raise ValueError("map/index size mismatch")
    I = net.index
    for i0 in range(I.size):
        ok = False
        for j0 in range(J.size):
            if all(I.leq(i0, h[j]) for j in bits(J.rel[j0])):
                ok = True
                break
        if not ok:
            raise CofinalityError(f"map misses the residual of index {i0}")
    return Net(net.poset, J, tuple(net.values[h[j]] for j in range(J.size)),
               provenance="subnet")


def tail_restriction(net: Net, i0: int) -> Net:
    """The residual of i0 as a subnet."""
    keep = list(bits(net.index.rel[i0]))
    pos = {i: k for k, i in enumerate(keep)}
    rel = tuple(
        mask_of(pos[j] for j in bits(net.index.rel[i]) if j in pos) for i in keep
    )
    return subnet(net, DirectedIndex(rel), keep)


def iterated_limit_net(
    outer: Net,
    inners: Sequence[Net],
    cap: int = ITERATED_CAP,
    rng: Optional[random.Random] = None,
    chain_length: int = 6,
) -> Net:
    """Diagonal net over pairs (outer index, choice function).

    The index is the product of the outer index with the pointwise-ordered
    set of choice functions through the inner indices.  When the full set
    of choice functions exceeds the cap, a seeded ascending chain of
    choice functions is sampled instead (an ascending family keeps the
    index directed); without an rng the overflow is an error.
    """
    I = outer.index
    if len(inners) != I.size:
        raise ValueError("one inner net per outer index point is required")
    for net in inners:
        if net.poset != outer.poset:
            raise ValueError("inner nets target a different poset")
    sizes = [net.index.size for net in inners]
    total = I.size
    for s in sizes:
        total *= s
    if total <= cap:
        choices = list(product(*[range(s) for s in sizes]))
    elif rng is None:
        raise CapExceededError(f"iterated index would have {total} points")
    else:
        f = tuple(rng.randrange(s) for s in sizes)
        chain = [f]
        for _ in range(chain_length - 1):
            f = tuple(
                rng.choice(list(bits(inners[t].index.rel[f[t]])))
                for t in range(len(f))
            )
            chain.append(f)
        choices = chain
    points = [(i, f) for i in range(I.size) for f in choices]
    jrel = [net.index.rel for net in inners]
    rel = []
    for i1, f1 in points:
        row = 0
        for k, (i2, f2) in enumerate(points):
            if I.leq(i1, i2) and all(
                jrel[t][f1[t]] >> f2[t] & 1 for t in range(len(f1))
            ):
                row |= 1 << k
        rel.append(row)
    idx = DirectedIndex(tuple(rel))
    values = tuple(inners[i].values[f[i]] for i, f in points)
    return Net(outer.poset, idx, values, provenance="iterated")


# ---------------------------------------------------------------------------
# random sampling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SampleSpec:
    """Bounds and seed for the sampled property suites."""

    seed: int = 0
    net_samples: int = 20
    subnet_samples: int = 50
    iter_samples: int = 50
    max_index: int = 5


def random_directed_index(rng: random.Random, max_size: int = 5) -> DirectedIndex:
    """Random preorder made directed by a top cluster (one or two mutually
    equivalent maximal points, so tails can genuinely oscillate)."""
    cluster = 1 if max_size < 2 else rng.choice((1, 1, 2))
    base = rng.randint(0, max_size - cluster)
    m = base + cluster
    rows = [1 << i for i in range(base)]
    for i in range(base):
        for j in range(base):
            if i != j and rng.random() < 0.3:
                rows[i] |= 1 << j
    changed = True
    while changed:
        changed = False
        for i in range(base):
            acc = rows[i]
            for j in bits(rows[i]):
                acc |= rows[j]
            if acc != rows[i]:
                rows[i] = acc
                changed = True
    tops = ((1 << cluster) - 1) << base
    rows = [row | tops for row in rows] + [tops] * cluster
    return DirectedIndex(tuple(rows))


def random_net(P: Poset, rng: random.Random, max_index: int = 5) -> Net:
    idx = random_directed_index(rng, max_index)
    values = tuple(rng.randrange(P.n) for _ in range(idx.size))
    return Net(P, idx, values, provenance="random")


def sample_subnet(net: Net, rng: random.Random, attempts: int = 30) -> Net:
    """A valid subnet: a tail restriction, the identity, or a random
    monotone cofinal re-indexing (the default sampler only emits monotone
    maps; validity is still checked by subnet())."""
    style = rng.randrange(3)
    if style == 0:
        return tail_restriction(net, rng.randrange(net.index.size))
    if style == 1:
        return subnet(net, net.index, list(range(net.index.size)))
    I = net.index
    for _ in range(attempts):
        J = random_directed_index(rng, min(net.index.size + 1, 5))
        h = [rng.randrange(I.size) for _ in range(J.size)]
        monotone = all(
            I.leq(h[j1], h[j2])
            for j1 in range(J.size)
            for j2 in bits(J.rel[j1])
        )
        if not monotone:
            continue
        try:
            return subnet(net, J, h)
        except CofinalityError:
            continue
    return tail_restriction(net, rng.randrange(net.index.size))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def net_to_json(net: Net) -> dict:
    m = net.index.size
    return {
        "index_rel": [[net.index.rel[i] >> j & 1 for j in range(m)] for i in range(m)],
        "values": [net.poset.labels[v] for v in net.values],
        "provenance": {"tag": net.provenance},
    }


def net_from_json(P: Poset, doc: dict) -> Net:
    try:
        rel_rows = doc["index_rel"]
        value_names = doc["values"]
    except (KeyError, TypeError):
        raise ParseError('net JSON needs "index_rel" and "values"') from None
    if not isinstance(rel_rows, list) or not all(isinstance(r, list) for r in rel_rows):
        raise ParseError("index_rel must be a 0/1 matrix")
    m = len(rel_rows)
    if any(len(r) != m for r in rel_rows) or len(value_names) != m:
        raise ParseError("net sizes are inconsistent")
    rel = tuple(mask_of(j for j in range(m) if rel_rows[i][j]) for i in range(m))
    try:
        idx = DirectedIndex(rel)
    except ValueError as exc:
        raise ParseError(f"bad index relation: {exc}") from None
    values = tuple(P.elem(str(name)) for name in value_names)
    tag = "adhoc"
    prov = doc.get("provenance")
    if isinstance(prov, dict) and "tag" in prov:
        tag = str(prov["tag"])
    return Net(P, idx, values, provenance=tag)


# ---------------------------------------------------------------------------
# axiom checker
# ---------------------------------------------------------------------------


def _limits_for(kind: str, fams, net: Net) -> int:
    if kind == "M":
        return m_limits(fams, net)
    return mn_limits(fams[0], fams[1], net)


def net_pool(kind: str, fams, P: Poset, spec: SampleSpec) -> list:
    """Canonical nets, fat constants and seeded random nets: the stock of
    sample nets every sampled suite draws from."""
    pool = [constant_net(P, x, size=2) for x in range(P.n)]
    if kind == "M":
        pool += [canonical_net_from_mset(P, a) for a in fams.m_plus]
    else:
        mfam, nfam = fams
        for a in mfam.m_plus:
            for s in nfam.m_minus:
                if P.supremum(a) == P.infimum(s):
                    pool.append(canonical_net_from_mnsets(P, a, s))
    rng = random.Random(spec.seed * 1000003 + P.n)
    pool += [random_net(P, rng, spec.max_index) for _ in range(spec.net_samples)]
    return pool


def kelley_check(kind: str, fams, P: Poset, spec: SampleSpec) -> PropertyReport:
    """Constants, Subnets and Iterated-limits axioms for the chosen
    convergence structure.  Constants is exact; the other two run over
    seeded samples.  The Divergence axiom is not decided directly: it is
    implied whenever the topologicality checker finds agreement."""
    name = f"kelley_{kind}"
    notes = [
        f"seed={spec.seed}",
        "divergence axiom implied by topologicality agreement, not directly checked",
    ]
    witnesses = []
    for x in range(P.n):
        net = constant_net(P, x, size=2)
        if not _limits_for(kind, fams, net) >> x & 1:
            witnesses.append({"axiom": "constants", "x": P.labels[x]})
    pool = [
        (net, _limits_for(kind, fams, net))
        for net in net_pool(kind, fams, P, spec)
    ]
    convergent = [(net, lim) for net, lim in pool if lim]
    rng = random.Random(spec.seed * 7 + 11)
    if convergent:
        for net, lim in convergent:
            for _ in range(spec.subnet_samples):
                sub = sample_subnet(net, rng)
                sub_lim = _limits_for(kind, fams, sub)
                if lim & ~sub_lim:
                    lost = next(bits(lim & ~sub_lim))
                    witnesses.append(
                        {
                            "axiom": "subnets",
                            "x": P.labels[lost],
                            "net": net_to_json(net),
                            "subnet": net_to_json(sub),
                        }
                    )
        constructed = 0
        attempts = 0
        while constructed < spec.iter_samples and attempts < 4 * spec.iter_samples:
            outer, lim = convergent[attempts % len(convergent)]
            attempts += 1
            x = rng.choice(list(bits(lim)))
            inners = []
            # keep the choice-function count small; the axiom needs many
            # sampled K-nets, not a few enormous ones
            branch_budget = 16
            for v in outer.values:
                inner = None
                if kind == "M" and rng.random() < 0.3:
                    choices = [a for a in fams.m_plus
                               if P.leq(v, P.supremum(a))]
                    if choices:
                        inner = canonical_net_from_mset(P, rng.choice(choices))
                if inner is None:
                    inner = constant_net(P, v, size=rng.randint(1, 2))
                if branch_budget // inner.index.size == 0:
                    inner = constant_net(P, v)
                branch_budget //= inner.index.size
                inners.append(inner)
            try:
                knet = iterated_limit_net(outer, inners, rng=rng)
            except CapExceededError:
                continue
            constructed += 1
            if not _limits_for(kind, fams, knet) >> x & 1:
                witnesses.append(
                    {
                        "axiom": "iterated_limits",
                        "x": P.labels[x],
                        "outer": net_to_json(outer),
                    }
                )
        notes.append(f"iterated nets constructed={constructed}")
    else:
        notes.append("no convergent sample nets; subnet/iterated checks vacuous")
    if spec.subnet_samples == 0 and spec.iter_samples == 0:
        notes.append("degenerate sample spec: sampled axioms hold vacuously")
    return PropertyReport(name, not witnesses, tuple(witnesses), "; ".join(notes))
