"""Generalized way-below relations over realized selection families.

The pairwise deciders run the definitions literally: the existential
search ranges over all nonempty finite subsets in ascending cardinality
and short-circuits on the first witness.  The matrix builders compute the
same relations in bulk by precomputing, per family member, the distinct
upper/lower-bound sets its subsets can produce; tests pin the two paths
to each other.  The whole-set shortcut (take the entire member as the
finite subset) exists only as a cross-check oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .poset import bits, mask_of, submasks
from .report import PropertyReport
from .selections import SelectionFamily
from .topology import _lb_variants, _ub_variants


@dataclass(frozen=True)
class RelationMatrix:
    """rows[x] is the bitmask of {y : x REL y}."""

    relation: str
    selections: tuple
    rows: tuple

    def holds(self, x: int, y: int) -> bool:
        return bool(self.rows[x] >> y & 1)

    def column(self, y: int) -> int:
        return mask_of(x for x in range(len(self.rows)) if self.rows[x] >> y & 1)

    def to_json(self, labels) -> dict:
        pairs = [
            [labels[x], labels[y]]
            for x in range(len(self.rows))
            for y in bits(self.rows[x])
        ]
        return {"relation": self.relation, "selections": list(self.selections), "pairs": pairs}


# ---------------------------------------------------------------------------
# pairwise deciders (literal search)
# ---------------------------------------------------------------------------


def way_below_m(fam: SelectionFamily, x: int, y: int) -> bool:
    """x is way below y: every family member with supremum at or above y
    has a nonempty finite subset whose upper bounds all dominate x."""
    P = fam.poset
    for a in fam.m_plus:
        if not P.leq(y, P.supremum(a)):
            continue
        if not any(P.upper_bounds(b) & ~P.up[x] == 0 for b in submasks(a)):
            return False
    return True


def way_below_m_shortcut(fam: SelectionFamily, x: int, y: int) -> bool:
    """Cross-check oracle: only the whole member is tried as the finite
    subset.  On finite posets this must agree with the literal search."""
    P = fam.poset
    for a in fam.m_plus:
        if P.leq(y, P.supremum(a)) and P.upper_bounds(a) & ~P.up[x]:
            return False
    return True


def mn_way_below(mfam: SelectionFamily, nfam: SelectionFamily, x: int, y: int) -> bool:
    """Two-sided way-below: every sup/inf pair of members meeting at y has
    a bound window inside the principal filter of x."""
    P = mfam.poset
    for a, s in _meeting_pairs(mfam, nfam, y):
        if not any(
            P.upper_bounds(b) & P.lower_bounds(t) & ~P.up[x] == 0
            for b in submasks(a)
            for t in submasks(s)
        ):
            return False
    return True


def mn_triangle(mfam: SelectionFamily, nfam: SelectionFamily, y: int, z: int) -> bool:
    """Dual decider: the bound window must land inside the principal ideal
    of z.  Note the quantification is still over pairs meeting at y."""
    P = mfam.poset
    for a, s in _meeting_pairs(mfam, nfam, y):
        if not any(
            P.upper_bounds(b) & P.lower_bounds(t) & ~P.down[z] == 0
            for b in submasks(a)
            for t in submasks(s)
        ):
            return False
    return True


def _meeting_pairs(mfam, nfam, y):
    P = mfam.poset
    for a in mfam.m_plus:
        if P.supremum(a) != y:
            continue
        for s in nfam.m_minus:
            if P.infimum(s) == y:
                yield a, s


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def way_below_matrix(fam: SelectionFamily) -> RelationMatrix:
    P = fam.poset
    n = P.n
    full = P.full
    # satisfied[a] = the x for which member a poses no obstruction
    cols = [full] * n
    for a in fam.m_plus:
        sat = 0
        for ub in _ub_variants(P, a):
            sat |= P.lower_bounds(ub)
        sup_a = P.supremum(a)
        for y in bits(P.down[sup_a]):
            cols[y] &= sat
    rows = [mask_of(y for y in range(n) if cols[y] >> x & 1) for x in range(n)]
    return RelationMatrix("way_below", (fam.name,), tuple(rows))


@lru_cache(maxsize=None)
def _mn_satisfied(mfam: SelectionFamily, nfam: SelectionFamily) -> tuple:
    """Per element y: (who can sit under every bound window, who can sit
    above every bound window) over all member pairs meeting at y."""
    P = mfam.poset
    full = P.full
    under = [full] * P.n
    over = [full] * P.n
    for y in range(P.n):
        for a, s in _meeting_pairs(mfam, nfam, y):
            sat_under = 0
            sat_over = 0
            for ub in _ub_variants(P, a):
                for lb in _lb_variants(P, s):
                    window = ub & lb
                    sat_under |= P.lower_bounds(window)
                    sat_over |= P.upper_bounds(window)
            under[y] &= sat_under
            over[y] &= sat_over
    return tuple(under), tuple(over)


@lru_cache(maxsize=None)
def mn_way_below_matrix(mfam: SelectionFamily, nfam: SelectionFamily) -> RelationMatrix:
    under, _ = _mn_satisfied(mfam, nfam)
    n = mfam.poset.n
    rows = [mask_of(y for y in range(n) if under[y] >> x & 1) for x in range(n)]
    return RelationMatrix("mn_way_below", (mfam.name, nfam.name), tuple(rows))


@lru_cache(maxsize=None)
def mn_triangle_matrix(mfam: SelectionFamily, nfam: SelectionFamily) -> RelationMatrix:
    _, over = _mn_satisfied(mfam, nfam)
    return RelationMatrix("mn_triangle", (mfam.name, nfam.name), tuple(over))


# ---------------------------------------------------------------------------
# arrow sets
# ---------------------------------------------------------------------------


def arrows_m(fam: SelectionFamily, x: int) -> tuple:
    """(everything way below x, everything x is way below)."""
    m = way_below_matrix(fam)
    return m.column(x), m.rows[x]


def arrows_mn(mfam: SelectionFamily, nfam: SelectionFamily, x: int) -> tuple:
    """(below-arrow, above-arrow, below-triangle, above-triangle) of x."""
    wb = mn_way_below_matrix(mfam, nfam)
    tr = mn_triangle_matrix(mfam, nfam)
    return wb.column(x), wb.rows[x], tr.column(x), tr.rows[x]


# ---------------------------------------------------------------------------
# auxiliary-relation property checkers
# ---------------------------------------------------------------------------


def check_aux_properties(fam: SelectionFamily) -> PropertyReport:
    """Order-theoretic sanity of the one-sided relation: contained in the
    order, stable under flanking by the order, and fed by a bottom."""
    P = fam.poset
    rel = way_below_matrix(fam)
    for x in range(P.n):
        if rel.rows[x] & ~P.up[x]:
            y = next(bits(rel.rows[x] & ~P.up[x]))
            return _fail("aux_way_below", fam, "not below", x=P.labels[x], y=P.labels[y])
    for x in range(P.n):
        for y in bits(rel.rows[x]):
            for u in bits(P.down[x]):
                for z in bits(P.up[y]):
                    if not rel.holds(u, z):
                        return _fail(
                            "aux_way_below", fam, "flanking broken",
                            u=P.labels[u], x=P.labels[x], y=P.labels[y], z=P.labels[z],
                        )
    bot = P.bottom()
    if bot is not None and rel.rows[bot] != P.full:
        y = next(bits(P.full & ~rel.rows[bot]))
        return _fail("aux_way_below", fam, "bottom not way below", y=P.labels[y])
    return PropertyReport("aux_way_below", True, notes=f"selection={fam.name}")


def check_mn_aux_properties(mfam: SelectionFamily, nfam: SelectionFamily) -> PropertyReport:
    """Sanity of the two-sided relations, including the one-sided
    finite-subset consequences checked by literal subset search."""
    P = mfam.poset
    name = "aux_mn"
    wb = mn_way_below_matrix(mfam, nfam)
    tr = mn_triangle_matrix(mfam, nfam)
    for x in range(P.n):
        if wb.rows[x] & ~P.up[x]:
            y = next(bits(wb.rows[x] & ~P.up[x]))
            return _fail(name, mfam, "wb not below", x=P.labels[x], y=P.labels[y])
        if tr.rows[x] & ~P.up[x]:
            z = next(bits(tr.rows[x] & ~P.up[x]))
            return _fail(name, mfam, "triangle not below", y=P.labels[x], z=P.labels[z])
    bot, top = P.bottom(), P.top()
    if bot is not None and wb.rows[bot] != P.full:
        y = next(bits(P.full & ~wb.rows[bot]))
        return _fail(name, mfam, "bottom not wb", y=P.labels[y])
    if top is not None and tr.column(top) != P.full:
        y = next(bits(P.full & ~tr.column(top)))
        return _fail(name, mfam, "top not triangle-above", y=P.labels[y])
    # one-sided consequences: pin one side to the singleton of the meeting
    # point and search the other side literally
    for x in range(P.n):
        for y in bits(wb.rows[x]):
            for a in mfam.m_plus:
                if P.supremum(a) != y:
                    continue
                if not any(
                    P.upper_bounds(b) & P.down[y] & ~P.up[x] == 0
                    for b in submasks(a)
                ):
                    return _fail(
                        name, mfam, "one-sided wb consequence",
                        x=P.labels[x], y=P.labels[y], member=P.label_list(a),
                    )
    for y in range(P.n):
        for z in bits(tr.rows[y]):
            for s in nfam.m_minus:
                if P.infimum(s) != y:
                    continue
                if not any(
                    P.up[y] & P.lower_bounds(t) & ~P.down[z] == 0
                    for t in submasks(s)
                ):
                    return _fail(
                        name, mfam, "one-sided triangle consequence",
                        y=P.labels[y], z=P.labels[z], member=P.label_list(s),
                    )
    return PropertyReport(name, True, notes=f"selections=({mfam.name},{nfam.name})")


def _fail(name, fam, reason, **data):
    return PropertyReport(
        name, False, witnesses=({"reason": reason, **data},),
        notes=f"selection={fam.name}",
    )
