"""Continuity notions as decision procedures.

Each checker walks the carrier element by element, records the witnessing
member (or the failing clause) per element, and joins the clauses into a
single verdict.  topologicality_witness ties the convergence relations to
their induced topologies over the canonical and sampled nets.
"""

from __future__ import annotations

from .nets import (
    SampleSpec,
    m_limits,
    mn_limits,
    net_pool,
    net_to_json,
    tau_limits,
)
from .poset import Poset, bits, mask_of
from .relations import (
    mn_triangle_matrix,
    mn_way_below_matrix,
    way_below_matrix,
)
from .report import ContinuityVerdict, PropertyReport
from .selections import SelectionFamily, builtin, realize
from .topology import _ub_variants, is_open_tmn, tau_m, tau_mn


def _tm2_only(fam: SelectionFamily, v: int) -> bool:
    """The finite-subset clause of openness, without the upper-set test."""
    P = fam.poset
    for a in fam.m_plus:
        if 1 << P.supremum(a) & v:
            if not any(ub & ~v == 0 for ub in _ub_variants(P, a)):
                return False
    return True


def is_m_continuous(fam: SelectionFamily) -> ContinuityVerdict:
    """Per element: a member of way-below approximants with supremum at or
    above it, and an open up-arrow set.  The up-arrow set is an upper set
    by the flanking law, so only the finite-subset clause is tested for
    openness; the upper-set property is still asserted."""
    P = fam.poset
    wb = way_below_matrix(fam)
    evidence = {}
    holds = True
    for x in range(P.n):
        dd = wb.column(x)
        witness = next(
            (
                a
                for a in fam.m_plus
                if a & ~dd == 0 and P.leq(x, P.supremum(a))
            ),
            None,
        )
        up_arrow = wb.rows[x]
        upper = P.is_upper_set(up_arrow)
        open_ok = upper and _tm2_only(fam, up_arrow)
        evidence[P.labels[x]] = {
            "approximant": None if witness is None else P.label_list(witness),
            "up_arrow_upper": upper,
            "up_arrow_open": open_ok,
        }
        holds = holds and witness is not None and open_ok
    return ContinuityVerdict("M", holds, evidence)


def is_alpha_m_continuous(fam: SelectionFamily) -> ContinuityVerdict:
    """The down-arrow set itself must be a member whose supremum is the
    element."""
    P = fam.poset
    wb = way_below_matrix(fam)
    evidence = {}
    holds = True
    for x in range(P.n):
        dd = wb.column(x)
        member = dd in fam
        sup = P.supremum(dd) if dd else None
        ok = member and sup == x
        evidence[P.labels[x]] = {
            "down_arrow": P.label_list(dd),
            "is_member": member,
            "sup": None if sup is None else P.labels[sup],
        }
        holds = holds and ok
    return ContinuityVerdict("alphaM", holds, evidence)


def alpha_class_membership(fam: SelectionFamily) -> PropertyReport:
    """Membership in the class where the down-arrow characterization is
    decisive: the down-arrow set and the two-step down-arrow set of every
    element must both be members."""
    P = fam.poset
    wb = way_below_matrix(fam)
    failures = []
    for x in range(P.n):
        dd = wb.column(x)
        if dd not in fam:
            failures.append(
                {"x": P.labels[x], "condition": "down_arrow",
                 "set": P.label_list(dd)}
            )
        two_step = mask_of(
            y for y in range(P.n) if any(wb.holds(z, x) for z in bits(wb.rows[y]))
        )
        if two_step not in fam:
            failures.append(
                {"x": P.labels[x], "condition": "two_step",
                 "set": P.label_list(two_step)}
            )
    return PropertyReport(
        "alpha_class_membership", not failures, tuple(failures),
        notes=f"selection={fam.name}",
    )


def is_mn_continuous(mfam: SelectionFamily, nfam: SelectionFamily) -> ContinuityVerdict:
    """Two-sided continuity: approximating member pairs meeting exactly at
    each element, and openness of every arrow/triangle intersection."""
    P = mfam.poset
    wb = mn_way_below_matrix(mfam, nfam)
    tr = mn_triangle_matrix(mfam, nfam)
    evidence = {}
    holds = True
    for x in range(P.n):
        dd = wb.column(x)
        ua = tr.rows[x]
        a_wit = next(
            (a for a in mfam.m_plus if a & ~dd == 0 and P.supremum(a) == x), None
        )
        s_wit = next(
            (s for s in nfam.m_minus if s & ~ua == 0 and P.infimum(s) == x), None
        )
        evidence[P.labels[x]] = {
            "sup_side": None if a_wit is None else P.label_list(a_wit),
            "inf_side": None if s_wit is None else P.label_list(s_wit),
        }
        holds = holds and a_wit is not None and s_wit is not None
    open_failures = []
    for x in range(P.n):
        for y in range(P.n):
            v = wb.rows[x] & tr.column(y)
            if not is_open_tmn(mfam, nfam, v):
                open_failures.append([P.labels[x], P.labels[y]])
    if open_failures:
        holds = False
        evidence["open_failures"] = open_failures
    return ContinuityVerdict("MN", holds, evidence)


def is_continuous_poset(P: Poset) -> ContinuityVerdict:
    """Classical continuity: the directed-selection down-arrow of each
    element is directed with the element as supremum."""
    fam = realize(builtin("Dir"), P)
    wb = way_below_matrix(fam)
    evidence = {}
    holds = True
    for x in range(P.n):
        dd = wb.column(x)
        ok = P.is_directed(dd) and P.supremum(dd) == x
        evidence[P.labels[x]] = {"down_arrow": P.label_list(dd), "ok": ok}
        holds = holds and ok
    return ContinuityVerdict("classical", holds, evidence)


def is_doubly_continuous(P: Poset) -> ContinuityVerdict:
    fwd = is_continuous_poset(P)
    bwd = is_continuous_poset(P.opposite())
    return ContinuityVerdict(
        "doubly",
        fwd.holds and bwd.holds,
        {"poset": fwd.holds, "opposite": bwd.holds},
    )


def is_rstar_doubly_continuous(P: Poset) -> ContinuityVerdict:
    """The two-clause characterization for order convergence, over the
    directed/filtered pair: approximating arrow sets with the right sup
    and inf, and interpolants around the middle of every related triple
    whose window lands in the outer arrow sets."""
    mfam = realize(builtin("Dir"), P)
    nfam = realize(builtin("Filt"), P)
    wb = mn_way_below_matrix(mfam, nfam)
    tr = mn_triangle_matrix(mfam, nfam)
    evidence = {}
    holds = True
    for x in range(P.n):
        dd = wb.column(x)
        ua = tr.rows[x]
        ok = (
            P.is_directed(dd)
            and P.supremum(dd) == x
            and P.is_filtered(ua)
            and P.infimum(ua) == x
        )
        evidence[P.labels[x]] = {
            "down_arrow": P.label_list(dd),
            "up_triangle": P.label_list(ua),
            "ok": ok,
        }
        holds = holds and ok
    triple_failures = []
    for x in range(P.n):
        for y in bits(wb.rows[x]):
            for z in bits(tr.rows[y]):
                target = wb.rows[x] & tr.column(z)
                found = any(
                    P.up[a] & P.down[s] & ~target == 0
                    for a in bits(wb.column(y))
                    for s in bits(tr.rows[y])
                )
                if not found:
                    triple_failures.append([P.labels[x], P.labels[y], P.labels[z]])
    if triple_failures:
        holds = False
        evidence["triple_failures"] = triple_failures
    return ContinuityVerdict("Rstar", holds, evidence)


def topologicality_witness(kind: str, fams, P: Poset, spec: SampleSpec) -> PropertyReport:
    """Convergence in the induced topology versus the defining convergence
    relation, over every canonical net plus seeded random nets and every
    candidate limit.  Any disagreement is reported with the full net."""
    if kind == "M":
        T = tau_m(fams)
        conv = lambda net: m_limits(fams, net)
    else:
        T = tau_mn(fams[0], fams[1])
        conv = lambda net: mn_limits(fams[0], fams[1], net)
    witnesses = []
    pool = net_pool(kind, fams, P, spec)
    for net in pool:
        tl = tau_limits(T, net)
        cl = conv(net)
        if tl != cl:
            for x in bits(tl ^ cl):
                witnesses.append(
                    {
                        "x": P.labels[x],
                        "topological": bool(tl >> x & 1),
                        "structural": bool(cl >> x & 1),
                        "net": net_to_json(net),
                    }
                )
    return PropertyReport(
        f"topologicality_{kind}",
        not witnesses,
        tuple(witnesses),
        notes=f"nets={len(pool)}; seed={spec.seed}",
    )
