"""Subset-selection families.

A selection is a rule that, for a poset (and optionally a topology on its
carrier), picks out a family of nonempty subsets that always includes all
singletons.  realize() materializes the family by exhaustive enumeration
and splits it into the members with existing supremum / infimum, which is
what every downstream quantifier consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .errors import CapExceededError, MinimalityError
from .limits import REALIZE_CAP
from .poset import Poset
from .topology import Topology, alexandrov_topology


@dataclass(frozen=True)
class Selection:
    """Named membership rule.  needs_space selections (Irr, Cpt, Con) are
    judged against a topology; the others ignore it."""

    name: str
    membership: Callable
    needs_space: bool = False


@dataclass(frozen=True)
class SelectionFamily:
    """A realized selection on a concrete poset.

    members is the full family in ascending mask order; m_plus / m_minus
    are the sub-tuples whose supremum / infimum exists.
    """

    poset: Poset
    name: str
    members: tuple
    m_plus: tuple
    m_minus: tuple
    notes: str = ""

    def __contains__(self, mask: int) -> bool:
        return mask in self.members

    def to_json(self) -> dict:
        lab = self.poset.label_list
        return {
            "selection": self.name,
            "members": [lab(m) for m in self.members],
            "m_plus": [lab(m) for m in self.m_plus],
            "m_minus": [lab(m) for m in self.m_minus],
        }


def realize(
    sel: Selection,
    P: Poset,
    space: Optional[Topology] = None,
    cap: int = REALIZE_CAP,
) -> SelectionFamily:
    """Enumerate all nonempty subsets of P and keep those the rule accepts.

    Raises MinimalityError if the rule rejects some singleton (the empty
    set never reaches the rule).  Topology-context selections default to
    the Alexandrov topology of the poset, keeping the space/poset bridge
    explicit but convenient.
    """
    if P.n > cap:
        raise CapExceededError(f"carrier {P.n} exceeds enumeration cap {cap}")
    if sel.needs_space and space is None:
        space = alexandrov_topology(P)
    members = []
    for mask in P.subsets():
        if sel.membership(P, mask, space):
            members.append(mask)
    member_set = set(members)
    for i in range(P.n):
        if 1 << i not in member_set:
            raise MinimalityError(
                f"selection {sel.name!r} rejects singleton {{{P.labels[i]}}}"
            )
    m_plus = tuple(m for m in members if P.supremum(m) is not None)
    m_minus = tuple(m for m in members if P.infimum(m) is not None)
    return SelectionFamily(P, sel.name, tuple(members), m_plus, m_minus)


# ---------------------------------------------------------------------------
# built-in selections
# ---------------------------------------------------------------------------


def _dir(P, mask, space):
    return P.is_directed(mask)


def _filt(P, mask, space):
    return P.is_filtered(mask)


def _fin(P, mask, space):
    return mask != 0


def _ch(P, mask, space):
    return P.is_chain(mask)


def _ach(P, mask, space):
    return P.is_antichain(mask)


def _irr(P, mask, space):
    """Irreducible: every two opens meeting the set intersect inside it."""
    if not mask:
        return False
    hitting = [u for u in space.opens if u & mask]
    for a in hitting:
        for b in hitting:
            if not a & b & mask:
                return False
    return True


def _cpt(P, mask, space):
    # A finite space has finitely many opens, so every cover of a nonempty
    # set already is a finite cover of itself.
    return mask != 0


def _con(P, mask, space):
    """Connected in the subspace sense: no pair of opens splits the set."""
    if not mask:
        return False
    for u in space.opens:
        if not u & mask:
            continue
        for v in space.opens:
            if v & mask and not u & v & mask and mask & ~(u | v) == 0:
                return False
    return True


_BUILTINS = {
    "Dir": Selection("Dir", _dir),
    "Filt": Selection("Filt", _filt),
    "fin": Selection("fin", _fin),
    "Ch": Selection("Ch", _ch),
    "ACh": Selection("ACh", _ach),
    "Irr": Selection("Irr", _irr, needs_space=True),
    "Cpt": Selection("Cpt", _cpt, needs_space=True),
    "Con": Selection("Con", _con, needs_space=True),
}

ORDER_SELECTIONS = ("Dir", "Filt", "fin", "Ch", "ACh")
SPACE_SELECTIONS = ("Irr", "Cpt", "Con")


def builtin(name: str) -> Selection:
    try:
        return _BUILTINS[name]
    except KeyError:
        raise KeyError(
            f"unknown selection {name!r}; choose from {sorted(_BUILTINS)}"
        ) from None


def from_explicit(P: Poset, sets) -> Selection:
    """Selection whose family is the minimal closure of an explicit list:
    the empty set is dropped and all singletons are added.  Repairs are
    silent but surface in the realized family's notes."""
    cleaned = frozenset(m for m in sets if m)
    singles = frozenset(1 << i for i in range(P.n))

    def member(Q, mask, space, _ok=cleaned | singles):
        return mask in _ok

    return Selection("explicit", member)


def realize_explicit(P: Poset, sets, cap: int = REALIZE_CAP) -> SelectionFamily:
    """realize() for from_explicit, with the repair log filled in."""
    dropped = sum(1 for m in sets if not m)
    added = sorted(
        {1 << i for i in range(P.n)} - {m for m in sets if m}
    )
    fam = realize(from_explicit(P, sets), P, cap=cap)
    notes = []
    if dropped:
        notes.append(f"dropped {dropped} empty set(s)")
    if added:
        labels = ", ".join("{%s}" % ",".join(P.label_list(m)) for m in added)
        notes.append(f"added singletons {labels}")
    return SelectionFamily(
        fam.poset, fam.name, fam.members, fam.m_plus, fam.m_minus,
        notes="; ".join(notes),
    )
