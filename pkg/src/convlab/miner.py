"""Implication mining over exhaustively enumerated posets.

For every enumerated poset and configured selection the registered
properties are evaluated; every ordered property pair is then classified
as "always" (the implication held on every instance) or "counterexample"
(with the smallest witness found, in enumeration order).  A seeded audit
sample re-derives the way-below relation with the whole-member shortcut
and compares it against the literal search, guarding the fast paths.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import __version__
from .continuity import (
    alpha_class_membership,
    is_alpha_m_continuous,
    is_continuous_poset,
    is_doubly_continuous,
    is_m_continuous,
    is_mn_continuous,
    is_rstar_doubly_continuous,
)
from .enumeration import enumerate_posets
from .limits import enum_cap
from .poset import Poset, condition_star, is_meet_continuous, poset_to_dsl
from .relations import way_below_m_shortcut, way_below_matrix
from .selections import builtin, realize


@dataclass(frozen=True)
class MinerJob:
    n_max: int
    selections: tuple = ("Dir", "ACh")
    properties: tuple = ("m_cts", "alpha_m_cts", "m1")
    dedup: str = "unlabeled"
    seed: int = 0
    audit_samples: int = 8


# name -> (needs_selection, evaluator); ordered cheapest first
_PROPERTIES = {
    "m1": (True, lambda P, fam: all(
        e["approximant"] is not None
        for e in is_m_continuous(fam).evidence.values()
    )),
    "alpha_m_cts": (True, lambda P, fam: is_alpha_m_continuous(fam).holds),
    "alpha_class": (True, lambda P, fam: alpha_class_membership(fam).holds),
    "m_cts": (True, lambda P, fam: is_m_continuous(fam).holds),
    "continuous": (False, lambda P, fam: is_continuous_poset(P).holds),
    "doubly_continuous": (False, lambda P, fam: is_doubly_continuous(P).holds),
    "meet_cts": (False, lambda P, fam: is_meet_continuous(P).holds),
    "cond_star": (False, lambda P, fam: condition_star(P).holds),
    "rstar": (False, lambda P, fam: is_rstar_doubly_continuous(P).holds),
    "mn_cts_dirfilt": (False, lambda P, fam: is_mn_continuous(
        realize(builtin("Dir"), P), realize(builtin("Filt"), P)
    ).holds),
}

PROPERTY_NAMES = tuple(_PROPERTIES)


def evaluate_properties(P: Poset, selection: str, names) -> dict:
    fam = None
    out = {}
    for name in sorted(names, key=list(_PROPERTIES).index):
        needs_sel, fn = _PROPERTIES[name]
        if needs_sel and fam is None:
            fam = realize(builtin(selection), P)
        out[name] = bool(fn(P, fam))
    return out


def _audit_instance(P: Poset, selection: str) -> bool:
    """Literal way-below search versus the whole-member shortcut."""
    fam = realize(builtin(selection), P)
    wb = way_below_matrix(fam)
    for x in range(P.n):
        for y in range(P.n):
            if wb.holds(x, y) != way_below_m_shortcut(fam, x, y):
                return False
    return True


def mine(job: MinerJob, progress=None) -> dict:
    """Run the job and produce the versioned report."""
    for name in job.properties:
        if name not in _PROPERTIES:
            raise KeyError(f"unknown property {name!r}; choose from {PROPERTY_NAMES}")
    instances = []
    for n in range(1, job.n_max + 1):
        for P in enumerate_posets(n, dedup=job.dedup):
            for sel in job.selections:
                values = evaluate_properties(P, sel, job.properties)
                instances.append((P, sel, values))
            if progress:
                progress(n, len(instances))
    matrix = {}
    witnesses = []
    seen_witness = set()
    for p in job.properties:
        for q in job.properties:
            key = f"{p}=>{q}"
            if p == q:
                matrix[key] = {"status": "always"}
                continue
            hit = next(
                (
                    (P, sel, values)
                    for P, sel, values in instances
                    if values[p] and not values[q]
                ),
                None,
            )
            if hit is None:
                matrix[key] = {"status": "always"}
            else:
                P, sel, values = hit
                entry = {
                    "poset": poset_to_dsl(P),
                    "n": P.n,
                    "selection": sel,
                    "properties": values,
                }
                matrix[key] = {"status": "counterexample", "witness": entry}
                wkey = (entry["poset"], sel)
                if wkey not in seen_witness:
                    seen_witness.add(wkey)
                    witnesses.append(entry)
    rng = random.Random(job.seed)
    audit_pool = [(P, sel) for P, sel, _ in instances]
    audited = []
    violations = []
    if audit_pool:
        for _ in range(min(job.audit_samples, len(audit_pool))):
            P, sel = audit_pool[rng.randrange(len(audit_pool))]
            ok = _audit_instance(P, sel)
            audited.append({"poset": poset_to_dsl(P), "selection": sel, "ok": ok})
            if not ok:
                violations.append(audited[-1])
    return {
        "schema": 1,
        "tool": "convlab",
        "version": __version__,
        "job": {
            "n_max": job.n_max,
            "selections": list(job.selections),
            "properties": list(job.properties),
            "dedup": job.dedup,
            "seed": job.seed,
        },
        "caps": {"enumeration": enum_cap()},
        "instances": len(instances),
        "matrix": matrix,
        "witnesses": witnesses,
        "audit": {"samples": audited, "violations": violations},
    }


def verify_witness(entry: dict) -> bool:
    """Replay an archived witness through the standalone checkers."""
    from .poset import parse_poset

    P = parse_poset(entry["poset"])
    values = evaluate_properties(P, entry["selection"], entry["properties"].keys())
    return values == entry["properties"]
