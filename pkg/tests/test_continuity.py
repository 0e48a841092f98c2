from convlab.continuity import (
    alpha_class_membership,
    is_alpha_m_continuous,
    is_continuous_poset,
    is_doubly_continuous,
    is_m_continuous,
    is_mn_continuous,
    is_rstar_doubly_continuous,
    topologicality_witness,
)
from convlab.enumeration import enumerate_posets
from convlab.nets import SampleSpec
from convlab.poset import parse_poset
from convlab.selections import ORDER_SELECTIONS, builtin, realize


def test_ach_p3_is_m_continuous(p3):
    v = is_m_continuous(realize(builtin("ACh"), p3))
    assert v.holds and v.notion == "M"
    for lab in ("a", "b", "c"):
        assert v.evidence[lab]["approximant"] is not None
        assert v.evidence[lab]["up_arrow_open"]


def test_every_selection_m_continuous_small_scale():
    for P in enumerate_posets(3):
        for name in ORDER_SELECTIONS:
            assert is_m_continuous(realize(builtin(name), P)).holds


def test_every_selection_m_continuous_up_to_five():
    for n in range(1, 6):
        for P in enumerate_posets(n, dedup="unlabeled"):
            for name in ORDER_SELECTIONS:
                assert is_m_continuous(realize(builtin(name), P)).holds


def test_singleton_everything_holds():
    P = parse_poset("elements: x; order:")
    fam = realize(builtin("ACh"), P)
    assert is_m_continuous(fam).holds
    assert is_alpha_m_continuous(fam).holds
    assert alpha_class_membership(fam).holds
    assert is_mn_continuous(fam, fam).holds
    assert is_rstar_doubly_continuous(P).holds
    assert is_continuous_poset(P).holds


def test_alpha_fails_on_p3_with_recorded_witness(p3):
    v = is_alpha_m_continuous(realize(builtin("ACh"), p3))
    assert not v.holds
    assert v.evidence["c"]["down_arrow"] == ["a", "b", "c"]
    assert not v.evidence["c"]["is_member"]
    assert v.evidence["c"]["sup"] == "c"


def test_alpha_holds_for_dir_and_fin():
    for P in enumerate_posets(3):
        assert is_alpha_m_continuous(realize(builtin("Dir"), P)).holds
        assert is_alpha_m_continuous(realize(builtin("fin"), P)).holds


def test_alpha_class_membership(p3):
    rep = alpha_class_membership(realize(builtin("ACh"), p3))
    assert not rep.holds
    assert any(
        w["x"] == "c" and w["condition"] == "down_arrow" for w in rep.witnesses
    )
    assert alpha_class_membership(realize(builtin("Dir"), p3)).holds


def test_alpha_implies_first_clause_small_scale():
    for P in enumerate_posets(3):
        for name in ORDER_SELECTIONS:
            fam = realize(builtin(name), P)
            if is_alpha_m_continuous(fam).holds:
                m = is_m_continuous(fam)
                assert all(
                    e["approximant"] is not None for e in m.evidence.values()
                )


def test_mn_continuity_examples(p3, d4):
    assert is_mn_continuous(
        realize(builtin("Dir"), p3), realize(builtin("Filt"), p3)
    ).holds
    fin = realize(builtin("fin"), d4)
    assert is_mn_continuous(fin, fin).holds


def test_rstar_examples(p3):
    assert is_rstar_doubly_continuous(p3).holds
    for P in enumerate_posets(3):
        rstar = is_rstar_doubly_continuous(P).holds
        mn = is_mn_continuous(
            realize(builtin("Dir"), P), realize(builtin("Filt"), P)
        ).holds
        assert rstar == mn


def test_every_finite_poset_classically_continuous():
    for P in enumerate_posets(3):
        assert is_continuous_poset(P).holds
        assert is_doubly_continuous(P).holds


def test_condition_star_restricted_equivalence():
    # on posets with two-sided meet continuity, topologicality of the
    # two-sided structure must agree with double continuity
    from convlab.poset import condition_star

    for P in enumerate_posets(4, dedup="unlabeled"):
        if not condition_star(P).holds:
            continue
        mn = is_mn_continuous(
            realize(builtin("Dir"), P), realize(builtin("Filt"), P)
        ).holds
        assert mn == is_doubly_continuous(P).holds


def test_dir_m_continuity_matches_classical():
    for P in enumerate_posets(3):
        fam = realize(builtin("Dir"), P)
        assert is_m_continuous(fam).holds == is_continuous_poset(P).holds


def test_topologicality_witness_examples(p3):
    spec = SampleSpec(seed=4, net_samples=15, max_index=4)
    ach = realize(builtin("ACh"), p3)
    rep = topologicality_witness("M", ach, p3, spec)
    assert rep.holds
    dirfam = realize(builtin("Dir"), p3)
    filtfam = realize(builtin("Filt"), p3)
    rep2 = topologicality_witness("MN", (dirfam, filtfam), p3, spec)
    assert rep2.holds
    single = parse_poset("elements: x; order:")
    sfam = realize(builtin("Dir"), single)
    assert topologicality_witness("M", sfam, single, spec).holds


def test_verdict_json_shape(p3):
    doc = is_m_continuous(realize(builtin("ACh"), p3)).to_json()
    assert set(doc) == {"notion", "holds", "evidence"}
    assert doc["holds"] is True
