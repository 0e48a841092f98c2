import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convlab.errors import CycleError, DuplicateLabelError, ParseError
from convlab.poset import (
    Poset,
    condition_star,
    is_meet_continuous,
    mask_of,
    parse_poset,
    poset_to_dot,
    poset_to_dsl,
    poset_to_json,
)
from convlab.enumeration import enumerate_posets, is_isomorphic
from conftest import chain_poset
from oracles import (
    brute_lower_bounds,
    brute_meet_continuous,
    brute_sup,
    brute_upper_bounds,
)


def mask(P, *names):
    return P.mask_from_labels(names)


# -- parsing -----------------------------------------------------------------


def test_parse_p3(p3):
    assert p3.labels == ("a", "b", "c")
    a, b, c = 0, 1, 2
    assert p3.leq(a, c) and p3.leq(b, c)
    assert not p3.leq(c, a) and not p3.leq(a, b)
    assert all(p3.leq(i, i) for i in range(3))


def test_parse_singleton():
    P = parse_poset("elements: x; order:")
    assert P.n == 1 and P.up == (1,)


def test_parse_cycle_is_rejected():
    with pytest.raises(CycleError):
        parse_poset("elements: p q; order: p<q q<p")


def test_parse_indirect_cycle():
    with pytest.raises(CycleError):
        parse_poset("elements: p q r; order: p<q q<r r<p")


def test_parse_duplicate_label():
    with pytest.raises(DuplicateLabelError):
        parse_poset("elements: p p; order:")


@pytest.mark.parametrize(
    "bad",
    [
        "order: a<b",
        "elements: a b",
        "elements: a b; order: a<b junk",
        "elements: a; order: a<z",
    ],
)
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_poset(bad)


def test_parse_comments_and_json(p3):
    P = parse_poset("# the example\nelements: a b c; # names\norder: a<c b<c")
    assert P.up == p3.up
    Q = parse_poset(json.dumps({"elements": ["a", "b", "c"], "covers": [["a", "c"], ["b", "c"]]}))
    assert Q.up == p3.up
    with pytest.raises(ParseError):
        parse_poset('{"covers": []}')


def test_json_closes_transitively():
    P = parse_poset('{"elements": ["a","b","c"], "covers": [["a","b"],["b","c"]]}')
    assert P.leq(0, 2)


# -- bounds ------------------------------------------------------------------


def test_upper_bounds_examples(p3, d4):
    assert p3.upper_bounds(mask(p3, "a", "b")) == mask(p3, "c")
    assert p3.upper_bounds(0) == p3.full
    assert d4.upper_bounds(mask(d4, "x", "y")) == mask(d4, "top")


def test_lower_bounds_examples(p3, d4):
    assert p3.lower_bounds(mask(p3, "a", "b")) == brute_lower_bounds(p3, mask(p3, "a", "b")) == 0
    assert p3.lower_bounds(0) == p3.full
    assert d4.lower_bounds(mask(d4, "x", "y")) == mask(d4, "bot")


def test_sup_inf_examples(p3, d4, antichain2):
    assert p3.supremum(mask(p3, "a", "b")) == p3.elem("c")
    assert p3.supremum(mask(p3, "a")) == p3.elem("a")
    assert antichain2.supremum(antichain2.full) is None
    assert d4.infimum(mask(d4, "x", "y")) == d4.elem("bot")
    assert p3.infimum(mask(p3, "c")) == p3.elem("c")
    assert p3.infimum(mask(p3, "a", "b")) is None


def test_empty_sup_is_bottom(d4, p3):
    assert d4.supremum(0) == d4.elem("bot")
    assert d4.infimum(0) == d4.elem("top")
    assert p3.supremum(0) is None  # no bottom
    assert p3.infimum(0) == p3.elem("c")


def test_bounds_against_oracle_exhaustive():
    for P in enumerate_posets(3):
        for q in range(1 << P.n):
            assert P.upper_bounds(q) == brute_upper_bounds(P, q)
            assert P.lower_bounds(q) == brute_lower_bounds(P, q)
            sup = P.supremum(q)
            assert sup == brute_sup(P, q)
            if sup is not None:
                assert P.upper_bounds(q) == P.up[sup]


def test_bounds_antitone(p3):
    for q1 in range(1 << p3.n):
        for q2 in range(1 << p3.n):
            if q1 & ~q2 == 0:
                assert p3.upper_bounds(q2) & ~p3.upper_bounds(q1) == 0


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_bound_operators_form_a_galois_connection(data):
    idx = data.draw(st.integers(min_value=0, max_value=18))
    P = list(enumerate_posets(3))[idx]
    q = data.draw(st.integers(min_value=0, max_value=P.full))
    # closure: every set sits under its upper bounds' lower bounds,
    # and a third application changes nothing
    assert q & ~P.lower_bounds(P.upper_bounds(q)) == 0
    assert P.upper_bounds(P.lower_bounds(P.upper_bounds(q))) == P.upper_bounds(q)


def test_upper_bounds_is_upper_set():
    for P in enumerate_posets(3):
        for q in range(1 << P.n):
            assert P.is_upper_set(P.upper_bounds(q))
            assert P.is_lower_set(P.lower_bounds(q))


# -- subset predicates ---------------------------------------------------------


def test_predicates_examples(p3):
    ab = mask(p3, "a", "b")
    ac = mask(p3, "a", "c")
    assert not p3.is_directed(ab)
    assert p3.is_antichain(ab)
    assert p3.is_chain(ac) and p3.is_directed(ac)
    for i in range(3):
        s = 1 << i
        assert p3.is_directed(s) and p3.is_filtered(s)
        assert p3.is_chain(s) and p3.is_antichain(s)
    for pred in (p3.is_directed, p3.is_filtered, p3.is_chain, p3.is_antichain):
        assert not pred(0)


def test_directed_filtered_duality():
    for P in enumerate_posets(3):
        op = P.opposite()
        for q in range(1 << P.n):
            assert P.is_directed(q) == op.is_filtered(q)
            assert P.is_chain(q) == op.is_chain(q)
            assert P.is_antichain(q) == op.is_antichain(q)


def test_finite_directed_sets_have_maximum():
    for P in enumerate_posets(4):
        for q in range(1, 1 << P.n):
            if P.is_directed(q):
                assert P.supremum(q) is not None
                assert q >> P.supremum(q) & 1


# -- closure operators ---------------------------------------------------------


def test_up_down_sets(p3):
    assert p3.up_set(mask(p3, "a")) == mask(p3, "a", "c")
    assert p3.down_set(mask(p3, "c")) == p3.full
    assert p3.is_upper_set(p3.full)
    assert not p3.is_upper_set(mask(p3, "a"))


def test_opposite(p3, singleton, d4):
    op = p3.opposite()
    assert op.leq(2, 0) and op.leq(2, 1) and not op.leq(0, 2)
    assert singleton.opposite().up == singleton.up
    assert is_isomorphic(d4, d4.opposite())
    for P in enumerate_posets(3):
        assert P.opposite().opposite().up == P.up


# -- serialization ---------------------------------------------------------------


def test_dsl_round_trip_exhaustive():
    for n in range(5):
        for P in enumerate_posets(n):
            assert parse_poset(poset_to_dsl(P)).up == P.up


def test_json_round_trip(p3):
    assert parse_poset(json.dumps(poset_to_json(p3))).up == p3.up


def test_dot_contains_covers(d4):
    dot = poset_to_dot(d4)
    assert '"bot" -> "x"' in dot and '"y" -> "top"' in dot
    assert '"bot" -> "top"' not in dot  # covers only, no transitive edges


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_dsl_round_trip_random(data):
    n = data.draw(st.integers(min_value=1, max_value=6))
    covers = data.draw(
        st.sets(
            st.tuples(
                st.integers(min_value=0, max_value=n - 1),
                st.integers(min_value=0, max_value=n - 1),
            ).filter(lambda p: p[0] < p[1]),
            max_size=8,
        )
    )
    labels = [f"e{i}" for i in range(n)]
    doc = {"elements": labels, "covers": [[labels[i], labels[j]] for i, j in covers]}
    P = parse_poset(json.dumps(doc))
    assert parse_poset(poset_to_dsl(P)).up == P.up


# -- meet continuity ---------------------------------------------------------------


def test_meet_continuity_chain_holds():
    for k in (1, 2, 4):
        assert is_meet_continuous(chain_poset(k)).holds


def test_meet_continuity_d4_holds(d4):
    assert is_meet_continuous(d4).holds
    assert brute_meet_continuous(d4)


def test_meet_continuity_six_element_checker_matches_oracle():
    P = parse_poset(
        "elements: bot x a b t1 t2; "
        "order: bot<x bot<a bot<b a<t1 b<t1 a<t2 b<t2 x<t1 x<t2"
    )
    assert is_meet_continuous(P).holds == brute_meet_continuous(P)
    assert is_meet_continuous(P, literal=True).holds == brute_meet_continuous(P, literal=True)


def test_meet_continuity_matches_oracle_exhaustive():
    for P in enumerate_posets(3):
        assert is_meet_continuous(P).holds == brute_meet_continuous(P)
        assert is_meet_continuous(P, literal=True).holds == brute_meet_continuous(P, literal=True)


def test_meet_continuity_failure_reports_witness(p3):
    rep = is_meet_continuous(p3)
    assert not rep.holds and rep.witnesses
    assert "x" in rep.witnesses[0] and "subset" in rep.witnesses[0]


def test_condition_star(p3, singleton):
    assert condition_star(singleton).holds
    for k in (1, 3):
        assert condition_star(chain_poset(k)).holds
    both = is_meet_continuous(p3).holds and is_meet_continuous(p3.opposite()).holds
    assert condition_star(p3).holds == both


# -- type invariants ---------------------------------------------------------------


def test_poset_rejects_bad_relation():
    with pytest.raises(ValueError):
        Poset((0, 3), ("a", "b"))  # not reflexive at 0
    with pytest.raises(ValueError):
        Poset((3, 2, 4), ("a", "b"))  # size mismatch
    with pytest.raises(CycleError):
        Poset((3, 3), ("a", "b"))  # two-cycle


def test_mask_helpers(p3):
    assert mask_of([0, 2]) == 5
    assert p3.label_list(5) == ["a", "c"]
    with pytest.raises(ParseError):
        p3.mask_from_labels(["nope"])


def test_failing_report_requires_witnesses():
    from convlab.report import PropertyReport

    with pytest.raises(ValueError):
        PropertyReport("x", False)
    rep = PropertyReport("x", False, witnesses=({"why": "because"},))
    assert rep.to_json()["witnesses"] == [{"why": "because"}]
