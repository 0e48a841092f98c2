import pytest
from fastapi.testclient import TestClient

from convlab import __version__
from convlab.service.app import create_app

P3 = "elements: a b c; order: a<c b<c"


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok", "version": __version__}


def test_poset_parse(client):
    r = client.post("/poset/parse", json={"poset": P3})
    assert r.status_code == 200
    body = r.json()
    assert body["elements"] == ["a", "b", "c"]
    assert sorted(map(tuple, body["covers"])) == [("a", "c"), ("b", "c")]
    assert "digraph" in body["dot"]
    assert body["dsl"] == P3


def test_poset_parse_errors(client):
    assert client.post("/poset/parse", json={"poset": "elements: p q; order: p<q q<p"}).status_code == 400
    assert client.post("/poset/parse", json={"poset": "garbage"}).status_code == 400
    assert client.post("/poset/parse", json={}).status_code == 422


def test_analyze(client):
    r = client.post("/analyze", json={"poset": P3, "selection": "ACh"})
    assert r.status_code == 200
    body = r.json()
    assert body["verdicts"]["m_continuous"]["holds"] is True
    assert body["verdicts"]["alpha_m_continuous"]["holds"] is False
    assert body["reports"]["aux_way_below"]["holds"] is True
    assert body["poset_properties"]["continuous"] is True
    assert body["violations"] is False
    assert ["a", "c"] in body["relations"]["way_below"]["pairs"]


def test_analyze_with_mn(client):
    r = client.post("/analyze", json={"poset": P3, "selection": "Dir", "mn": "Filt"})
    body = r.json()
    assert r.status_code == 200
    assert body["verdicts"]["mn_continuous"]["holds"] is True
    assert body["reports"]["aux_mn"]["holds"] is True
    assert body["mn_family"]["selection"] == "Filt"


def test_analyze_unknown_selection(client):
    assert client.post("/analyze", json={"poset": P3, "selection": "zzz"}).status_code == 400


def test_topology(client):
    r = client.post("/topology", json={"poset": P3, "selection": "Dir"})
    body = r.json()
    assert body["equals_alexandrov"] and body["equals_scott"]
    assert len(body["topology"]["opens"]) == 5
    r2 = client.post("/topology", json={"poset": P3, "selection": "Dir", "mn": "Filt"})
    assert r2.json()["discrete"] is True


def test_converge(client):
    net = {"index_rel": [[1, 1, 1], [0, 1, 1], [0, 0, 1]], "values": ["a", "b", "c"]}
    r = client.post(
        "/converge",
        json={"poset": P3, "net": net, "selection": "Dir", "mn": "Filt", "limit": "c"},
    )
    body = r.json()
    assert body["converges"] and body["tau_converges"]
    assert body["limits"] == ["c"]
    r2 = client.post(
        "/converge",
        json={"poset": P3, "net": net, "selection": "ACh", "limit": "a"},
    )
    assert r2.json()["converges"] is True  # one-sided limits are down-closed


def test_converge_bad_net(client):
    r = client.post(
        "/converge",
        json={"poset": P3, "net": {"index_rel": [[1, 0], [0, 1]], "values": ["a", "a"]},
              "selection": "Dir", "limit": "a"},
    )
    assert r.status_code == 400
    r2 = client.post(
        "/converge",
        json={"poset": P3, "net": {"index_rel": [[1]], "values": ["a"]},
              "selection": "Dir", "limit": "zz"},
    )
    assert r2.status_code == 400


def test_mine_endpoint(client):
    r = client.post(
        "/mine",
        json={"n_max": 2, "selections": ["ACh"], "properties": ["m_cts", "alpha_m_cts"]},
    )
    body = r.json()
    assert r.status_code == 200
    assert body["schema"] == 1
    assert body["matrix"]["m_cts=>alpha_m_cts"]["status"] == "counterexample"
    assert client.post("/mine", json={"n_max": 2, "properties": ["bogus"]}).status_code == 400


def test_paper_example_endpoint(client):
    r = client.get("/paper-example")
    body = r.json()
    assert r.status_code == 200
    assert body["match"] is True
    assert body["computed"]["members"] == [["a"], ["b"], ["c"], ["a", "b"]]


def test_enumerate_endpoint(client):
    r = client.get("/enumerate", params={"n": 3})
    body = r.json()
    assert body["count"] == 19 and len(body["posets"]) == 19
    r2 = client.get("/enumerate", params={"n": 3, "unlabeled": True})
    assert r2.json()["count"] == 5
    assert client.get("/enumerate", params={"n": 99}).status_code == 400
