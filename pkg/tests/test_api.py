import math

from fastapi.testclient import TestClient
import pytest

from molex.main import app
from molex.services.graph_core import canonical_key
from molex.services.graph_io import from_graph6, to_graph6

client = TestClient(app)


def _edges(G):
    return {"n": G.n, "edges": [[u, v] for u in range(G.n) for v in G.adjacency[u] if u < v]}


def test_health():
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_index_from_graph6(k14):
    response = client.post("/indices", json={
        "graph": {"graph6": to_graph6(k14)},
        "spec": {"kind": "chi", "parameter": -0.5},
    })
    assert response.status_code == 200
    assert response.json()["value"] == pytest.approx(4 / math.sqrt(5))


def test_index_from_edge_list(p5):
    response = client.post("/indices", json={"graph": _edges(p5), "spec": {"kind": "m1"}})
    assert response.status_code == 200
    body = response.json()
    assert body["value"] == 14
    assert body["graph6"] == to_graph6(p5)


def test_invalid_graph_is_a_bad_request():
    response = client.post("/indices", json={
        "graph": {"n": 3, "edges": [[0, 0]]},
        "spec": {"kind": "m1"},
    })
    assert response.status_code == 400
    assert "Invalid graph" in response.json()["detail"]
    response = client.post("/indices", json={"graph": {"graph6": "!!!"}, "spec": {"kind": "m1"}})
    assert response.status_code == 400


def test_undefined_term_is_a_bad_request():
    response = client.post("/indices", json={
        "graph": {"n": 2, "edges": [[0, 1]]},
        "spec": {"kind": "platt", "parameter": -1.0},
    })
    assert response.status_code == 400


def test_missing_parameter_is_a_validation_error(p5):
    response = client.post("/indices", json={"graph": _edges(p5), "spec": {"kind": "chi"}})
    assert response.status_code == 422
    response = client.post("/indices", json={"graph": {"n": 5}, "spec": {"kind": "m1"}})
    assert response.status_code == 422


def test_coefficients():
    response = client.get("/coefficients/chi", params={"parameter": 1.0})
    assert response.status_code == 200
    assert response.json()["values"]["2,3"] == pytest.approx(-5 / 3)
    assert client.get("/coefficients/chi").status_code == 422
    assert client.get("/coefficients/zagreb", params={"parameter": 1.0}).status_code == 422


def test_verdict_of_cycle(c6):
    response = client.post("/bounds/verdict", json={
        "graph": {"graph6": to_graph6(c6)},
        "variant": "chi",
        "parameter": -0.5,
    })
    assert response.status_code == 200
    body = response.json()
    assert body["gap"] == pytest.approx(0.5040388368136206, abs=1e-12)
    assert body["case"]["residue"] == 0
    assert body["case"]["direction"] == "lower"
    assert not body["equality"]


def test_verdict_platt_alpha_one_is_unsupported(p5):
    response = client.post("/bounds/verdict", json={"graph": _edges(p5), "variant": "platt", "parameter": 1.0})
    assert response.status_code == 400
    assert "alpha = 1" in response.json()["detail"]


def test_verdict_leading_form_at_alpha_one(p5):
    response = client.post("/bounds/verdict", json={
        "graph": _edges(p5), "variant": "platt", "parameter": 1.0, "form": "leading",
    })
    assert response.status_code == 200
    assert response.json()["gap"] == 8 * 4 - 4 * 5 - 6


def test_verdict_rejects_disconnected_graphs(two_triangles):
    response = client.post("/bounds/verdict", json={
        "graph": _edges(two_triangles), "variant": "chi", "parameter": -0.5,
    })
    assert response.status_code == 400
    assert "connected" in response.json()["detail"]


def test_extremal_hub_tree(hub_tree):
    response = client.post("/extremal", json={"n": 13, "m": 12, "variant": "chi", "parameter": -0.5})
    assert response.status_code == 200
    body = response.json()
    assert body["feasible"]
    assert canonical_key(from_graph6(body["graph6"])) == canonical_key(hub_tree)
    assert body["report"]["equality"]


def test_extremal_infeasible_case():
    response = client.post("/extremal", json={"n": 7, "m": 6, "variant": "chi", "parameter": -0.5})
    assert response.status_code == 200
    body = response.json()
    assert not body["feasible"]
    assert "x_3,4" in body["reason"]
    assert body["graph6"] is None


def test_extremal_request_validation():
    assert client.post("/extremal", json={"n": 4, "m": 3, "variant": "chi", "parameter": -0.5}).status_code == 422
    response = client.post("/extremal", json={"n": 6, "m": 5, "variant": "chi", "parameter": 0.0})
    assert response.status_code == 400
    response = client.post("/extremal", json={"n": 6, "m": 30, "variant": "chi", "parameter": -0.5})
    assert response.status_code == 400


def test_platt_root():
    response = client.get("/lemmas/platt-root")
    assert response.status_code == 200
    assert response.json()["x0"] == pytest.approx(1.8509424119862663, abs=1e-9)
