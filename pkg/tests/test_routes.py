# tests/test_routes.py
import pytest
from fastapi.testclient import TestClient

from app.main import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    res = client.get("/health")
    assert res.status_code == 200
    assert res.json() == {"status": "ok"}


def test_weights(client):
    names = [w["name"] for w in client.get("/weights").json()["weights"]]
    assert {"w1", "w2", "w3", "w4", "w5", "w6", "w7"} <= set(names)


def test_points(client):
    body = client.get("/points", params={"weight": "w2", "n": 7}).json()
    assert body["status"] == "success"
    assert len(body["points"]) == 7
    assert body["energy_report"]["n"] == 7


def test_unknown_weight_is_a_bad_request(client):
    res = client.get("/points", params={"weight": "nope", "n": 7})
    assert res.status_code == 400
    assert "w1" in res.json()["detail"]


def test_errors(client):
    body = client.get("/errors", params={"function": "f1", "n_list": "9,17"}).json()
    assert body["weight"] == "w1"
    assert [row["n"] for row in body["rows"]] == [9, 17]
    assert {"err_I", "err_II", "certificate"} <= set(body["rows"][0])
    assert "err_sinc" not in body["rows"][0]


def test_compare_sinc(client):
    body = client.get("/compare-sinc", params={"function": "f4", "n_list": "9"}).json()
    assert body["rows"][0]["err_sinc"] > 0


def test_compare_sinc_mismatch(client):
    res = client.get("/compare-sinc", params={"function": "f4", "weight": "w5", "n_list": "9"})
    assert res.status_code == 400


def test_compare_sinc_rejects_the_weight_itself(client):
    res = client.get("/compare-sinc", params={"function": "weight-itself", "weight": "w4", "n_list": "9"})
    assert res.status_code == 400
    assert "f4" in res.json()["detail"]


def test_diag(client):
    body = client.get("/diag", params={"weight": "w2", "n": 9}).json()
    assert body["lower_bound"]["passed"] is True
    assert body["appendix"]["applicable"] is True
    appendix = body["appendix"]
    assert appendix["t_bound_sum"] - appendix["t_bound_sum_stated"] == pytest.approx(10.0)


def test_diag_quad_order_is_bounded(client):
    res = client.get("/diag", params={"weight": "w2", "n": 9, "quad_order": 200})
    assert res.status_code == 400


def test_numerical_failure_is_unprocessable(client, monkeypatch):
    import app.services.experiment_service as experiment_service

    monkeypatch.setattr(experiment_service, "DEFAULT_MAX_ITER", 1)
    res = client.get("/points", params={"weight": "w4", "n": 33})
    assert res.status_code == 422
