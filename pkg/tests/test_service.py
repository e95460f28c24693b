"""HTTP surface: every endpoint, plus the tagged error mapping."""

import pytest
from fastapi.testclient import TestClient

from weyldim.service.app import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def test_health(client):
    body = client.get("/v1/health").json()
    assert body["status"] == "ok"
    assert body["version"]


def test_normalize(client):
    r = client.post("/v1/normalize", json={"n": 1, "expr": "d1^2 * x1^2"})
    assert r.status_code == 200
    body = r.json()
    assert body["normal_form"] == "x1^2*d1^2 + 4*x1*d1 + 2"
    assert body["term_count"] == 3
    assert body["bernstein_degree"] == 4
    assert body["order_degree"] == 2


def test_normalize_zero_degrees_are_null(client):
    body = client.post("/v1/normalize", json={"n": 1, "expr": "x1 - x1"}).json()
    assert body["normal_form"] == "0"
    assert body["bernstein_degree"] is None
    assert body["order_degree"] is None


def test_normalize_truncation(client):
    body = client.post(
        "/v1/normalize", json={"n": 1, "expr": "d1^2 * x1^2", "trunc": 1}
    ).json()
    assert body["normal_form"] == "4*x1*d1 + 2"


def test_apply(client):
    r = client.post("/v1/apply", json={"n": 1, "op": "d1^2", "poly": "x1^3 + x1"})
    assert r.json()["result"] == "6*x1"


def test_parse_error_tagged(client):
    r = client.post("/v1/normalize", json={"n": 1, "expr": "d1 +* x1"})
    assert r.status_code == 422
    body = r.json()
    assert body["error"] == "parse_error"
    assert "column 5" in body["message"]


def test_usage_error_tagged(client):
    r = client.post("/v1/apply", json={"n": 1, "op": "d1", "poly": "d1"})
    assert r.status_code == 422
    assert r.json()["error"] == "parse_error"


def test_dim_pass(client):
    r = client.post("/v1/dim", json={"n": 2, "generators": ["d1 - d2^2"]})
    body = r.json()
    assert r.status_code == 200
    assert body["degree"] == 3
    assert body["multiplicity"] == "2"
    assert body["verdict"] == "PASS"
    assert body["stabilized"] is True
    assert body["samples"][0] == [0, 1]
    assert all(isinstance(c, str) for c in body["binomial_coeffs"])


def test_dim_zero_module_tagged(client):
    r = client.post("/v1/dim", json={"n": 1, "generators": ["1"]})
    assert r.status_code == 422
    assert r.json()["error"] == "zero_module"


def test_dim_inconclusive_tagged(client):
    r = client.post(
        "/v1/dim", json={"n": 2, "generators": ["d1 - d2^2"], "budget": 3}
    )
    assert r.status_code == 422
    assert r.json()["error"] == "inconclusive"


def test_validation_error_is_422(client):
    r = client.post("/v1/normalize", json={"n": 0, "expr": "x1"})
    assert r.status_code == 422


def test_check_eq1(client):
    r = client.post("/v1/check", json={"suite": "eq1", "cases": 25, "seed": 7})
    body = r.json()
    assert body["passed"] and body["passed_count"] == 25
    assert body["reports"] == []  # only failures are itemized for eq1
    assert body["seed"] == 7


def test_check_eq2_single_point(client):
    r = client.post(
        "/v1/check", json={"suite": "eq2", "n": 1, "f": "x1^2 - 2", "s": 3, "t": 1}
    )
    body = r.json()
    assert body["cases"] == 1 and body["passed"]
    assert body["reports"][0]["identity"] == "vanishing"


def test_check_eq3_and_eq4(client):
    for suite in ("eq3", "eq4"):
        r = client.post("/v1/check", json={"suite": suite, "n": 1, "f": "x1^3 + x1 + 1"})
        body = r.json()
        assert body["passed"], suite
        assert body["failed_count"] == 0


def test_check_independence(client):
    r = client.post("/v1/check", json={"suite": "independence", "n": 2, "h": 2, "t": 3})
    body = r.json()
    assert body["passed"]
    assert body["detail"]["rank"] == body["detail"]["expected"] == 10


def test_check_submodule(client):
    r = client.post(
        "/v1/check",
        json={"suite": "submodule", "n": 2, "generators": ["d1", "d2"], "p": "x1^2"},
    )
    body = r.json()
    assert body["passed"]
    assert body["detail"]["d_sub"] <= body["detail"]["d_full"]


def test_check_missing_f_is_usage_error(client):
    r = client.post("/v1/check", json={"suite": "eq2", "n": 1})
    assert r.status_code == 422
    assert r.json()["error"] == "usage_error"


def test_compare(client):
    r = client.post(
        "/v1/compare",
        json={
            "n": 2,
            "generators": ["d1", "d2"],
            "specs": [
                {"generators": ["1"]},
                {"generators": ["1", "x1"], "shifts": [0, 0]},
            ],
            "t_max": 6,
        },
    )
    body = r.json()
    assert body["w"] == 1
    assert body["degrees"] == [2, 2]
    assert body["equal_degrees"] is True
    assert body["stabilized"] is True


def test_compare_rejects_single_spec(client):
    r = client.post(
        "/v1/compare",
        json={"n": 1, "generators": ["d1"], "specs": [{"generators": ["1"]}]},
    )
    assert r.status_code == 422


def test_corpus_endpoint(client):
    r = client.post(
        "/v1/corpus",
        json={
            "entries": [
                {"name": "poly", "n": 1, "generators": ["d1"], "expect_d": 1},
                {"name": "free", "n": 1, "generators": [], "expect_d": 2},
                {"name": "bad", "n": 1, "generators": ["d1"], "expect_d": 2},
            ]
        },
    )
    body = r.json()
    assert r.status_code == 200
    assert body["passed"] is False
    assert body["failure_count"] == 1
    rows = {row["name"]: row for row in body["rows"]}
    assert rows["poly"]["verdict"] == "pass"
    assert rows["bad"]["verdict"] == "fail"
    assert rows["free"]["d"] == 2
    assert all("runtime" in row for row in body["rows"])


def test_corpus_rejects_empty(client):
    r = client.post("/v1/corpus", json={"entries": []})
    assert r.status_code == 422
