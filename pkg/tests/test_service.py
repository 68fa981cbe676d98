"""HTTP surface: endpoints, schemas, and error-code mapping."""

import numpy as np
import pytest
from fastapi.testclient import TestClient

from conftest import BIMATRIX_A, BIMATRIX_B, HAWK_DOVE, HAWK_DOVE_SIGMA, THREE_TYPE
from safegames.service import create_app


@pytest.fixture(scope="module")
def client() -> TestClient:
    return TestClient(create_app(), raise_server_exceptions=False)


BIMATRIX_PAYLOAD = {"A": BIMATRIX_A.tolist(), "B": BIMATRIX_B.tolist()}
HAWK_DOVE_PAYLOAD = {"A": HAWK_DOVE.tolist()}


class TestHealth:
    def test_healthz(self, client):
        response = client.get("/healthz")
        assert response.status_code == 200
        assert response.json()["status"] == "ok"


class TestMaximinEndpoint:
    def test_column_side(self, client):
        response = client.post(
            "/maximin", json={"game": BIMATRIX_PAYLOAD, "side": "column"}
        )
        assert response.status_code == 200
        body = response.json()
        assert body["value"] == pytest.approx(-33.479, abs=0.01)
        assert min(body["portfolio"]) == pytest.approx(body["value"], abs=1e-6)

    def test_row_side(self, client):
        response = client.post("/maximin", json={"game": BIMATRIX_PAYLOAD, "side": "row"})
        assert response.json()["value"] == pytest.approx(28.0, abs=1e-6)

    def test_unknown_field_rejected(self, client):
        response = client.post(
            "/maximin", json={"game": BIMATRIX_PAYLOAD, "side": "column", "oops": 1}
        )
        assert response.status_code == 422


class TestMaliceEndpoints:
    def test_defend_with_theta(self, client):
        response = client.post(
            "/malice/defend", json={"game": BIMATRIX_PAYLOAD, "side": "row", "theta": 0.22}
        )
        assert response.status_code == 200
        body = response.json()
        assert body["phi"] == pytest.approx(-53.9, abs=0.05)
        assert body["value"] == pytest.approx(-31.73, abs=0.02)
        assert np.allclose(body["strategy"]["weights"], [0.54, 0.0, 0.46], atol=0.01)

    def test_attack_matches_defend(self, client):
        defend = client.post(
            "/malice/defend", json={"game": BIMATRIX_PAYLOAD, "theta": 0.22}
        ).json()
        attack = client.post(
            "/malice/attack", json={"game": BIMATRIX_PAYLOAD, "theta": 0.22}
        ).json()
        assert attack["value_cap"] == pytest.approx(defend["value"], abs=1e-6)

    def test_requires_exactly_one_of_theta_phi(self, client):
        response = client.post(
            "/malice/defend", json={"game": BIMATRIX_PAYLOAD, "theta": 0.2, "phi": -50.0}
        )
        assert response.status_code == 422

    def test_unattainable_phi_is_conflict(self, client):
        response = client.post(
            "/malice/defend", json={"game": BIMATRIX_PAYLOAD, "phi": 40.0}
        )
        assert response.status_code == 409
        assert response.json()["error"]["code"] == "infeasible"


class TestSafeSpaceEndpoint:
    def test_single_threshold(self, client):
        response = client.post(
            "/safe-space", json={"game": HAWK_DOVE_PAYLOAD, "phi": 10.0}
        )
        assert response.status_code == 200
        body = response.json()
        assert body["maximin_value"] == pytest.approx(15.0, abs=1e-9)
        full = next(s for s in body["slices"] if s["support"] == [0, 1])
        xs = sorted(v[0] for v in full["vertices"])
        assert xs == pytest.approx([0.0, 0.5], abs=1e-7)

    def test_grid_sweep_stops_at_maximin(self, client):
        response = client.post(
            "/safe-space", json={"game": {"A": THREE_TYPE.tolist()}, "grid": 11}
        )
        body = response.json()
        assert len(body["phi_values"]) == 11
        assert body["phi_values"][-1] == pytest.approx(body["maximin_value"], abs=1e-9)
        assert all(s["vertices"] for s in body["slices"])

    def test_non_square_rejected(self, client):
        response = client.post(
            "/safe-space", json={"game": BIMATRIX_PAYLOAD, "phi": 0.0}
        )
        assert response.status_code == 422
        assert response.json()["error"]["code"] == "input"


class TestBoundaryEndpoint:
    def test_explicit_thresholds(self, client):
        response = client.post(
            "/boundary-sweep",
            json={"game": HAWK_DOVE_PAYLOAD, "phi_values": [0.0, 12.0, 16.0]},
        )
        points = response.json()["points"]
        assert points[0]["x_max"] == pytest.approx(45.0 / 70.0, abs=1e-9)
        assert points[1]["x_max"] == pytest.approx(0.3, abs=1e-9)
        assert points[2]["x_max"] is None

    def test_non_2x2_rejected(self, client):
        response = client.post(
            "/boundary-sweep", json={"game": {"A": THREE_TYPE.tolist()}, "grid": 5}
        )
        assert response.status_code == 422


class TestSimulateEndpoint:
    def test_deterministic_run(self, client):
        response = client.post(
            "/simulate",
            json={
                "game": HAWK_DOVE_PAYLOAD,
                "population": 100,
                "phi": 16.0,
                "seed": 3,
            },
        )
        body = response.json()
        assert body["outcome"] == "extinction"
        assert body["final_state"]["support"] == []
        assert body["seed"] == 3

    def test_stochastic_needs_sigma(self, client):
        response = client.post(
            "/simulate",
            json={
                "game": HAWK_DOVE_PAYLOAD,
                "population": 100,
                "phi": 5.0,
                "mode": "stochastic",
                "seed": 3,
            },
        )
        assert response.status_code == 422

    def test_stochastic_run_reports_trajectory(self, client):
        response = client.post(
            "/simulate",
            json={
                "game": HAWK_DOVE_PAYLOAD,
                "population": 64,
                "phi": 5.0,
                "mode": "stochastic",
                "seed": 3,
                "sigma": HAWK_DOVE_SIGMA.tolist(),
                "max_rounds": 50,
            },
        )
        body = response.json()
        assert len(body["trajectory"]) == len(body["mean_fitness"])
        assert len(body["trajectory"]) >= 2

    def test_missing_seed_gets_recorded(self, client):
        response = client.post(
            "/simulate",
            json={"game": HAWK_DOVE_PAYLOAD, "population": 50, "phi": 0.0},
        )
        assert response.status_code == 200
        assert isinstance(response.json()["seed"], int)
