import pytest
from unittest.mock import Mock, patch
from fastapi.testclient import TestClient
from mahonia.main import app
from mahonia.dependencies import get_distribution_service, get_verifier_service

client = TestClient(app)


@pytest.fixture(autouse=True)
def isolated_services(distribution_service, verifier_service):
    """Route the API through services whose cache lives in tmp_path"""
    app.dependency_overrides[get_distribution_service] = lambda: distribution_service
    app.dependency_overrides[get_verifier_service] = lambda: verifier_service
    yield
    app.dependency_overrides.clear()


class TestHealthEndpoint:
    """Tests for the health check"""

    def test_healthy(self, distribution_service):
        with patch("mahonia.main.get_distribution_service", return_value=distribution_service):
            response = client.get("/")
        assert response.status_code == 200
        data = response.json()
        assert data["status"] == "healthy"
        assert data["cache_writable"] is True

    def test_degraded(self):
        broken = Mock()
        broken.is_writable.side_effect = OSError("read-only file system")
        with patch("mahonia.main.get_distribution_service", return_value=broken):
            response = client.get("/")
        assert response.status_code == 200
        assert response.json()["status"] == "degraded"


class TestDistributionEndpoint:
    """Tests for the distribution endpoint"""

    def test_distribution(self):
        response = client.post("/distribution", json={"stat": "maj", "avoid": "231", "n": 3})
        assert response.status_code == 200
        data = response.json()
        assert data["coefficients"] == [1, 2, 1, 1]
        assert data["avoid"] == "231"
        assert data["refined"] is None

    def test_refined(self):
        response = client.post("/distribution", json={"stat": "maj", "n": 2, "marks": ["des"]})
        assert response.status_code == 200
        terms = response.json()["refined"]
        assert sum(t["coefficient"] for t in terms) == 2

    def test_unknown_statistic(self):
        response = client.post("/distribution", json={"stat": "nosuchstat", "n": 3})
        assert response.status_code == 400

    def test_bad_pattern(self):
        response = client.post("/distribution", json={"stat": "maj", "avoid": "2<3", "n": 3})
        assert response.status_code == 400

    def test_size_limit(self):
        response = client.post("/distribution", json={"stat": "maj", "n": 50})
        assert response.status_code == 400
        assert "CLI" in response.json()["detail"]

    def test_missing_fields(self):
        response = client.post("/distribution", json={"avoid": "231"})
        assert response.status_code == 422


class TestEquidistributionEndpoint:
    """Tests for the equidistribution endpoint"""

    def test_holds(self):
        response = client.post("/equidistribution", json={
            "stat1": "maj", "avoid1": "231", "stat2": "den", "avoid2": "321", "max_n": 5
        })
        assert response.status_code == 200
        data = response.json()
        assert data["holds"] is True
        assert len(data["verdicts"]) == 5

    def test_disagreement(self):
        response = client.post("/equidistribution", json={
            "stat1": "maj", "avoid1": "132", "stat2": "inv", "avoid2": "132", "max_n": 4
        })
        data = response.json()
        assert data["holds"] is False
        assert data["first_disagreement"] == 3


class TestMapEndpoint:
    """Tests for the bijection endpoints"""

    def test_list(self):
        response = client.get("/map")
        assert response.status_code == 200
        names = {entry["name"] for entry in response.json()}
        assert {"phi321", "gamma", "omega"} <= names

    def test_apply(self):
        response = client.post("/map", json={"name": "phi321", "input": "341625978"})
        assert response.status_code == 200
        assert response.json()["output"] == "415623897"

    def test_wrong_class(self):
        response = client.post("/map", json={"name": "phi321", "input": "321"})
        assert response.status_code == 400

    def test_unknown_map(self):
        response = client.post("/map", json={"name": "nope", "input": "12"})
        assert response.status_code == 400

    def test_size_limit(self):
        response = client.post("/map", json={"name": "omega", "input": "U" * 10 + "D" * 10, "inverse": True})
        assert response.status_code == 400
        assert "CLI" in response.json()["detail"]
        response = client.post("/map", json={"name": "phi321", "input": ",".join(str(i) for i in range(1, 11))})
        assert response.status_code == 400

    def test_omega_inverse(self):
        response = client.post("/map", json={"name": "omega", "input": "UDUUDD", "inverse": True})
        assert response.status_code == 200
        assert response.json()["output"] == "213"


class TestSeriesEndpoints:
    """Tests for continued fractions and the 312 generating polynomial"""

    def test_continued_fraction(self):
        response = client.get("/cf/cfrak2", params={"order": 2})
        assert response.status_code == 200
        data = response.json()
        assert data["series"] == "1 + z + (1 + q)z^2"
        assert data["coefficients"] == [[1], [1], [1, 1]]

    def test_unknown_fraction(self):
        response = client.get("/cf/cfrak9")
        assert response.status_code == 400

    def test_order_bounds(self):
        response = client.get("/cf/cfrak1", params={"order": 99})
        assert response.status_code == 422

    def test_genfunc_zero_statistic(self):
        response = client.post("/genfunc", json={"alpha": [0] * 13, "n": 3})
        assert response.status_code == 200
        data = response.json()
        assert data["q_marginal"] == {"0": 5}
        assert data["extension"] is False

    def test_genfunc_bad_alpha(self):
        response = client.post("/genfunc", json={"alpha": [1, 2, 3], "n": 3})
        assert response.status_code == 400
