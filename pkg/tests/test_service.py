"""HTTP surface: request/response models, status mapping, wire exactness."""

from fractions import Fraction as F

import pytest
from fastapi.testclient import TestClient

from hyperfrac.addressing import cantor_cover
from hyperfrac.intervals import cover_from_text, cover_to_text
from hyperfrac.service.app import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


DECIMAL_IFS = "ifs v1 strictness=strict\naffine 1/10 0/1\naffine 1/10 9/10\n"
HALVES_IFS = "ifs v1 strictness=strict\naffine 1/2 0/1\naffine 1/2 1/2\n"
SATURATING_IFS = "ifs v1 strictness=weak\nparam saturating 1/1\n"


class TestHealth:
    def test_health(self, client):
        assert client.get("/health").json() == {"status": "ok"}


class TestAttractor:
    def test_decimal(self, client):
        response = client.post(
            "/attractor", json={"ifs_text": DECIMAL_IFS, "tolerance": "1/1000000"}
        )
        assert response.status_code == 200
        body = response.json()
        assert body["iterations"] == 6
        assert body["certified"] is True
        assert body["error_bound"] == "1/2250000"
        cover, _ = cover_from_text(body["cover_text"])
        assert cover.intervals == cantor_cover(6).intervals

    def test_fixed_point(self, client):
        response = client.post(
            "/attractor", json={"ifs_text": HALVES_IFS, "tolerance": "1/1000"}
        )
        body = response.json()
        assert body["iterations"] == 1 and body["error_bound"] == "0/1"

    def test_weak_heuristic_flag(self, client):
        response = client.post(
            "/attractor", json={"ifs_text": SATURATING_IFS, "tolerance": "1/100"}
        )
        body = response.json()
        assert body["certified"] is False

    def test_parse_error_is_400(self, client):
        response = client.post(
            "/attractor", json={"ifs_text": "not an ifs", "tolerance": "1/10"}
        )
        assert response.status_code == 400

    def test_cap_exceeded_is_409(self, client):
        response = client.post(
            "/attractor",
            json={"ifs_text": SATURATING_IFS, "tolerance": "1/1000000000", "cap": 5},
        )
        assert response.status_code == 409


class TestReduce:
    def test_empty_gridset(self, client):
        response = client.post(
            "/reduce",
            json={"gridset_text": "gridset v1 default=empty\n", "levels": 1, "depth": 4},
        )
        assert response.status_code == 200
        body = response.json()
        cover, _ = cover_from_text(body["cover_text"])
        assert cover.support_max == 1
        assert "sectionplan v1 levels=2" in body["plan_text"]

    def test_level_cap_is_409(self, client):
        response = client.post(
            "/reduce",
            json={"gridset_text": "gridset v1 default=empty\n", "levels": 4, "depth": 4},
        )
        assert response.status_code == 409

    def test_parse_error_is_400(self, client):
        response = client.post(
            "/reduce", json={"gridset_text": "gridset v9\n", "levels": 1, "depth": 4}
        )
        assert response.status_code == 400


class TestHausdorff:
    def test_known_distance(self, client):
        response = client.post(
            "/hausdorff",
            json={
                "cover_a": cover_to_text(cantor_cover(1)),
                "cover_b": cover_to_text(cantor_cover(0)),
            },
        )
        body = response.json()
        assert body["distance"] == "2/5"
        # resolutions 1/10 and 1/1 combine into the ideal-distance caveat
        assert body["ideal_within"] == "11/10"

    def test_identical(self, client):
        text = cover_to_text(cantor_cover(2))
        response = client.post("/hausdorff", json={"cover_a": text, "cover_b": text})
        assert response.json()["distance"] == "0/1"


class TestRender:
    def test_svg(self, client):
        response = client.post(
            "/render", json={"cover_text": cover_to_text(cantor_cover(3))}
        )
        assert response.status_code == 200
        svg = response.json()["svg"]
        assert svg.count("<rect") == 8

    def test_embed_dim_from_file_header(self, client):
        text = cover_to_text(cantor_cover(1), embed_dim=2)
        response = client.post("/render", json={"cover_text": text})
        assert "embed_dim=2" in response.json()["svg"]


class TestVerify:
    def test_named_suite(self, client):
        response = client.post(
            "/verify", json={"suite": "addressing", "options": {"maxlen": 5}}
        )
        body = response.json()
        assert body["all_passed"] is True
        assert any("lex-order-len5" in line["name"] for line in body["lines"])

    def test_unknown_suite_is_400(self, client):
        assert client.post("/verify", json={"suite": "nope"}).status_code == 400

    def test_options_are_filtered_per_suite(self, client):
        # seed/maxlen are irrelevant to the gaps suite and must not break it
        response = client.post(
            "/verify", json={"suite": "gaps", "options": {"maxlen": 4, "seed": 1}}
        )
        assert response.status_code == 200
        assert response.json()["all_passed"] is True
