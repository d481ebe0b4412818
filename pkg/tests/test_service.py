import hashlib
import json
from concurrent.futures import ThreadPoolExecutor

import pytest
from fastapi.testclient import TestClient

from greenroute.cli import main
from greenroute.service import create_app, create_app_from_path
from greenroute.store import load_apsp, save_apsp

from helpers import five_node_bundle
from test_cli import split_archive, triangle_archive


@pytest.fixture(scope="module")
def five_archive(tmp_path_factory):
    apsp, graph, network, node_gvis = five_node_bundle()
    path = tmp_path_factory.mktemp("svc") / "five.gvip"
    save_apsp(apsp, graph, network, node_gvis, path, build_timestamp=77)
    return path


@pytest.fixture(scope="module")
def client(five_archive):
    return TestClient(create_app_from_path(str(five_archive)))


class TestHealth:
    def test_loaded(self, client):
        body = client.get("/health").json()
        assert body["status"] == "ok"
        assert body["n"] == 5
        assert body["build_timestamp"] == 77

    def test_empty(self):
        empty = TestClient(create_app(None))
        assert empty.get("/health").json() == {"status": "empty"}

    def test_health_isolated_from_bad_route(self, client):
        assert client.get("/route").status_code == 400
        assert client.get("/health").status_code == 200


class TestNodes:
    def test_five_entries(self, client):
        body = client.get("/nodes").json()
        assert len(body) == 5
        assert {entry["id"] for entry in body} == {"A", "B", "C", "D", 7}

    def test_low_band_payload(self, client):
        body = client.get("/nodes").json()
        a = next(entry for entry in body if entry["id"] == "A")
        assert a["gvi_avg"] == 7.47
        assert a["band"] == "Low"

    def test_ordering_stable(self, client):
        first = client.get("/nodes").text
        second = client.get("/nodes").text
        assert first == second

    def test_empty_503(self):
        empty = TestClient(create_app(None))
        assert empty.get("/nodes").status_code == 503


class TestRoute:
    def test_triangle_average(self, tmp_path):
        archive = triangle_archive(tmp_path / "tri.gvip")
        client = TestClient(create_app(load_apsp(archive)))
        response = client.get("/route", params={"from": "A", "to": "C"})
        assert response.status_code == 200
        assert response.headers["content-type"].startswith("application/geo+json")
        body = response.json()
        assert body["summary"]["avg_gvi"] == 80.0
        assert body["summary"]["nodes"] == ["A", "B", "C"]
        assert body["summary"]["node_count"] == 3

    def test_swap_symmetry(self, tmp_path):
        archive = triangle_archive(tmp_path / "tri.gvip")
        client = TestClient(create_app(load_apsp(archive)))
        forward = client.get("/route", params={"from": "A", "to": "C"}).json()
        backward = client.get("/route", params={"from": "C", "to": "A"}).json()
        assert forward["summary"]["avg_gvi"] == backward["summary"]["avg_gvi"]

    def test_same_node_400(self, client):
        assert client.get("/route", params={"from": "A", "to": "A"}).status_code == 400

    def test_missing_params_400(self, client):
        assert client.get("/route").status_code == 400
        assert client.get("/route", params={"from": "A"}).status_code == 400

    def test_unknown_node_404(self, client):
        response = client.get("/route", params={"from": "A", "to": "ZZZ"})
        assert response.status_code == 404
        assert response.json()["code"] == "unknown_node"

    def test_no_path_409(self, tmp_path):
        archive = split_archive(tmp_path / "split.gvip")
        client = TestClient(create_app(load_apsp(archive)))
        response = client.get("/route", params={"from": "A", "to": "C"})
        assert response.status_code == 409
        assert response.json()["code"] == "no_path"


class TestStats:
    def test_band_document(self, client):
        # node averages 7.47, 12, 20.5, 31, 55.25 -> one per low band, two satisfied
        body = client.get("/stats").json()
        assert body["total"] == 5
        by_name = {row["band"]: row for row in body["bands"]}
        assert by_name["Low"]["count"] == 1
        assert by_name["Moderate"]["count"] == 1
        assert by_name["Good"]["count"] == 1
        assert by_name["Satisfied"]["count"] == 2
        assert sum(row["count"] for row in body["bands"]) == 5

    def test_empty_503(self):
        empty = TestClient(create_app(None))
        assert empty.get("/stats").status_code == 503


class TestNetworkGeojson:
    def test_byte_equal_to_cli_export(self, five_archive, tmp_path, capsys):
        out_path = tmp_path / "cli.geojson"
        code = main(["export", "--archive", str(five_archive), "--out", str(out_path)])
        capsys.readouterr()
        assert code == 0
        client = TestClient(create_app_from_path(str(five_archive)))
        response = client.get("/network.geojson")
        assert response.status_code == 200
        assert response.headers["content-type"].startswith("application/geo+json")
        assert response.content == out_path.read_bytes()

    def test_empty_503(self):
        empty = TestClient(create_app(None))
        assert empty.get("/network.geojson").status_code == 503


class TestConcurrency:
    def test_identical_concurrent_answers(self, five_archive):
        app = create_app_from_path(str(five_archive))

        def fetch(_):
            local = TestClient(app)
            route = local.get("/route", params={"from": "A", "to": "C"}).content
            nodes = local.get("/nodes").content
            return hashlib.sha256(route + nodes).hexdigest()

        with ThreadPoolExecutor(max_workers=8) as pool:
            digests = list(pool.map(fetch, range(16)))
        assert len(set(digests)) == 1
