"""HTTP API: level CRUD, server-run games, score submission, leaderboard."""

import pytest
from fastapi.testclient import TestClient

from crittermine.engine import mine_to_doc
from crittermine.fixtures import tutorial_level, tutorial_prescribed_mines
from crittermine.levels import level_to_doc
from crittermine.service import create_app


@pytest.fixture
def client(tmp_path):
    app = create_app(tmp_path)
    with TestClient(app) as client:
        yield client


def prescribed_mine_docs():
    return [mine_to_doc(m) for m in tutorial_prescribed_mines()]


def start_game(client, seed=11, mines=None, level="dirt-trail"):
    return client.post(
        "/api/games",
        json={"levelId": level, "mines": prescribed_mine_docs() if mines is None else mines, "seed": seed},
    )


def test_levels_grouped_by_category(client):
    res = client.get("/api/levels")
    assert res.status_code == 200
    grouped = res.json()
    assert {s["id"] for s in grouped["tutorial"]} == {"dirt-trail"}
    assert {s["id"] for s in grouped["beginner"]} == {"forked-paths"}
    assert {s["id"] for s in grouped["advanced"]} == {"winding-ridge"}


def test_level_detail_includes_mutant_diffs(client):
    res = client.get("/api/levels/dirt-trail")
    assert res.status_code == 200
    doc = res.json()
    assert doc["cut"]["init"][0]["kind"] == "assign"
    details = doc["mutantDetails"]
    assert len(details) == 3
    two_edit = details[0]
    assert len(two_edit["diff"]) == 2
    assert {d["class"] for d in two_edit["diff"]} == {"INITIALIZATION", "CONDITION"}
    assert two_edit["diff"][0]["before"] == {"kind": "color", "value": "RED"}
    assert two_edit["diff"][0]["after"] == {"kind": "color", "value": "GREEN"}


def test_unknown_level_404(client):
    res = client.get("/api/levels/ghost")
    assert res.status_code == 404
    body = res.json()
    assert body["code"] == "NotFound"
    assert set(body) == {"code", "message", "details"}


def test_game_run_traps_mutants(client):
    res = start_game(client)
    assert res.status_code == 201
    body = res.json()
    assert body["score"]["mutantsTrapped"] == 3
    assert body["score"]["healthyTrapped"] == 0
    assert body["score"]["total"] > 0
    kinds = {e["kind"] for e in body["events"]}
    assert {"spawned", "moved", "trapped", "saved", "mine_evaluated"} <= kinds


def test_game_rejects_water_mine(client):
    mine = prescribed_mine_docs()[0]
    mine["x"], mine["y"] = 3, 4  # pond tile
    res = start_game(client, mines=[mine])
    assert res.status_code == 422
    assert res.json()["code"] == "InvalidConfig"


def test_game_rejects_malformed_mine(client):
    res = start_game(client, mines=[{"x": 1, "y": 8, "test": {"bogus": []}}])
    assert res.status_code == 422
    assert res.json()["code"] == "SchemaError"


def test_game_with_seed_is_reproducible(client):
    a = start_game(client, seed=123)
    b = start_game(client, seed=123)
    assert a.status_code == b.status_code == 201
    assert a.content == b.content  # byte-identical body, same gameId included


def test_game_without_seed_gets_one(client):
    res = start_game(client, seed=None, mines=[])
    body = res.json()
    assert isinstance(body["seed"], int)


def test_score_submission_and_leaderboard(client):
    game = start_game(client, seed=5).json()
    res = client.post(
        "/api/scores",
        json={"player": "ada", "gameId": game["gameId"], "total": game["score"]["total"]},
    )
    assert res.status_code == 200
    assert res.json()["score"] == game["score"]["total"]
    # duplicate submission leaves the total unchanged
    res = client.post(
        "/api/scores",
        json={"player": "ada", "gameId": game["gameId"], "total": game["score"]["total"]},
    )
    assert res.json()["score"] == game["score"]["total"]
    board = client.get("/api/leaderboard").json()
    assert board["entries"][0]["player"] == "ada"


def test_forged_score_rejected(client):
    game = start_game(client, seed=5).json()
    res = client.post(
        "/api/scores",
        json={"player": "eve", "gameId": game["gameId"], "total": game["score"]["total"] + 500},
    )
    assert res.status_code == 409
    assert res.json()["code"] == "ReplayMismatch"


def test_score_for_unknown_game(client):
    res = client.post("/api/scores", json={"player": "ada", "gameId": "feedface", "total": 1})
    assert res.status_code == 404
    assert res.json()["code"] == "UnknownGame"


def test_analysis_endpoint(client):
    res = client.get("/api/levels/dirt-trail/analysis")
    assert res.status_code == 200
    doc = res.json()
    assert len(doc["minimalMines"]) == 2
    assert doc["certificate"]["status"] == "EXACT"
    # cached second call returns the same document
    assert client.get("/api/levels/dirt-trail/analysis").json() == doc


def test_create_level_roundtrip(client):
    doc = level_to_doc(tutorial_level())
    doc["id"] = "custom-trail"
    doc["name"] = "Custom Trail"
    res = client.post("/api/levels", json=doc)
    assert res.status_code == 201
    assert res.json()["level"]["id"] == "custom-trail"
    assert client.get("/api/levels/custom-trail").status_code == 200


def test_create_level_validation_failure(client):
    doc = level_to_doc(tutorial_level())
    doc["id"] = "broken"
    doc["mutants"] = []
    res = client.post("/api/levels", json=doc)
    assert res.status_code == 422
    body = res.json()
    assert body["code"] == "ValidationFailed"
    assert any(i["code"] == "NoMutants" for i in body["details"])


def test_create_level_schema_error(client):
    res = client.post("/api/levels", json={"version": 1, "id": "x"})
    assert res.status_code == 422
    assert res.json()["code"] == "SchemaError"


def test_validate_endpoint_reports_warnings(client):
    doc = level_to_doc(tutorial_level())
    doc["id"] = "tight-budget"
    doc["mineBudget"] = 1
    res = client.post("/api/levels/validate", json=doc)
    assert res.status_code == 200
    assert any(i["code"] == "BudgetBelowMinimal" for i in res.json()["issues"])


def test_palette_endpoint(client):
    palette = client.get("/api/palette").json()
    assert len(palette["colors"]) == 6
    assert len(palette["textures"]) == 5
    assert palette["walkableTextures"] == ["GRASS", "DIRT", "ICE"]
    assert len(palette["predicates"]) == 5


def test_request_validation_error_shape(client):
    res = client.post("/api/games", json={"mines": []})
    assert res.status_code == 422
    assert res.json()["code"] == "BadRequest"


def test_static_ui_mount(tmp_path):
    ui = tmp_path / "ui"
    ui.mkdir()
    (ui / "index.html").write_text("<html><body>critters</body></html>")
    app = create_app(tmp_path / "data", ui_dir=ui)
    with TestClient(app) as client:
        res = client.get("/")
        assert res.status_code == 200
        assert "critters" in res.text
        assert client.get("/api/levels").status_code == 200
        # the SPA screens are reachable as real paths
        for route in ("/levels", "/leaderboard", "/play/dirt-trail", "/editor/dirt-trail"):
            res = client.get(route)
            assert res.status_code == 200
            assert "critters" in res.text
