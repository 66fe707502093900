"""HTTP API for levels, server-authoritative game runs and the leaderboard.

The server is the only place games are ever simulated: a client posts its
mine layout, the engine runs the whole game in one request, and the client
gets back the event log to animate plus the score report.  Scores submitted
to the leaderboard are re-simulated from the stored session before being
credited, so a client has no way to forge a total.

All error responses share one body shape: ``{"code", "message", "details"}``.
"""

from __future__ import annotations

import hashlib
import json
import secrets
from pathlib import Path
from typing import Any, Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .analysis import analyze_level
from .blocks import Attr, Color, Pred, Texture, BIN_OPS, CMP_OPS
from .board import RouteExplosion, TILE_CODES, walkable
from .engine import (
    InvalidConfig,
    Mine,
    ScoreReport,
    mine_from_doc,
    mine_to_doc,
    run_to_completion,
)
from .levels import (
    Leaderboard,
    LevelStore,
    NotFound,
    ReplayMismatch,
    StorageFailure,
    UnknownLevel,
    ValidationFailed,
    build_config,
    build_mutants,
    level_from_doc,
    level_summary,
    level_to_doc,
    submit_score,
    validate,
)
from .mutation import diff_entry_to_doc, explain, mutation_to_doc
from .serialize import ParseError, SchemaError


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, details: Any = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.details = details


class CreateGameBody(BaseModel):
    levelId: str
    mines: list[dict]
    seed: Optional[int] = None


class SubmitScoreBody(BaseModel):
    player: str
    gameId: str
    total: int


def game_id_for(level_id: str, seed: int, mine_docs: list[dict]) -> str:
    """Content-addressed session id: identical runs share an id."""
    payload = json.dumps(
        {"level": level_id, "seed": seed, "mines": mine_docs},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def block_palette() -> dict:
    """What the block editor can offer; the server is the source of truth."""
    return {
        "colors": [c.value for c in Color],
        "textures": [t.value for t in Texture],
        "walkableTextures": [t.value for t in Texture if walkable(t)],
        "tileCodes": {t.value: code for t, code in TILE_CODES.items()},
        "predicates": [p.value for p in Pred],
        "attributes": [
            {"name": Attr.SHIRT_COLOR.value, "type": "color"},
            {"name": Attr.HAIR_COLOR.value, "type": "color"},
            {"name": Attr.SIZE.value, "type": "int"},
        ],
        "inputs": ["x", "y"],
        "arithmeticOps": list(BIN_OPS),
        "comparisonOps": list(CMP_OPS),
    }


def create_app(data_dir: Path | str, ui_dir: Optional[Path | str] = None) -> FastAPI:
    data_dir = Path(data_dir)
    store = LevelStore(data_dir)
    store.seed_defaults()
    leaderboard = Leaderboard(data_dir)
    games_dir = data_dir / "games"
    games_dir.mkdir(parents=True, exist_ok=True)
    analysis_cache: dict[str, tuple[str, dict]] = {}

    app = FastAPI(title="crittermine", version="0.1.0")

    @app.exception_handler(ApiError)
    async def _api_error(_: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.status,
            content={"code": exc.code, "message": exc.message, "details": exc.details},
        )

    @app.exception_handler(RequestValidationError)
    async def _body_error(_: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content={"code": "BadRequest", "message": "request body is invalid", "details": exc.errors()},
        )

    @app.exception_handler(StorageFailure)
    async def _storage_error(_: Request, exc: StorageFailure) -> JSONResponse:
        return JSONResponse(
            status_code=500,
            content={"code": "StorageFailure", "message": str(exc), "details": None},
        )

    def _load_level(level_id: str):
        try:
            return store.load(level_id)
        except NotFound:
            raise ApiError(404, "NotFound", f"no level {level_id!r}") from None

    @app.get("/api/palette")
    def get_palette() -> dict:
        return block_palette()

    @app.get("/api/levels")
    def list_levels() -> dict:
        return store.list()

    @app.get("/api/levels/{level_id}")
    def get_level(level_id: str) -> dict:
        level = _load_level(level_id)
        doc = level_to_doc(level)
        detail = []
        for mutant, mutations in zip(build_mutants(level), level.mutants):
            detail.append(
                {
                    "id": mutant.id,
                    "mutations": [mutation_to_doc(m) for m in mutations],
                    "diff": [diff_entry_to_doc(e) for e in explain(mutant)],
                }
            )
        doc["mutantDetails"] = detail
        return doc

    @app.post("/api/levels", status_code=201)
    def create_level(body: dict) -> dict:
        try:
            level = level_from_doc(body)
        except (SchemaError, ParseError) as e:
            raise ApiError(422, "SchemaError", str(e)) from None
        try:
            store.save(level)
        except ValidationFailed as e:
            raise ApiError(
                422,
                "ValidationFailed",
                "level failed validation",
                details=[{"severity": i.severity, "code": i.code, "detail": i.detail} for i in e.issues],
            ) from None
        analysis_cache.pop(level.id, None)
        warnings = [i for i in validate(level) if i.severity == "WARNING"]
        return {
            "level": level_summary(level),
            "issues": [{"severity": i.severity, "code": i.code, "detail": i.detail} for i in warnings],
        }

    @app.post("/api/levels/validate")
    def validate_level(body: dict) -> dict:
        try:
            level = level_from_doc(body)
        except (SchemaError, ParseError) as e:
            raise ApiError(422, "SchemaError", str(e)) from None
        return {
            "issues": [
                {"severity": i.severity, "code": i.code, "detail": i.detail}
                for i in validate(level)
            ]
        }

    @app.get("/api/levels/{level_id}/analysis")
    def get_analysis(level_id: str) -> dict:
        level = _load_level(level_id)
        doc_hash = hashlib.sha256(
            json.dumps(level_to_doc(level), sort_keys=True).encode()
        ).hexdigest()
        cached = analysis_cache.get(level_id)
        if cached and cached[0] == doc_hash:
            return cached[1]
        try:
            report = analyze_level(level.board, level.cut, build_mutants(level)).to_doc()
        except RouteExplosion as e:
            raise ApiError(409, "RouteExplosion", str(e)) from None
        analysis_cache[level_id] = (doc_hash, report)
        return report

    @app.post("/api/games", status_code=201)
    def create_game(body: CreateGameBody) -> dict:
        level = _load_level(body.levelId)
        try:
            mines = [mine_from_doc(m) for m in body.mines]
        except (SchemaError, ParseError) as e:
            raise ApiError(422, "SchemaError", str(e)) from None
        seed = body.seed if body.seed is not None else secrets.randbits(63)
        try:
            state, report = run_to_completion(build_config(level, mines, seed))
        except InvalidConfig as e:
            raise ApiError(422, "InvalidConfig", str(e)) from None
        mine_docs = [mine_to_doc(m) for m in mines]
        game_id = game_id_for(level.id, seed, mine_docs)
        record = {
            "gameId": game_id,
            "levelId": level.id,
            "seed": seed,
            "mines": mine_docs,
            "population": len(state.critters),
            "events": state.events,
            "score": report.to_doc(),
        }
        (games_dir / f"{game_id}.json").write_text(json.dumps(record, sort_keys=True))
        return record

    @app.post("/api/scores")
    def post_score(body: SubmitScoreBody) -> dict:
        game_path = games_dir / f"{body.gameId}.json"
        if not game_path.is_file():
            raise ApiError(404, "UnknownGame", f"no game {body.gameId!r}")
        record = json.loads(game_path.read_text())
        stored = ScoreReport(
            healthy_saved=record["score"]["healthySaved"],
            healthy_trapped=record["score"]["healthyTrapped"],
            mutants_trapped=record["score"]["mutantsTrapped"],
            mutants_escaped=record["score"]["mutantsEscaped"],
            mines_used=record["score"]["minesUsed"],
            time_bonus=record["score"]["timeBonus"],
            total=record["score"]["total"],
        )
        if body.total != stored.total:
            raise ApiError(
                409,
                "ReplayMismatch",
                f"claimed total {body.total} does not match the server's run",
            )
        try:
            entry = submit_score(
                store,
                leaderboard,
                body.player,
                record["levelId"],
                [mine_from_doc(m) for m in record["mines"]],
                record["seed"],
                stored,
                body.gameId,
            )
        except UnknownLevel as e:
            raise ApiError(404, "UnknownLevel", str(e)) from None
        except ReplayMismatch as e:
            raise ApiError(409, "ReplayMismatch", str(e)) from None
        return entry.to_doc()

    @app.get("/api/leaderboard")
    def get_leaderboard() -> dict:
        return {"entries": [e.to_doc() for e in leaderboard.entries()]}

    if ui_dir is not None and Path(ui_dir).is_dir():
        index = Path(ui_dir) / "index.html"

        # the SPA owns these paths; serve the shell and let it route
        @app.get("/levels", include_in_schema=False)
        @app.get("/leaderboard", include_in_schema=False)
        @app.get("/play/{level_id}", include_in_schema=False)
        @app.get("/editor/{level_id}", include_in_schema=False)
        def spa_shell(level_id: str = "") -> "FileResponse":
            from fastapi.responses import FileResponse

            return FileResponse(index)

        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
