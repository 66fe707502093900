"""Level model, validation, file persistence and the leaderboard.

Levels live as one JSON document per level under ``<data>/levels``; the
leaderboard is one document holding accumulated per-player totals plus the
log of credited games, so the totals can always be re-audited.  All writes
go through write-temp-then-rename, so a crash never leaves a half-written
document behind.

A level stores its mutants as mutation lists, not as full programs: the
player-facing review screen wants to show *what was edited*, and diffs need
the edit, not just the result.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional

from .analysis import minimal_mine_set, equivalent_mutants
from .board import Board, NoRoute, RouteExplosion, board_from_doc, board_to_doc, distance_field
from .blocks import CritterProgram
from .engine import (
    GameConfig,
    Mine,
    ScoreReport,
    run_to_completion,
)
from .mutation import (
    ConflictingPaths,
    EmptyMutationList,
    IncompatibleEdit,
    Mutant,
    Mutation,
    PathInvalidForEdit,
    ProducesIllTyped,
    make_mutant,
    mutation_from_doc,
    mutation_to_doc,
)
from .blocks import KindMismatch, PathInvalid
from .serialize import (
    SchemaError,
    _require,
    critter_program_from_doc,
    program_to_doc,
)
from .typecheck import typecheck

SCHEMA_VERSION = 1


class Category(Enum):
    TUTORIAL = "tutorial"
    BEGINNER = "beginner"
    ADVANCED = "advanced"


class NotFound(Exception):
    pass


class ValidationFailed(Exception):
    def __init__(self, issues: list["Issue"]):
        super().__init__("; ".join(str(i) for i in issues))
        self.issues = issues


class StorageFailure(Exception):
    pass


class UnknownLevel(Exception):
    pass


class ReplayMismatch(Exception):
    pass


@dataclass(frozen=True)
class Level:
    id: str
    name: str
    category: Category
    board: Board
    cut: CritterProgram
    mutants: tuple[tuple[Mutation, ...], ...]
    n_critters: int
    mine_budget: int
    difficulty: int


@dataclass(frozen=True)
class Issue:
    severity: str  # "ERROR" | "WARNING"
    code: str
    detail: str

    def __str__(self) -> str:
        return f"{self.severity} {self.code}: {self.detail}"


def build_mutants(level: Level) -> tuple[Mutant, ...]:
    """Materialize the level's mutation lists into runnable mutants."""
    return tuple(make_mutant(level.cut, list(ms)) for ms in level.mutants)


def build_config(level: Level, mines: list[Mine], seed: int) -> GameConfig:
    return GameConfig(
        board=level.board,
        cut=level.cut,
        mutants=build_mutants(level),
        n_healthy=level.n_critters,
        mine_budget=level.mine_budget,
        mines=tuple(mines),
        seed=seed,
    )


def validate(level: Level, cap: int = 10_000) -> list[Issue]:
    """Check a level top to bottom; an empty list means it is playable."""
    issues: list[Issue] = []

    def error(code: str, detail: str) -> None:
        issues.append(Issue("ERROR", code, detail))

    def warning(code: str, detail: str) -> None:
        issues.append(Issue("WARNING", code, detail))

    if not level.id or not all(c.isalnum() or c == "-" for c in level.id):
        error("BadId", "level id must be non-empty and use letters, digits and dashes")
    if level.n_critters < 1:
        error("BadCritterCount", "a level needs at least one healthy critter")
    if level.mine_budget < 0:
        error("BadMineBudget", "the mine budget cannot be negative")
    if not 1 <= level.difficulty <= 5:
        error("BadDifficulty", "difficulty is graded 1 to 5")

    board = level.board
    if not board.walkable_at(board.spawn):
        error("UnwalkableSpawn", f"spawn {board.spawn} is not on a walkable tile")
    if not board.walkable_at(board.tower):
        error("UnwalkableTower", f"tower {board.tower} is not on a walkable tile")
    if board.spawn == board.tower:
        error("SpawnIsTower", "spawn and tower must be different tiles")
    reachable = board.spawn in distance_field(board)
    if not reachable and not any(i.code in ("UnwalkableSpawn", "UnwalkableTower") for i in issues):
        error("UnreachableTower", "no walkable path connects spawn and tower")

    cut_issues = typecheck(level.cut)
    for ti in cut_issues:
        error("CutIllTyped", str(ti))

    if not level.mutants:
        error("NoMutants", "a level needs at least one mutant")

    mutants: list[Mutant] = []
    for idx, mutation_list in enumerate(level.mutants):
        try:
            mutants.append(make_mutant(level.cut, list(mutation_list)))
        except (
            PathInvalid,
            KindMismatch,
            PathInvalidForEdit,
            IncompatibleEdit,
            ProducesIllTyped,
            ConflictingPaths,
            EmptyMutationList,
        ) as e:
            error("MutantInvalid", f"mutant {idx}: {e}")

    playable = not any(i.severity == "ERROR" for i in issues)
    if playable and reachable:
        try:
            for mid in equivalent_mutants(board, level.cut, tuple(mutants), cap):
                warning("EquivalentMutant", f"mutant {mid} behaves exactly like the healthy program on this board")
            minimal, certificate = minimal_mine_set(board, level.cut, tuple(mutants), cap)
            if certificate.status == "UNSOLVABLE":
                warning(
                    "Unsolvable",
                    "no safe mine set can trap: " + ", ".join(certificate.undetectable),
                )
            elif level.mine_budget < len(minimal):
                warning(
                    "BudgetBelowMinimal",
                    f"budget {level.mine_budget} is below the minimal mine set size {len(minimal)}",
                )
        except RouteExplosion:
            warning("AnalysisSkipped", "too many routes to analyze this board exhaustively")
        except NoRoute:
            pass
    return issues


# ---------------------------------------------------------------------------
# wire format


def level_to_doc(level: Level) -> dict:
    return {
        "version": SCHEMA_VERSION,
        "id": level.id,
        "name": level.name,
        "category": level.category.value,
        "board": board_to_doc(level.board),
        "cut": program_to_doc(level.cut),
        "mutants": [[mutation_to_doc(m) for m in ms] for ms in level.mutants],
        "critters": level.n_critters,
        "mineBudget": level.mine_budget,
        "difficulty": level.difficulty,
    }


def level_from_doc(doc: dict) -> Level:
    d = _require(
        doc,
        {"version", "id", "name", "category", "board", "cut", "mutants", "critters", "mineBudget", "difficulty"},
        "level",
    )
    if d["version"] != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema version {d['version']!r}", "level.version")
    try:
        category = Category(d["category"])
    except ValueError:
        raise SchemaError(f"unknown category {d['category']!r}", "level.category") from None
    raw_mutants = d["mutants"]
    if not isinstance(raw_mutants, list) or not all(isinstance(ms, list) for ms in raw_mutants):
        raise SchemaError("mutants must be a list of mutation lists", "level.mutants")
    for key in ("critters", "mineBudget", "difficulty"):
        if not isinstance(d[key], int) or isinstance(d[key], bool):
            raise SchemaError(f"{key} must be an integer", f"level.{key}")
    if not isinstance(d["id"], str) or not isinstance(d["name"], str):
        raise SchemaError("id and name must be strings", "level")
    return Level(
        id=d["id"],
        name=d["name"],
        category=category,
        board=board_from_doc(d["board"]),
        cut=critter_program_from_doc(d["cut"]),
        mutants=tuple(tuple(mutation_from_doc(m) for m in ms) for ms in raw_mutants),
        n_critters=d["critters"],
        mine_budget=d["mineBudget"],
        difficulty=d["difficulty"],
    )


def level_summary(level: Level) -> dict:
    return {
        "id": level.id,
        "name": level.name,
        "category": level.category.value,
        "difficulty": level.difficulty,
        "critters": level.n_critters,
        "mineBudget": level.mine_budget,
        "mutantCount": len(level.mutants),
    }


# ---------------------------------------------------------------------------
# persistence


def _atomic_write(path: Path, payload: dict) -> None:
    tmp = path.with_suffix(".tmp")
    try:
        tmp.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        os.replace(tmp, path)
    except OSError as e:
        raise StorageFailure(str(e)) from e


class LevelStore:
    """File-per-level persistence under ``<root>/levels``."""

    def __init__(self, root: Path | str):
        self.root = Path(root)
        self.levels_dir = self.root / "levels"
        self.levels_dir.mkdir(parents=True, exist_ok=True)

    def _path(self, level_id: str) -> Path:
        return self.levels_dir / f"{level_id}.json"

    def save(self, level: Level) -> None:
        issues = validate(level)
        errors = [i for i in issues if i.severity == "ERROR"]
        if errors:
            raise ValidationFailed(errors)
        _atomic_write(self._path(level.id), level_to_doc(level))

    def load(self, level_id: str) -> Level:
        path = self._path(level_id)
        if not path.is_file():
            raise NotFound(f"no level {level_id!r}")
        try:
            return level_from_doc(json.loads(path.read_text()))
        except json.JSONDecodeError as e:
            raise StorageFailure(f"level file {path} is corrupt: {e}") from e

    def list(self) -> dict[str, list[dict]]:
        """Level summaries grouped by category, each group sorted by difficulty."""
        grouped: dict[str, list[dict]] = {c.value: [] for c in Category}
        for path in sorted(self.levels_dir.glob("*.json")):
            level = level_from_doc(json.loads(path.read_text()))
            grouped[level.category.value].append(level_summary(level))
        for group in grouped.values():
            group.sort(key=lambda s: (s["difficulty"], s["name"]))
        return grouped

    def delete(self, level_id: str) -> None:
        path = self._path(level_id)
        if not path.is_file():
            raise NotFound(f"no level {level_id!r}")
        path.unlink()

    def seed_defaults(self) -> None:
        """Install the bundled fixture levels into an empty store."""
        if any(self.levels_dir.glob("*.json")):
            return
        from .fixtures import fixture_levels

        for level in fixture_levels():
            self.save(level)


# ---------------------------------------------------------------------------
# leaderboard


@dataclass(frozen=True)
class LeaderboardEntry:
    player: str
    score: int
    games_played: int

    def to_doc(self) -> dict:
        return {"player": self.player, "score": self.score, "gamesPlayed": self.games_played}


class Leaderboard:
    """Accumulated totals per player plus the per-game credit log."""

    def __init__(self, root: Path | str):
        self.path = Path(root) / "leaderboard.json"
        self.path.parent.mkdir(parents=True, exist_ok=True)

    def _read(self) -> dict:
        if not self.path.is_file():
            return {"entries": {}, "games": []}
        return json.loads(self.path.read_text())

    def credit(self, player: str, game_id: str, total: int) -> LeaderboardEntry:
        """Add a game's total to the player; re-crediting the same game is a no-op."""
        doc = self._read()
        already = any(g["player"] == player and g["gameId"] == game_id for g in doc["games"])
        if not already:
            entry = doc["entries"].setdefault(player, {"score": 0, "gamesPlayed": 0})
            entry["score"] += total
            entry["gamesPlayed"] += 1
            doc["games"].append({"player": player, "gameId": game_id, "total": total})
            _atomic_write(self.path, doc)
        stored = doc["entries"][player]
        return LeaderboardEntry(player, stored["score"], stored["gamesPlayed"])

    def entries(self) -> list[LeaderboardEntry]:
        doc = self._read()
        out = [
            LeaderboardEntry(player, e["score"], e["gamesPlayed"])
            for player, e in doc["entries"].items()
        ]
        out.sort(key=lambda e: (-e.score, e.player))
        return out

    def audit_total(self, player: str) -> int:
        """Sum of the credited game log; must always equal the entry score."""
        doc = self._read()
        return sum(g["total"] for g in doc["games"] if g["player"] == player)


def submit_score(
    store: LevelStore,
    leaderboard: Leaderboard,
    player: str,
    level_id: str,
    mines: list[Mine],
    seed: int,
    claimed: ScoreReport,
    game_id: str,
) -> LeaderboardEntry:
    """Credit a finished game after re-simulating it server-side.

    The claimed report must match the re-run exactly; anything else is a
    forgery (or a determinism bug) and is rejected.
    """
    try:
        level = store.load(level_id)
    except NotFound:
        raise UnknownLevel(f"no level {level_id!r}") from None
    _, report = run_to_completion(build_config(level, mines, seed))
    if report != claimed:
        raise ReplayMismatch(
            f"claimed total {claimed.total} does not match re-simulated total {report.total}"
        )
    return leaderboard.credit(player, game_id, report.total)
