"""Tick-stepped game simulation.

One game runs a population of critters (healthy ones share the level's
program, each mutant runs its own mutated copy) from the spawn point to the
tower.  Each tick every walking critter advances one tile, executes its loop
for that tile, and is then examined by the mine sitting there, if any: a
failing assert traps the critter on the spot, otherwise it walks on.  The
run is fully determined by the config and its seed -- per-critter RNG
streams drive the routes, a seed-derived shuffle staggers the spawn order --
and everything observable lands in an append-only event log that serializes
byte-identically across repeated runs.

Critters never interact: outcomes depend only on a critter's own route and
the placed mines.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from .blocks import CritterProgram, TestProgram
from .board import Board, Coord, Route, critter_stream, distance_field, random_route, spawn_order_stream
from .interp import CritterState, TestVerdict, eval_test, init_state, step_loop
from .mutation import Mutant
from .serialize import path_to_doc, program_to_doc
from .typecheck import typecheck

SPAWN_STAGGER_TICKS = 2


class InvalidConfig(Exception):
    pass


class NotRunning(Exception):
    pass


class GameNotFinished(Exception):
    pass


@dataclass(frozen=True)
class Mine:
    position: Coord
    test: TestProgram


@dataclass(frozen=True)
class GameConfig:
    board: Board
    cut: CritterProgram
    mutants: tuple[Mutant, ...]
    n_healthy: int
    mine_budget: int
    mines: tuple[Mine, ...]
    seed: int


class Status(Enum):
    WALKING = "WALKING"
    SAVED = "SAVED"
    TRAPPED = "TRAPPED"


@dataclass
class CritterInstance:
    id: str
    kind: str  # "healthy" | "mutant"
    mutant_id: Optional[str]
    program: CritterProgram
    state: CritterState
    route: Route
    spawn_tick: int
    route_index: int = -1  # -1 until spawned
    status: Status = Status.WALKING
    trapped_at: Optional[Coord] = None
    failed_assert: Optional[object] = None


class Phase(Enum):
    RUNNING = "RUNNING"
    FINISHED = "FINISHED"


@dataclass
class GameState:
    config: GameConfig
    critters: list[CritterInstance]
    tick_count: int = 0
    phase: Phase = Phase.RUNNING
    events: list[dict] = field(default_factory=list)

    @property
    def mines_by_tile(self) -> dict[Coord, Mine]:
        return {m.position: m for m in self.config.mines}


@dataclass(frozen=True)
class ScoreReport:
    healthy_saved: int
    healthy_trapped: int
    mutants_trapped: int
    mutants_escaped: int
    mines_used: int
    time_bonus: int
    total: int

    def to_doc(self) -> dict:
        return {
            "healthySaved": self.healthy_saved,
            "healthyTrapped": self.healthy_trapped,
            "mutantsTrapped": self.mutants_trapped,
            "mutantsEscaped": self.mutants_escaped,
            "minesUsed": self.mines_used,
            "timeBonus": self.time_bonus,
            "total": self.total,
        }


POINTS_PER_MUTANT_TRAPPED = 100
POINTS_PER_HEALTHY_SAVED = 20
PENALTY_PER_HEALTHY_TRAPPED = 50
PENALTY_PER_EXTRA_MINE = 25


def _validate_config(config: GameConfig) -> None:
    if config.n_healthy < 1:
        raise InvalidConfig("need at least one healthy critter")
    if config.mine_budget < 0:
        raise InvalidConfig("mine budget cannot be negative")
    board = config.board
    if not board.walkable_at(board.spawn) or not board.walkable_at(board.tower):
        raise InvalidConfig("spawn and tower must sit on walkable tiles")
    if board.spawn == board.tower:
        raise InvalidConfig("spawn and tower must differ")
    seen: set[Coord] = set()
    for mine in config.mines:
        if not config.board.walkable_at(mine.position):
            raise InvalidConfig(f"mine at {mine.position} is not on a walkable tile")
        if mine.position in seen:
            raise InvalidConfig(f"two mines on tile {mine.position}")
        seen.add(mine.position)
        issues = typecheck(mine.test)
        if issues:
            raise InvalidConfig(f"mine test at {mine.position} is ill-typed: {issues[0]}")
    if typecheck(config.cut):
        raise InvalidConfig("level program does not type-check")
    for mutant in config.mutants:
        if typecheck(mutant.program):
            raise InvalidConfig(f"mutant {mutant.id} does not type-check")
    if config.board.spawn not in distance_field(config.board):
        raise InvalidConfig("spawn cannot reach the tower")


def new_game(config: GameConfig, spawn_order: Optional[Sequence[int]] = None) -> GameState:
    """Build the initial game state.

    The roster is the healthy critters followed by one instance per mutant;
    roster position, not spawn position, feeds each critter's route stream,
    so reshuffling spawn order never changes anyone's route.  ``spawn_order``
    exists for tests; by default it is a seed-derived shuffle.
    """
    _validate_config(config)
    roster: list[CritterInstance] = []
    for i in range(config.n_healthy):
        roster.append(
            CritterInstance(
                id=f"h{i}",
                kind="healthy",
                mutant_id=None,
                program=config.cut,
                state=init_state(config.cut),
                route=random_route(config.board, critter_stream(config.seed, len(roster))),
                spawn_tick=0,
            )
        )
    for mutant in config.mutants:
        roster.append(
            CritterInstance(
                id=f"m{len(roster) - config.n_healthy}",
                kind="mutant",
                mutant_id=mutant.id,
                program=mutant.program,
                state=init_state(mutant.program),
                route=random_route(config.board, critter_stream(config.seed, len(roster))),
                spawn_tick=0,
            )
        )
    if spawn_order is None:
        order = list(range(len(roster)))
        spawn_order_stream(config.seed).shuffle(order)
    else:
        order = list(spawn_order)
        if sorted(order) != list(range(len(roster))):
            raise InvalidConfig("spawn_order must be a permutation of the roster")
    for position, roster_index in enumerate(order):
        roster[roster_index].spawn_tick = position * SPAWN_STAGGER_TICKS
    return GameState(config=config, critters=roster)


def _emit(state: GameState, critter: CritterInstance, kind: str, **data) -> None:
    state.events.append(
        {"tick": state.tick_count, "critter": critter.id, "kind": kind, "data": data}
    )


def _enter_tile(state: GameState, critter: CritterInstance, mines: dict[Coord, Mine]) -> None:
    pos = critter.route[critter.route_index]
    tile = state.config.board.tile_input(pos)
    critter.state = step_loop(critter.program, critter.state, tile)
    mine = mines.get(pos)
    if mine is not None:
        verdict: TestVerdict = eval_test(mine.test, critter.state, tile)
        _emit(
            state,
            critter,
            "mine_evaluated",
            x=pos[0],
            y=pos[1],
            verdict="pass" if verdict.passed else "fail",
            failedAssert=None if verdict.passed else path_to_doc(verdict.failed_assert),
        )
        if not verdict.passed:
            critter.status = Status.TRAPPED
            critter.trapped_at = pos
            critter.failed_assert = verdict.failed_assert
            _emit(state, critter, "trapped", x=pos[0], y=pos[1])
            return
    if critter.route_index == len(critter.route) - 1:
        critter.status = Status.SAVED
        _emit(state, critter, "saved", x=pos[0], y=pos[1])


def tick(state: GameState) -> GameState:
    """Advance the simulation by one tick, mutating and returning ``state``."""
    if state.phase is not Phase.RUNNING:
        raise NotRunning("game already finished")
    state.tick_count += 1
    mines = state.mines_by_tile
    for critter in state.critters:
        if critter.status is not Status.WALKING:
            continue
        if critter.route_index == -1:
            if state.tick_count > critter.spawn_tick:
                critter.route_index = 0
                pos = critter.route[0]
                _emit(state, critter, "spawned", x=pos[0], y=pos[1], critterKind=critter.kind,
                      mutant=critter.mutant_id)
                _enter_tile(state, critter, mines)
            continue
        critter.route_index += 1
        pos = critter.route[critter.route_index]
        _emit(state, critter, "moved", x=pos[0], y=pos[1])
        _enter_tile(state, critter, mines)
    if all(c.status is not Status.WALKING for c in state.critters):
        state.phase = Phase.FINISHED
    return state


def score(state: GameState, config: Optional[GameConfig] = None) -> ScoreReport:
    """Final scoreboard; only valid once the game has finished."""
    if state.phase is not Phase.FINISHED:
        raise GameNotFinished("score is only defined for finished games")
    cfg = config or state.config
    healthy_saved = sum(1 for c in state.critters if c.kind == "healthy" and c.status is Status.SAVED)
    healthy_trapped = sum(1 for c in state.critters if c.kind == "healthy" and c.status is Status.TRAPPED)
    mutants_trapped = sum(1 for c in state.critters if c.kind == "mutant" and c.status is Status.TRAPPED)
    mutants_escaped = sum(1 for c in state.critters if c.kind == "mutant" and c.status is Status.SAVED)
    mines_used = len(cfg.mines)
    return _compute_report(
        cfg, len(state.critters), state.tick_count,
        healthy_saved, healthy_trapped, mutants_trapped, mutants_escaped, mines_used,
    )


def _compute_report(
    cfg: GameConfig,
    population: int,
    final_tick: int,
    healthy_saved: int,
    healthy_trapped: int,
    mutants_trapped: int,
    mutants_escaped: int,
    mines_used: int,
) -> ScoreReport:
    time_bonus = max(0, 2 * (cfg.board.width + cfg.board.height) + 2 * population - final_tick)
    total = max(
        0,
        POINTS_PER_MUTANT_TRAPPED * mutants_trapped
        + POINTS_PER_HEALTHY_SAVED * healthy_saved
        - PENALTY_PER_HEALTHY_TRAPPED * healthy_trapped
        - PENALTY_PER_EXTRA_MINE * max(0, mines_used - cfg.mine_budget)
        + time_bonus,
    )
    return ScoreReport(
        healthy_saved=healthy_saved,
        healthy_trapped=healthy_trapped,
        mutants_trapped=mutants_trapped,
        mutants_escaped=mutants_escaped,
        mines_used=mines_used,
        time_bonus=time_bonus,
        total=total,
    )


def score_from_events(events: list[dict], config: GameConfig, population: int) -> ScoreReport:
    """Recompute the scoreboard from the event log alone (replay audit)."""
    saved_healthy = set()
    trapped_healthy = set()
    saved_mutants = set()
    trapped_mutants = set()
    final_tick = 0
    for e in events:
        final_tick = max(final_tick, e["tick"])
        is_mutant = e["critter"].startswith("m")
        if e["kind"] == "saved":
            (saved_mutants if is_mutant else saved_healthy).add(e["critter"])
        elif e["kind"] == "trapped":
            (trapped_mutants if is_mutant else trapped_healthy).add(e["critter"])
    return _compute_report(
        config, population, final_tick,
        len(saved_healthy), len(trapped_healthy),
        len(trapped_mutants), len(saved_mutants), len(config.mines),
    )


def run_to_completion(
    config: GameConfig, spawn_order: Optional[Sequence[int]] = None
) -> tuple[GameState, ScoreReport]:
    state = new_game(config, spawn_order)
    while state.phase is Phase.RUNNING:
        tick(state)
    return state, score(state)


def events_to_json(events: list[dict]) -> str:
    """Canonical byte form of the event log, for determinism checks."""
    return json.dumps(events, sort_keys=True, separators=(",", ":"))


def mine_to_doc(mine: Mine) -> dict:
    return {"x": mine.position[0], "y": mine.position[1], "test": program_to_doc(mine.test)}


def mine_from_doc(doc: dict) -> Mine:
    from .serialize import SchemaError, _require, test_program_from_doc

    d = _require(doc, {"x", "y", "test"}, "mine")
    if not isinstance(d["x"], int) or not isinstance(d["y"], int):
        raise SchemaError("mine coordinates must be integers", "mine")
    return Mine((d["x"], d["y"]), test_program_from_doc(d["test"]))
