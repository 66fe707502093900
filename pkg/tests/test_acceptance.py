"""Acceptance gate: the worked tutorial scenario plus the system-wide
properties, each with its stated budget.  One pass/fail line prints per
criterion (run with ``pytest tests/test_acceptance.py -v -s`` to see them).
"""

import json
import time
from contextlib import contextmanager
from itertools import combinations

from fastapi.testclient import TestClient

from crittermine.analysis import (
    GUARANTEED,
    POSSIBLE,
    kill_matrix,
    minimal_mine_set,
    oracle_mine,
    oracle_pool,
)
from crittermine.blocks import Color
from crittermine.board import enumerate_routes
from crittermine.engine import (
    GameConfig,
    events_to_json,
    mine_to_doc,
    run_to_completion,
    score_from_events,
)
from crittermine.fixtures import (
    forked_level,
    ridge_level,
    tutorial_level,
    tutorial_prescribed_mines,
)
from crittermine.interp import _PREDICATES, is_prime
from crittermine.levels import build_config, build_mutants
from crittermine.mutation import MutationClass, apply, enumerate_mutations
from crittermine.serialize import dumps, loads, program_from_doc, program_to_doc
from crittermine.service import create_app
from crittermine.blocks import Pred

from gen import ProgramGen


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"[acceptance] {name}: FAIL")
        raise
    print(f"[acceptance] {name}: PASS")


def test_tutorial_scenario_reconstruction():
    with criterion("tutorial scenario reconstruction"):
        level = tutorial_level()
        mines = tutorial_prescribed_mines()
        started = time.monotonic()
        for seed in range(100):
            _, report = run_to_completion(build_config(level, mines, seed))
            assert report.mutants_trapped == 3
            assert report.healthy_trapped == 0
            assert report.healthy_saved == 3
        # dropping either mine lets a mutant walk free, on every seed
        for kept in (mines[:1], mines[1:]):
            for seed in range(100):
                _, report = run_to_completion(build_config(level, kept, seed))
                assert report.mutants_escaped >= 1
        elapsed = time.monotonic() - started
        assert elapsed < 1.0, f"took {elapsed:.2f}s, budget is 1s"


def test_minimal_mine_set_cardinality():
    with criterion("minimal mine set of size two"):
        started = time.monotonic()
        level = tutorial_level()
        mutants = build_mutants(level)
        chosen, certificate = minimal_mine_set(level.board, level.cut, mutants)
        assert certificate.status == "EXACT"
        assert len(chosen) == 2

        # independent brute force: no single safe mine covers every
        # (mutant, route) pair, while some pair of mines does
        routes = enumerate_routes(level.board)
        pool = oracle_pool(level.board, level.cut)
        matrix = kill_matrix(level.board, level.cut, mutants, pool)

        def covers_all(subset):
            return all(
                any(matrix.cell(i, mu.id) == GUARANTEED for i in subset)
                for mu in mutants
            )

        assert len(routes) == 1  # single-route board: GUARANTEED == trapped at all
        assert not any(covers_all([i]) for i in range(len(pool)))
        assert any(covers_all(list(pair)) for pair in combinations(range(len(pool)), 2))
        elapsed = time.monotonic() - started
        assert elapsed < 5.0, f"took {elapsed:.2f}s, budget is 5s"


def test_mutation_catalog():
    with criterion("mutation catalog"):
        level = tutorial_level()
        inits = enumerate_mutations(level.cut, {MutationClass.INITIALIZATION})
        assert len(inits) == 5
        assert {m.edit.value for m in inits} == set(Color) - {Color.RED}

        gen = ProgramGen(2024)
        for _ in range(1000):
            base = gen.critter_program()
            for m in enumerate_mutations(base):
                mutated = apply(base, m)  # raises if ill-typed or inapplicable
                assert mutated != base


def test_determinism_of_event_logs():
    with criterion("byte-identical event logs"):
        for level in (tutorial_level(), forked_level(), ridge_level()):
            pool = oracle_pool(level.board, level.cut)
            for mines in ([], pool[:2]):
                config = build_config(level, mines, seed=4242)
                state_a, report_a = run_to_completion(config)
                state_b, report_b = run_to_completion(config)
                assert events_to_json(state_a.events) == events_to_json(state_b.events)
                assert report_a == report_b


def test_oracle_mine_safety():
    with criterion("oracle mines never trap healthy critters"):
        for level in (tutorial_level(), forked_level(), ridge_level()):
            for tile in level.board.walkable_tiles():
                mine = oracle_mine(level.board, level.cut, tile)
                if mine is None:
                    continue
                config = GameConfig(
                    board=level.board, cut=level.cut, mutants=(),
                    n_healthy=level.n_critters, mine_budget=level.mine_budget,
                    mines=(mine,), seed=0,
                )
                for seed in range(100):
                    state, report = run_to_completion(
                        GameConfig(**{**config.__dict__, "seed": seed})
                    )
                    assert report.healthy_trapped == 0, (level.id, tile, seed)


def test_input_partitioning_level():
    with criterion("input partitioning on the two-route board"):
        level = forked_level()
        mutants = build_mutants(level)
        cond_mutant = mutants[1]  # broken dirt condition
        pool = oracle_pool(level.board, level.cut)
        matrix = kill_matrix(level.board, level.cut, mutants, pool)

        branch_a = {(x, 7) for x in range(3, 8)}
        branch_b = {(3, 9), (4, 9)}
        by_tile = {mine.position: idx for idx, mine in enumerate(pool)}

        # a branch-local mine can catch the mutant, but not on every route
        a_mine = by_tile[(3, 7)]
        assert matrix.cell(a_mine, cond_mutant.id) == POSSIBLE
        # and no mine anywhere guarantees it alone
        assert all(matrix.cell(i, cond_mutant.id) != GUARANTEED for i in range(len(pool)))

        chosen, certificate = minimal_mine_set(level.board, level.cut, mutants)
        assert certificate.status == "EXACT"
        tiles = {m.position for m in chosen}
        assert tiles & branch_a, "minimal set needs a mine on the dirt branch"
        assert tiles & branch_b, "minimal set needs a mine on the other branch"


def test_interpreter_properties():
    with criterion("interpreter properties"):
        gen = ProgramGen(777)
        for i in range(1000):
            program = gen.critter_program() if i % 2 == 0 else gen.test_program()
            assert loads(dumps(program)) == program
            assert program_from_doc(json.loads(json.dumps(program_to_doc(program)))) == program

        # sieve of Eratosthenes as the independent primality oracle
        limit = 10_000
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for p in range(2, int(limit**0.5) + 1):
            if sieve[p]:
                sieve[p * p :: p] = b"\x00" * len(sieve[p * p :: p])
        for n in range(-limit, limit + 1):
            expected = n >= 2 and bool(sieve[n])
            assert is_prime(n) == expected, n

        even, odd = _PREDICATES[Pred.EVEN], _PREDICATES[Pred.ODD]
        for n in range(-limit, limit + 1):
            assert even(n) != odd(n)

        from crittermine.interp import eval_test

        state_gen = ProgramGen(778)
        for _ in range(300):
            state = state_gen.critter_state()
            test = state_gen.test_program()
            before = state.snapshot()
            eval_test(test, state, tutorial_level().board.tile_input((1, 8)))
            assert state.snapshot() == before


def test_score_properties():
    with criterion("score properties"):
        level = tutorial_level()
        mines = tutorial_prescribed_mines()
        config = build_config(level, mines, seed=9)
        state, report = run_to_completion(config)
        assert report.total >= 0
        # replay audit: the event log alone reproduces the reported numbers
        assert score_from_events(state.events, config, len(state.critters)) == report

        # non-increasing in mines used beyond the budget, all else fixed
        totals = []
        for used in range(0, 8):
            synthetic = score_from_events(state.events, _with_mines(config, used), len(state.critters))
            totals.append(synthetic.total)
        beyond = totals[level.mine_budget :]
        assert all(a >= b for a, b in zip(beyond, beyond[1:]))
        assert totals[0] == totals[level.mine_budget]  # within budget: no deduction

        # the clamp holds even for catastrophic play
        hostile = [
            {"tick": 40, "critter": c, "kind": "trapped", "data": {}}
            for c in ("h0", "h1", "h2")
        ]
        clamped = score_from_events(hostile, _with_mines(config, 8), 6)
        assert clamped.total == 0


def _with_mines(config, count):
    from crittermine.blocks import Assert, Attr, AttrRef, ColorLit, Equals, TestProgram
    from crittermine.engine import Mine

    test = TestProgram(asserts=(Assert(AttrRef(Attr.SHIRT_COLOR), Equals(ColorLit(Color.RED))),))
    walkables = config.board.walkable_tiles()
    mines = tuple(Mine(pos, test) for pos in walkables[:count])
    return GameConfig(**{**config.__dict__, "mines": mines})


def test_service_contract(tmp_path):
    with criterion("service contract"):
        app = create_app(tmp_path)
        with TestClient(app) as client:
            mines = [mine_to_doc(m) for m in tutorial_prescribed_mines()]

            water = dict(mines[0])
            water["x"], water["y"] = 3, 4
            res = client.post(
                "/api/games", json={"levelId": "dirt-trail", "mines": [water], "seed": 1}
            )
            assert res.status_code == 422

            a = client.post("/api/games", json={"levelId": "dirt-trail", "mines": mines, "seed": 7})
            b = client.post("/api/games", json={"levelId": "dirt-trail", "mines": mines, "seed": 7})
            assert a.status_code == b.status_code == 201
            assert a.content == b.content

            game = a.json()
            forged = client.post(
                "/api/scores",
                json={"player": "eve", "gameId": game["gameId"], "total": game["score"]["total"] + 1},
            )
            assert forged.status_code == 409
            assert forged.json()["code"] == "ReplayMismatch"

            honest = client.post(
                "/api/scores",
                json={"player": "ada", "gameId": game["gameId"], "total": game["score"]["total"]},
            )
            assert honest.status_code == 200
