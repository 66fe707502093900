"""Offline level analysis by exhaustive route execution.

Because routes strictly descend the BFS distance field, every board has a
finite route set, and a program's observable behavior on a board can be
computed exactly by simulating it along each enumerated route.  That
exhaustive semantics powers everything here:

* the *state envelope* of a program: per tile, the set of post-loop states
  any route-following critter can show there;
* *oracle mines*: at a given tile, assert exactly the attributes whose value
  is identical across the healthy envelope -- safe by construction, no
  healthy critter can ever fail one;
* the *kill matrix*: per (candidate mine, mutant), whether placing only that
  mine traps the mutant on every route (GUARANTEED), on at least one
  (POSSIBLE), or never;
* the *minimal mine set*: the smallest set of safe oracle mines that traps
  every mutant on every route -- exact branch-and-bound for small pools, a
  greedy cover above that;
* *equivalent mutants*: mutants whose envelope matches the healthy one
  everywhere, hence undetectable by any safe mine on this board.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .blocks import Assert, AttrRef, Attr, Color, ColorLit, CritterProgram, Equals, IntLit, TestProgram
from .board import Board, Coord, Route, enumerate_routes
from .engine import Mine
from .interp import CritterState, eval_test, init_state, step_loop
from .mutation import Mutant

DEFAULT_ROUTE_CAP = 10_000
EXACT_SEARCH_POOL_LIMIT = 20

GUARANTEED = "GUARANTEED"
POSSIBLE = "POSSIBLE"
NEVER = "NEVER"


def trace_route(board: Board, program: CritterProgram, route: Route) -> list[tuple[Coord, CritterState]]:
    """Post-loop state at every tile of one route."""
    state = init_state(program)
    out = []
    for pos in route:
        state = step_loop(program, state, board.tile_input(pos))
        out.append((pos, state))
    return out


def state_envelope(
    board: Board, program: CritterProgram, cap: int = DEFAULT_ROUTE_CAP
) -> dict[Coord, set[tuple]]:
    """Per tile: the set of distinct post-loop state snapshots over all routes."""
    envelope: dict[Coord, set[tuple]] = {}
    for route in enumerate_routes(board, cap):
        for pos, state in trace_route(board, program, route):
            envelope.setdefault(pos, set()).add(state.snapshot())
    return envelope


_ORACLE_ATTRS = (Attr.SHIRT_COLOR, Attr.HAIR_COLOR, Attr.SIZE)


def oracle_mine(
    board: Board, cut: CritterProgram, tile: Coord, cap: int = DEFAULT_ROUTE_CAP
) -> Optional[Mine]:
    """A mine asserting every attribute that is constant at this tile.

    Returns None when no route visits the tile or no attribute is constant
    across the healthy envelope there.  By construction the result can never
    trap a healthy critter on any enumerated route.
    """
    if not board.walkable_at(tile):
        return None
    states = state_envelope(board, cut, cap).get(tile)
    if not states:
        return None
    asserts: list[Assert] = []
    for attr_index, attr in enumerate(_ORACLE_ATTRS):
        values = {snapshot[attr_index] for snapshot in states}
        if len(values) != 1:
            continue
        value = next(iter(values))
        matcher = Equals(ColorLit(value)) if isinstance(value, Color) else Equals(IntLit(value))
        asserts.append(Assert(AttrRef(attr), matcher))
    if not asserts:
        return None
    return Mine(tile, TestProgram(setup=(), asserts=tuple(asserts)))


def _kill_table(
    board: Board,
    mutants: tuple[Mutant, ...],
    mines: list[Mine],
    routes: list[Route],
) -> dict[tuple[int, int], set[int]]:
    """(mine index, mutant index) -> indices of routes where the mine traps it."""
    positions = {m.position: i for i, m in enumerate(mines)}
    table: dict[tuple[int, int], set[int]] = {}
    for mu_idx, mutant in enumerate(mutants):
        for r_idx, route in enumerate(routes):
            for pos, state in trace_route(board, mutant.program, route):
                mine_idx = positions.get(pos)
                if mine_idx is None:
                    continue
                verdict = eval_test(mines[mine_idx].test, state, board.tile_input(pos))
                if not verdict.passed:
                    table.setdefault((mine_idx, mu_idx), set()).add(r_idx)
    return table


@dataclass(frozen=True)
class KillMatrix:
    mines: tuple[Mine, ...]
    mutant_ids: tuple[str, ...]
    cells: tuple[tuple[str, ...], ...]  # cells[mine][mutant] in {GUARANTEED, POSSIBLE, NEVER}

    def cell(self, mine_index: int, mutant_id: str) -> str:
        return self.cells[mine_index][self.mutant_ids.index(mutant_id)]


def kill_matrix(
    board: Board,
    cut: CritterProgram,
    mutants: tuple[Mutant, ...],
    candidate_mines: list[Mine],
    cap: int = DEFAULT_ROUTE_CAP,
) -> KillMatrix:
    routes = enumerate_routes(board, cap)
    table = _kill_table(board, mutants, candidate_mines, routes)
    n_routes = len(routes)
    cells = []
    for mine_idx in range(len(candidate_mines)):
        row = []
        for mu_idx in range(len(mutants)):
            killed = table.get((mine_idx, mu_idx), set())
            if len(killed) == n_routes:
                row.append(GUARANTEED)
            elif killed:
                row.append(POSSIBLE)
            else:
                row.append(NEVER)
        cells.append(tuple(row))
    return KillMatrix(tuple(candidate_mines), tuple(m.id for m in mutants), tuple(cells))


@dataclass(frozen=True)
class Certificate:
    status: str  # "EXACT" | "HEURISTIC" | "UNSOLVABLE"
    pool_size: int
    undetectable: tuple[str, ...] = ()  # mutant ids missed even by the full pool


def oracle_pool(board: Board, cut: CritterProgram, cap: int = DEFAULT_ROUTE_CAP) -> list[Mine]:
    """Safe candidate mines: the oracle mine of every walkable tile that has one."""
    pool = []
    for tile in board.walkable_tiles():
        mine = oracle_mine(board, cut, tile, cap)
        if mine is not None:
            pool.append(mine)
    return pool


def minimal_mine_set(
    board: Board,
    cut: CritterProgram,
    mutants: tuple[Mutant, ...],
    cap: int = DEFAULT_ROUTE_CAP,
) -> tuple[list[Mine], Certificate]:
    """Smallest set of safe mines trapping every mutant on every route.

    The universe to cover is every (mutant, route) pair; a candidate mine
    covers a pair when, placed alone, it traps that mutant on that route.
    Pools of up to 20 candidates are solved exactly by branch-and-bound;
    larger pools fall back to greedy set cover and say so.
    """
    routes = enumerate_routes(board, cap)
    pool = oracle_pool(board, cut, cap)
    table = _kill_table(board, mutants, pool, routes)

    n_routes = len(routes)
    universe_size = len(mutants) * n_routes
    covers: list[int] = []  # bitmask over (mutant, route) pairs per pool mine
    for mine_idx in range(len(pool)):
        mask = 0
        for mu_idx in range(len(mutants)):
            for r_idx in table.get((mine_idx, mu_idx), ()):
                mask |= 1 << (mu_idx * n_routes + r_idx)
        covers.append(mask)

    full = (1 << universe_size) - 1
    reachable = 0
    for mask in covers:
        reachable |= mask
    if reachable != full:
        missed = set()
        for mu_idx in range(len(mutants)):
            for r_idx in range(n_routes):
                if not reachable & (1 << (mu_idx * n_routes + r_idx)):
                    missed.add(mutants[mu_idx].id)
        return [], Certificate("UNSOLVABLE", len(pool), tuple(sorted(missed)))

    if not mutants:
        return [], Certificate("EXACT", len(pool))

    if len(pool) <= EXACT_SEARCH_POOL_LIMIT:
        chosen = _exact_cover(covers, full)
        status = "EXACT"
    else:
        chosen = _greedy_cover(covers, full)
        status = "HEURISTIC"
    return [pool[i] for i in chosen], Certificate(status, len(pool))


def _greedy_cover(covers: list[int], full: int) -> list[int]:
    chosen: list[int] = []
    covered = 0
    while covered != full:
        best, best_gain = -1, 0
        for i, mask in enumerate(covers):
            gain = (mask & ~covered).bit_count()
            if gain > best_gain:
                best, best_gain = i, gain
        chosen.append(best)
        covered |= covers[best]
    return chosen


def _exact_cover(covers: list[int], full: int) -> list[int]:
    """Branch-and-bound minimum set cover over bitmasks."""
    best = _greedy_cover(covers, full)

    def element_candidates(covered: int) -> list[int]:
        # Branch on the uncovered element covered by the fewest sets.
        remaining = full & ~covered
        chosen_elem, chosen_sets = -1, None
        e = remaining
        while e:
            bit = e & -e
            sets_here = [i for i, m in enumerate(covers) if m & bit]
            if chosen_sets is None or len(sets_here) < len(chosen_sets):
                chosen_elem, chosen_sets = bit, sets_here
            e &= e - 1
        return chosen_sets or []

    def dfs(covered: int, picked: list[int]) -> None:
        nonlocal best
        if covered == full:
            if len(picked) < len(best):
                best = list(picked)
            return
        remaining = (full & ~covered).bit_count()
        max_gain = max(((m & ~covered).bit_count() for m in covers), default=0)
        if max_gain == 0:
            return
        if len(picked) + math.ceil(remaining / max_gain) >= len(best):
            return
        candidates = element_candidates(covered)
        candidates.sort(key=lambda i: (covers[i] & ~covered).bit_count(), reverse=True)
        for i in candidates:
            picked.append(i)
            dfs(covered | covers[i], picked)
            picked.pop()

    dfs(0, [])
    return best


def equivalent_mutants(
    board: Board,
    cut: CritterProgram,
    mutants: tuple[Mutant, ...],
    cap: int = DEFAULT_ROUTE_CAP,
) -> list[str]:
    """Ids of mutants observationally identical to the healthy program here."""
    healthy = state_envelope(board, cut, cap)
    out = []
    for mutant in mutants:
        if state_envelope(board, mutant.program, cap) == healthy:
            out.append(mutant.id)
    return out


def brute_force_minimum_cover(covers: list[int], full: int) -> Optional[list[int]]:
    """Exhaustive reference search; exponential, for verification only."""
    for size in range(0, len(covers) + 1):
        for combo in combinations(range(len(covers)), size):
            mask = 0
            for i in combo:
                mask |= covers[i]
            if mask == full:
                return list(combo)
    return None


@dataclass(frozen=True)
class AnalysisReport:
    matrix: KillMatrix
    minimal_mines: tuple[Mine, ...]
    certificate: Certificate
    equivalent: tuple[str, ...]
    route_count: int

    def to_doc(self) -> dict:
        from .engine import mine_to_doc

        return {
            "routeCount": self.route_count,
            "mines": [mine_to_doc(m) for m in self.matrix.mines],
            "mutants": list(self.matrix.mutant_ids),
            "matrix": [list(row) for row in self.matrix.cells],
            "minimalMines": [mine_to_doc(m) for m in self.minimal_mines],
            "certificate": {
                "status": self.certificate.status,
                "poolSize": self.certificate.pool_size,
                "undetectable": list(self.certificate.undetectable),
            },
            "equivalentMutants": list(self.equivalent),
        }


def analyze_level(
    board: Board,
    cut: CritterProgram,
    mutants: tuple[Mutant, ...],
    cap: int = DEFAULT_ROUTE_CAP,
) -> AnalysisReport:
    """Full designer-facing report over the safe-oracle candidate pool."""
    routes = enumerate_routes(board, cap)
    pool = oracle_pool(board, cut, cap)
    matrix = kill_matrix(board, cut, mutants, pool, cap)
    minimal, certificate = minimal_mine_set(board, cut, mutants, cap)
    equivalent = equivalent_mutants(board, cut, mutants, cap)
    return AnalysisReport(matrix, tuple(minimal), certificate, tuple(equivalent), len(routes))
