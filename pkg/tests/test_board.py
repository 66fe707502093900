"""Board geometry, distance fields and route generation."""

import random

import pytest

from crittermine.blocks import Texture
from crittermine.board import (
    Board,
    BoardInvalid,
    NoRoute,
    RouteExplosion,
    board_from_doc,
    board_to_doc,
    critter_stream,
    distance_field,
    enumerate_routes,
    make_board,
    random_route,
    walkable,
)


def brute_force_routes(board):
    """Independent oracle: DFS over all strictly-descending paths."""
    dist = distance_field(board)
    routes = []

    def go(pos, acc):
        if pos == board.tower:
            routes.append(tuple(acc))
            return
        x, y = pos
        for q in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if dist.get(q) == dist[pos] - 1:
                go(q, acc + [q])

    go(board.spawn, [board.spawn])
    return routes


def test_walkable_textures():
    assert walkable(Texture.GRASS)
    assert walkable(Texture.DIRT)
    assert walkable(Texture.ICE)
    assert not walkable(Texture.WATER)
    assert not walkable(Texture.WOOD)


def test_distance_field_on_strip(strip_board):
    dist = distance_field(strip_board)
    assert [dist[(x, 1)] for x in (1, 2, 3)] == [2, 1, 0]


def test_water_is_unreachable():
    board = make_board(["DWD"], spawn=(1, 1), tower=(3, 1))
    dist = distance_field(board)
    assert (2, 1) not in dist
    assert (1, 1) not in dist  # cut off by the water tile
    with pytest.raises(NoRoute):
        random_route(board, random.Random(0))


def test_unique_route_on_strip(strip_board):
    route = random_route(strip_board, random.Random(0))
    assert route == ((1, 1), (2, 1), (3, 1))


def test_square_board_has_two_routes(square_board):
    routes = enumerate_routes(square_board)
    assert routes == brute_force_routes(square_board)
    assert len(routes) == 2
    assert set(routes) == {
        ((1, 1), (2, 1), (2, 2)),
        ((1, 1), (1, 2), (2, 2)),
    }


def test_both_routes_occur_over_seeds(square_board):
    seen = set()
    for seed in range(50):
        seen.add(random_route(square_board, critter_stream(seed, 0)))
    assert len(seen) == 2


def test_same_stream_same_route(square_board):
    for seed in range(10):
        a = random_route(square_board, critter_stream(seed, 3))
        b = random_route(square_board, critter_stream(seed, 3))
        assert a == b


def test_route_cap(square_board):
    with pytest.raises(RouteExplosion):
        enumerate_routes(square_board, cap=1)


def test_random_routes_within_enumeration(all_fixture_levels, square_board, strip_board):
    boards = [level.board for level in all_fixture_levels] + [square_board, strip_board]
    for board in boards:
        allowed = set(enumerate_routes(board))
        dist = distance_field(board)
        for seed in range(30):
            route = random_route(board, critter_stream(seed, 1))
            assert route in allowed
            assert len(route) == dist[board.spawn] + 1


def test_route_frequency_is_uniform(square_board):
    counts = {}
    for seed in range(10_000):
        route = random_route(square_board, critter_stream(seed, 0))
        counts[route] = counts.get(route, 0) + 1
    for n in counts.values():
        assert abs(n / 10_000 - 0.5) <= 0.05


def test_board_shape_validation():
    with pytest.raises(BoardInvalid):
        make_board([], spawn=(1, 1), tower=(2, 1))
    with pytest.raises(BoardInvalid):
        make_board(["GG", "G"], spawn=(1, 1), tower=(2, 1))
    with pytest.raises(BoardInvalid):
        make_board(["GX"], spawn=(1, 1), tower=(2, 1))
    with pytest.raises(BoardInvalid):
        Board(0, 1, (), (1, 1), (1, 1))
    with pytest.raises(BoardInvalid):
        make_board(["GG"], spawn=(5, 1), tower=(2, 1))


def test_board_doc_roundtrip(all_fixture_levels):
    for level in all_fixture_levels:
        doc = board_to_doc(level.board)
        assert board_from_doc(doc) == level.board


def test_board_doc_rejects_mismatched_size(strip_board):
    doc = board_to_doc(strip_board)
    doc["width"] = 5
    from crittermine.serialize import SchemaError

    with pytest.raises(SchemaError):
        board_from_doc(doc)
