"""Board geometry, walkability and route generation.

A board is a small grid of textured tiles with a spawn point and a tower.
Critters walk on grass, dirt and ice only.  A route is a 4-neighbor path
from spawn to tower along which the BFS hop-distance to the tower strictly
decreases; that discipline guarantees termination, keeps the route set
finite and enumerable, and still leaves genuine branching on multi-path
boards.  Route randomness comes exclusively from the caller-provided stream,
so simulations replay exactly.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .blocks import Texture
from .interp import TileInput

WALKABLE_TEXTURES = frozenset({Texture.GRASS, Texture.DIRT, Texture.ICE})

MAX_SIDE = 32
DEFAULT_SIDE = 16

# Tie-break order everywhere a tile has several descending neighbors.
_NEIGHBOR_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))

TILE_CODES = {
    Texture.GRASS: "G",
    Texture.DIRT: "D",
    Texture.WATER: "W",
    Texture.ICE: "I",
    Texture.WOOD: "O",
}
_CODE_TEXTURES = {v: k for k, v in TILE_CODES.items()}

Coord = tuple[int, int]
Route = tuple[Coord, ...]


class BoardInvalid(Exception):
    pass


class NoRoute(Exception):
    """Spawn cannot reach the tower over walkable tiles."""


class RouteExplosion(Exception):
    def __init__(self, cap: int):
        super().__init__(f"more than {cap} routes")
        self.cap = cap


def walkable(t: Texture) -> bool:
    return t in WALKABLE_TEXTURES


@dataclass(frozen=True)
class Board:
    width: int
    height: int
    tiles: tuple[Texture, ...]  # row-major, index = (y-1)*width + (x-1)
    spawn: Coord
    tower: Coord

    # Only structural shape is enforced here; walkability of spawn/tower and
    # their distinctness are level-validation concerns, so that a broken
    # level document can still be loaded and reported on.
    def __post_init__(self) -> None:
        if not (1 <= self.width <= MAX_SIDE and 1 <= self.height <= MAX_SIDE):
            raise BoardInvalid(f"board sides must be in 1..{MAX_SIDE}")
        if len(self.tiles) != self.width * self.height:
            raise BoardInvalid("tile count does not match width*height")
        for name, pos in (("spawn", self.spawn), ("tower", self.tower)):
            if not self.in_bounds(pos):
                raise BoardInvalid(f"{name} {pos} out of bounds")

    def in_bounds(self, pos: Coord) -> bool:
        x, y = pos
        return 1 <= x <= self.width and 1 <= y <= self.height

    def texture(self, pos: Coord) -> Texture:
        x, y = pos
        return self.tiles[(y - 1) * self.width + (x - 1)]

    def tile_input(self, pos: Coord) -> TileInput:
        return TileInput(self.texture(pos), pos[0], pos[1])

    def walkable_at(self, pos: Coord) -> bool:
        return self.in_bounds(pos) and walkable(self.texture(pos))

    def walkable_tiles(self) -> list[Coord]:
        return [
            (x, y)
            for y in range(1, self.height + 1)
            for x in range(1, self.width + 1)
            if walkable(self.texture((x, y)))
        ]

    def neighbors(self, pos: Coord) -> list[Coord]:
        x, y = pos
        out = []
        for dx, dy in _NEIGHBOR_STEPS:
            q = (x + dx, y + dy)
            if self.walkable_at(q):
                out.append(q)
        return out


def make_board(rows: list[str], spawn: Coord, tower: Coord) -> Board:
    """Build a board from one-letter texture codes, one string per row."""
    height = len(rows)
    if height == 0:
        raise BoardInvalid("no rows")
    width = len(rows[0])
    tiles: list[Texture] = []
    for y, row in enumerate(rows, start=1):
        if len(row) != width:
            raise BoardInvalid(f"row {y} has length {len(row)}, expected {width}")
        for x, code in enumerate(row, start=1):
            if code not in _CODE_TEXTURES:
                raise BoardInvalid(f"unknown tile code {code!r} at ({x},{y})")
            tiles.append(_CODE_TEXTURES[code])
    return Board(width, height, tuple(tiles), spawn, tower)


def board_to_doc(board: Board) -> dict:
    rows = []
    for y in range(1, board.height + 1):
        rows.append("".join(TILE_CODES[board.texture((x, y))] for x in range(1, board.width + 1)))
    return {
        "width": board.width,
        "height": board.height,
        "tiles": rows,
        "spawn": list(board.spawn),
        "tower": list(board.tower),
    }


def board_from_doc(doc: dict) -> Board:
    from .serialize import SchemaError, _require  # shared strict-schema helpers

    d = _require(doc, {"width", "height", "tiles", "spawn", "tower"}, "board")
    rows = d["tiles"]
    if not isinstance(rows, list) or not all(isinstance(r, str) for r in rows):
        raise SchemaError("tiles must be a list of row strings", "board.tiles")
    spawn = d["spawn"]
    tower = d["tower"]
    for name, raw in (("spawn", spawn), ("tower", tower)):
        if not (isinstance(raw, list) and len(raw) == 2 and all(isinstance(v, int) for v in raw)):
            raise SchemaError(f"{name} must be [x, y]", f"board.{name}")
    try:
        board = make_board(rows, (spawn[0], spawn[1]), (tower[0], tower[1]))
    except BoardInvalid as e:
        raise SchemaError(str(e), "board") from None
    if board.width != d["width"] or board.height != d["height"]:
        raise SchemaError("declared width/height do not match the tile rows", "board")
    return board


def distance_field(board: Board) -> dict[Coord, int]:
    """BFS hop-distance to the tower; unreachable or unwalkable tiles are absent."""
    dist = {board.tower: 0}
    queue = deque([board.tower])
    while queue:
        pos = queue.popleft()
        for q in board.neighbors(pos):
            if q not in dist:
                dist[q] = dist[pos] + 1
                queue.append(q)
    return dist


def random_route(board: Board, rng: random.Random) -> Route:
    """Walk from spawn to tower, dropping one BFS level per step.

    At every branch the next tile is drawn uniformly from the neighbors one
    level closer to the tower, using only the given stream.
    """
    dist = distance_field(board)
    if board.spawn not in dist:
        raise NoRoute(f"spawn {board.spawn} cannot reach the tower")
    pos = board.spawn
    route = [pos]
    while pos != board.tower:
        closer = [q for q in board.neighbors(pos) if dist.get(q) == dist[pos] - 1]
        pos = closer[rng.randrange(len(closer))]
        route.append(pos)
    return tuple(route)


def enumerate_routes(board: Board, cap: int = 10_000) -> list[Route]:
    """All distance-descending routes, in deterministic DFS order."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    dist = distance_field(board)
    if board.spawn not in dist:
        raise NoRoute(f"spawn {board.spawn} cannot reach the tower")
    routes: list[Route] = []
    prefix: list[Coord] = [board.spawn]

    def descend(pos: Coord) -> None:
        if pos == board.tower:
            if len(routes) >= cap:
                raise RouteExplosion(cap)
            routes.append(tuple(prefix))
            return
        for q in board.neighbors(pos):
            if dist.get(q) == dist[pos] - 1:
                prefix.append(q)
                descend(q)
                prefix.pop()

    descend(board.spawn)
    return routes


def critter_stream(seed: int, index: int) -> random.Random:
    """Independent per-critter stream; string seeding is stable everywhere."""
    return random.Random(f"{seed}/{index}")


def spawn_order_stream(seed: int) -> random.Random:
    return random.Random(f"{seed}/spawn")
