"""Bundled levels, one per category.

``dirt-trail`` is the worked tutorial scenario: a single-route board whose
healthy critter starts with a red shirt and turns blue on dirt.  Its
showcase mutant carries two edits (wrong initial color plus a broken dirt
condition); the two single-edit mutants ride along so that the level really
needs both of the classic mines -- one early grass mine asserting red, one
dirt mine asserting blue.  With only one of them placed, one mutant always
walks free.

``forked-paths`` teaches input partitioning: the trail splits into a dirt
branch and a dirt+ice branch that recombine only at the tower approach, so
the shirt color at the shared tiles depends on the route taken and the
condition mutant can only be caught inside the branches -- one mine per
branch, plus a shared early mine for the initialization mutant.

``winding-ridge`` is the advanced course: a conjunction condition gated on
parity, a hair-color rule driven by coordinates, a counting variable in the
size attribute, and four mutants covering all four mutation classes
(including one two-edit mutant).
"""

from __future__ import annotations

from .blocks import (
    And,
    Assert,
    Assign,
    Attr,
    AttrRef,
    BinOp,
    Color,
    ColorLit,
    Compare,
    CritterProgram,
    Equals,
    If,
    InputRef,
    IntLit,
    Pred,
    Predicate,
    TestProgram,
    Texture,
    TextureIs,
    path,
)
from .board import Board, make_board
from .engine import Mine
from .levels import Category, Level
from .mutation import (
    DropConjunct,
    Mutation,
    MutationClass,
    ReplaceOperator,
    ReplaceValue,
    SwapBranches,
)

_W = 16


def _paint(tiles: dict[tuple[int, int], str]) -> list[str]:
    """A 16x16 forest of wood with the given tiles painted over."""
    rows = []
    for y in range(1, _W + 1):
        rows.append("".join(tiles.get((x, y), "O") for x in range(1, _W + 1)))
    return rows


def _corridor(cells: list[tuple[int, int, str]]) -> dict[tuple[int, int], str]:
    return {(x, y): code for x, y, code in cells}


def tutorial_board() -> Board:
    cells = [(x, 8, "G") for x in (1, 2, 3)]
    cells += [(x, 8, "D") for x in range(4, 10)]
    cells += [(x, 8, "G") for x in (10, 11, 12)]
    tiles = _corridor(cells)
    # a pond, for scenery and for mine-placement rejection tests
    for x in range(3, 7):
        tiles[(x, 4)] = "W"
    return make_board(_paint(tiles), spawn=(1, 8), tower=(12, 8))


def tutorial_cut() -> CritterProgram:
    return CritterProgram(
        init=(Assign(AttrRef(Attr.SHIRT_COLOR), ColorLit(Color.RED)),),
        loop=(
            If(
                TextureIs(Texture.DIRT),
                then=(Assign(AttrRef(Attr.SHIRT_COLOR), ColorLit(Color.BLUE)),),
            ),
        ),
    )


_TUTORIAL_INIT_EDIT = Mutation(
    MutationClass.INITIALIZATION, path("init", 0, 1), ReplaceValue(Color.GREEN)
)
_TUTORIAL_COND_EDIT = Mutation(
    MutationClass.CONDITION, path("loop", 0, 0), ReplaceValue(Texture.ICE)
)


def tutorial_level() -> Level:
    return Level(
        id="dirt-trail",
        name="The Dirt Trail",
        category=Category.TUTORIAL,
        board=tutorial_board(),
        cut=tutorial_cut(),
        mutants=(
            (_TUTORIAL_INIT_EDIT, _TUTORIAL_COND_EDIT),
            (_TUTORIAL_INIT_EDIT,),
            (_TUTORIAL_COND_EDIT,),
        ),
        n_critters=3,
        mine_budget=2,
        difficulty=1,
    )


def tutorial_prescribed_mines() -> list[Mine]:
    """The level's intended solution: assert the shirt before and after dirt."""
    return [
        Mine(
            (2, 8),
            TestProgram(
                asserts=(Assert(AttrRef(Attr.SHIRT_COLOR), Equals(ColorLit(Color.RED))),)
            ),
        ),
        Mine(
            (6, 8),
            TestProgram(
                asserts=(Assert(AttrRef(Attr.SHIRT_COLOR), Equals(ColorLit(Color.BLUE))),)
            ),
        ),
    ]


def forked_board() -> Board:
    cells = [(1, 8, "G"), (2, 8, "G")]
    cells += [(2, 7, "G"), (3, 7, "D"), (4, 7, "D"), (5, 7, "G"), (6, 7, "G"), (7, 7, "G")]
    cells += [(2, 9, "G"), (3, 9, "D"), (4, 9, "G"), (5, 9, "I"), (6, 9, "G"), (7, 9, "G")]
    cells += [(7, 8, "G"), (8, 8, "G")]
    tiles = _corridor(cells)
    for x in range(11, 15):
        tiles[(x, 3)] = "W"
    return make_board(_paint(tiles), spawn=(1, 8), tower=(8, 8))


def forked_cut() -> CritterProgram:
    return CritterProgram(
        init=(Assign(AttrRef(Attr.SHIRT_COLOR), ColorLit(Color.RED)),),
        loop=(
            If(
                TextureIs(Texture.DIRT),
                then=(Assign(AttrRef(Attr.SHIRT_COLOR), ColorLit(Color.BLUE)),),
            ),
            If(
                TextureIs(Texture.ICE),
                then=(Assign(AttrRef(Attr.SHIRT_COLOR), ColorLit(Color.GREEN)),),
            ),
        ),
    )


def forked_level() -> Level:
    return Level(
        id="forked-paths",
        name="Forked Paths",
        category=Category.BEGINNER,
        board=forked_board(),
        cut=forked_cut(),
        mutants=(
            (
                Mutation(
                    MutationClass.INITIALIZATION, path("init", 0, 1), ReplaceValue(Color.YELLOW)
                ),
            ),
            (
                Mutation(
                    MutationClass.CONDITION, path("loop", 0, 0), ReplaceValue(Texture.WOOD)
                ),
            ),
        ),
        n_critters=4,
        mine_budget=3,
        difficulty=3,
    )


def ridge_board() -> Board:
    cells = [(x, 2, "G") for x in (1, 2, 3)]
    cells += [(x, 2, "D") for x in (4, 5, 6)]
    cells += [(x, 2, "I") for x in (7, 8, 9)]
    cells += [(10, 2, "G")]
    cells += [(10, y, "G") for y in (3, 4, 5)]
    cells += [(10, y, "D") for y in (6, 7, 8)]
    cells += [(10, y, "G") for y in (9, 10, 11)]
    tiles = _corridor(cells)
    for y in range(13, 16):
        tiles[(3, y)] = "W"
    return make_board(_paint(tiles), spawn=(1, 2), tower=(10, 11))


def ridge_cut() -> CritterProgram:
    return CritterProgram(
        init=(
            Assign(AttrRef(Attr.SHIRT_COLOR), ColorLit(Color.RED)),
            Assign(AttrRef(Attr.HAIR_COLOR), ColorLit(Color.YELLOW)),
            Assign(AttrRef(Attr.SIZE), IntLit(4)),
        ),
        loop=(
            If(
                And(TextureIs(Texture.DIRT), Predicate(Pred.EVEN, AttrRef(Attr.SIZE))),
                then=(Assign(AttrRef(Attr.SHIRT_COLOR), ColorLit(Color.BLUE)),),
                otherwise=(Assign(AttrRef(Attr.SHIRT_COLOR), ColorLit(Color.RED)),),
            ),
            If(
                Compare(">", InputRef("y"), IntLit(6)),
                then=(Assign(AttrRef(Attr.HAIR_COLOR), ColorLit(Color.PURPLE)),),
            ),
            Assign(AttrRef(Attr.SIZE), BinOp("+", AttrRef(Attr.SIZE), IntLit(1))),
        ),
    )


def ridge_level() -> Level:
    return Level(
        id="winding-ridge",
        name="Winding Ridge",
        category=Category.ADVANCED,
        board=ridge_board(),
        cut=ridge_cut(),
        mutants=(
            # dirt alone triggers the color change: the parity conjunct is gone
            (Mutation(MutationClass.CONDITION, path("loop", 0, 0), DropConjunct("right")),),
            # color logic inverted
            (Mutation(MutationClass.BRANCH, path("loop", 0), SwapBranches()),),
            # the step counter runs backwards
            (Mutation(MutationClass.ASSIGNMENT, path("loop", 2, 1), ReplaceOperator("-")),),
            # two edits: off-by-one start size and an off-by-one hair rule
            (
                Mutation(MutationClass.INITIALIZATION, path("init", 2, 1), ReplaceValue(5)),
                Mutation(MutationClass.CONDITION, path("loop", 1, 0), ReplaceOperator(">=")),
            ),
        ),
        n_critters=4,
        mine_budget=2,
        difficulty=5,
    )


def fixture_levels() -> list[Level]:
    return [tutorial_level(), forked_level(), ridge_level()]
