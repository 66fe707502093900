"""Interpreter semantics: init, loop steps, test evaluation, totality."""

import random

from crittermine.blocks import (
    Assert,
    Assign,
    Attr,
    AttrRef,
    BinOp,
    Color,
    ColorLit,
    CritterProgram,
    Equals,
    If,
    InputRef,
    IntLit,
    Pred,
    Satisfies,
    TestProgram,
    TextureIs,
    Texture,
    VarRef,
    path,
)
from crittermine.fixtures import tutorial_cut
from crittermine.interp import (
    INT_LIMIT,
    CritterState,
    TileInput,
    div_trunc,
    eval_test,
    init_state,
    is_prime,
    step_loop,
)

from gen import ProgramGen

SHIRT = AttrRef(Attr.SHIRT_COLOR)
SIZE = AttrRef(Attr.SIZE)

GRASS_TILE = TileInput(Texture.GRASS, 1, 1)
DIRT_TILE = TileInput(Texture.DIRT, 2, 1)


def naive_prime(n: int) -> bool:
    # independent oracle: full trial division
    return n >= 2 and all(n % d != 0 for d in range(2, n))


def test_init_sets_shirt():
    state = init_state(tutorial_cut())
    assert state.shirt_color is Color.RED


def test_empty_init_yields_defaults():
    state = init_state(CritterProgram())
    assert (state.shirt_color, state.hair_color, state.size) == (Color.RED, Color.BROWN, 1)


def test_init_arithmetic():
    program = CritterProgram(init=(Assign(SIZE, BinOp("+", IntLit(2), IntLit(3))),))
    assert init_state(program).size == 5


def test_loop_reacts_to_dirt():
    cut = tutorial_cut()
    state = init_state(cut)
    after = step_loop(cut, state, DIRT_TILE)
    assert after.shirt_color is Color.BLUE
    # the input state is untouched
    assert state.shirt_color is Color.RED


def test_loop_ignores_grass():
    cut = tutorial_cut()
    state = init_state(cut)
    assert step_loop(cut, state, GRASS_TILE) == state


def test_loop_reads_inputs():
    program = CritterProgram(loop=(Assign(SIZE, BinOp("+", SIZE, InputRef("x"))),))
    state = CritterState(size=1)
    assert step_loop(program, state, TileInput(Texture.GRASS, 4, 9)).size == 5


def test_loop_vars_persist_across_iterations():
    program = CritterProgram(
        loop=(
            Assign(VarRef("laps"), BinOp("+", VarRef("laps"), IntLit(1))),
            Assign(SIZE, VarRef("laps")),
        )
    )
    state = init_state(program)
    for expected in (1, 2, 3):
        state = step_loop(program, state, GRASS_TILE)
        assert state.size == expected


def test_eval_test_equality():
    test = TestProgram(asserts=(Assert(SHIRT, Equals(ColorLit(Color.BLUE))),))
    assert eval_test(test, CritterState(shirt_color=Color.BLUE), GRASS_TILE).passed
    verdict = eval_test(test, CritterState(shirt_color=Color.GREEN), GRASS_TILE)
    assert not verdict.passed
    assert verdict.failed_assert == path("asserts", 0)


def test_eval_test_setup_variables():
    test = TestProgram(
        setup=(Assign(VarRef("v"), BinOp("*", IntLit(2), IntLit(3))),),
        asserts=(Assert(SIZE, Equals(VarRef("v"))),),
    )
    assert eval_test(test, CritterState(size=6), GRASS_TILE).passed
    assert not eval_test(test, CritterState(size=7), GRASS_TILE).passed


def test_eval_test_first_failure_wins():
    test = TestProgram(
        asserts=(
            Assert(SIZE, Satisfies(Pred.POSITIVE)),
            Assert(SIZE, Satisfies(Pred.EVEN)),
        )
    )
    verdict = eval_test(test, CritterState(size=-2), GRASS_TILE)
    assert verdict.failed_assert == path("asserts", 0)


def test_eval_test_never_mutates_state():
    gen = ProgramGen(31)
    for _ in range(100):
        state = gen.critter_state()
        test = gen.test_program()
        before = state.snapshot()
        eval_test(test, state, DIRT_TILE)
        assert state.snapshot() == before


def test_step_loop_is_pure():
    gen = ProgramGen(37)
    for _ in range(50):
        program = gen.critter_program()
        state = gen.critter_state()
        tile = TileInput(random.Random(1).choice(list(Texture)), 3, 7)
        assert step_loop(program, state, tile) == step_loop(program, state, tile)


def test_division_truncates_toward_zero():
    assert div_trunc(7, 2) == 3
    assert div_trunc(-7, 2) == -3
    assert div_trunc(7, -2) == -3
    assert div_trunc(-7, -2) == 3


def test_division_by_zero_is_zero():
    program = CritterProgram(loop=(Assign(SIZE, BinOp("/", IntLit(5), IntLit(0))),))
    assert step_loop(program, CritterState(), GRASS_TILE).size == 0


def test_arithmetic_saturates():
    program = CritterProgram(
        loop=(Assign(SIZE, BinOp("*", IntLit(999_999), IntLit(999_999))),)
    )
    assert step_loop(program, CritterState(), GRASS_TILE).size == INT_LIMIT
    program = CritterProgram(loop=(Assign(SIZE, BinOp("-", IntLit(-999_999), IntLit(999_999))),))
    assert step_loop(program, CritterState(), GRASS_TILE).size == -INT_LIMIT


def test_prime_examples():
    assert is_prime(7)
    assert not is_prime(1)
    assert is_prime(2)


def test_prime_agrees_with_trial_division():
    for n in range(-200, 201):
        assert is_prime(n) == naive_prime(n), n


def test_even_odd_partition_and_sign_exclusivity():
    from crittermine.interp import _PREDICATES

    even, odd = _PREDICATES[Pred.EVEN], _PREDICATES[Pred.ODD]
    pos, neg = _PREDICATES[Pred.POSITIVE], _PREDICATES[Pred.NEGATIVE]
    for n in range(-500, 501):
        assert even(n) != odd(n)
        assert not (pos(n) and neg(n))
    assert not pos(0) and not neg(0)
