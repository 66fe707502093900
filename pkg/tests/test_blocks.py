"""Node paths: resolve, replace, remove, and path canonicality."""

import pytest

from crittermine.blocks import (
    Assign,
    Attr,
    AttrRef,
    Color,
    ColorLit,
    IntLit,
    KindMismatch,
    PathInvalid,
    TextureIs,
    Texture,
    path,
    remove,
    replace,
    resolve,
    walk,
)
from crittermine.fixtures import tutorial_cut

from gen import ProgramGen


def test_resolve_init_value():
    cut = tutorial_cut()
    assert resolve(cut, path("init", 0, 1)) == ColorLit(Color.RED)


def test_resolve_if_condition():
    cut = tutorial_cut()
    assert resolve(cut, path("loop", 0, 0)) == TextureIs(Texture.DIRT)


def test_replace_single_node():
    cut = tutorial_cut()
    changed = replace(cut, path("init", 0, 1), ColorLit(Color.GREEN))
    assert resolve(changed, path("init", 0, 1)) == ColorLit(Color.GREEN)
    assert changed.loop == cut.loop
    # the original is untouched
    assert resolve(cut, path("init", 0, 1)) == ColorLit(Color.RED)


def test_resolve_out_of_range():
    cut = tutorial_cut()
    with pytest.raises(PathInvalid):
        resolve(cut, path("init", 5))
    with pytest.raises(PathInvalid):
        resolve(cut, path("loop", 0, 9))


def test_resolve_wrong_section():
    with pytest.raises(PathInvalid):
        resolve(tutorial_cut(), path("setup", 0))


def test_path_cannot_end_on_statement_list():
    cut = tutorial_cut()
    # loop[0] is the if; slot 1 is its then-list, which is not a node
    with pytest.raises(PathInvalid):
        resolve(cut, path("loop", 0, 1))


def test_replace_kind_mismatch():
    cut = tutorial_cut()
    with pytest.raises(KindMismatch):
        replace(cut, path("loop", 0, 0), IntLit(3))  # a condition is not an expression
    with pytest.raises(KindMismatch):
        replace(cut, path("init", 0), ColorLit(Color.RED))  # a statement slot


def test_replace_assign_target_constraint():
    cut = tutorial_cut()
    with pytest.raises(KindMismatch):
        replace(cut, path("init", 0, 0), IntLit(1))


def test_remove_statement():
    cut = tutorial_cut()
    trimmed = remove(cut, path("loop", 0))
    assert trimmed.loop == ()
    assert trimmed.init == cut.init


def test_remove_non_list_slot_rejected():
    cut = tutorial_cut()
    with pytest.raises(KindMismatch):
        remove(cut, path("init", 0, 1))


def test_walk_paths_are_canonical():
    gen = ProgramGen(7)
    for _ in range(50):
        program = gen.critter_program()
        seen = set()
        for p, node in walk(program):
            assert p not in seen, f"duplicate path {p}"
            seen.add(p)
            assert resolve(program, p) == node


def test_replace_roundtrip_identity_on_generated_programs():
    gen = ProgramGen(11)
    for _ in range(30):
        program = gen.critter_program()
        for p, node in walk(program):
            assert replace(program, p, node) == program
