"""Seeded random program generator for round-trip and mutation fuzzing.

Generates only well-typed programs: variable references are drawn from the
set of variables already assigned, expression types always match their
slots, and init sections never touch tile inputs.  Everything is driven by
one ``random.Random`` so a failing case reproduces from its seed.
"""

from __future__ import annotations

import random

from crittermine.blocks import (
    And,
    Assert,
    Assign,
    Attr,
    AttrRef,
    BIN_OPS,
    BinOp,
    Color,
    ColorLit,
    Compare,
    CritterProgram,
    Equals,
    If,
    InputRef,
    IntLit,
    Not,
    Or,
    Pred,
    Predicate,
    Satisfies,
    TestProgram,
    Texture,
    TextureIs,
    VarRef,
)

INT = "int"
COLOR = "color"

_ATTR_TYPES = {Attr.SHIRT_COLOR: COLOR, Attr.HAIR_COLOR: COLOR, Attr.SIZE: INT}


class ProgramGen:
    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def _expr(self, ty: str, env: dict[str, str], depth: int, inputs_ok: bool):
        rng = self.rng
        typed_vars = [n for n, t in env.items() if t == ty]
        choices = ["lit", "attr"]
        if typed_vars:
            choices.append("var")
        if ty == INT and inputs_ok:
            choices.append("input")
        if ty == INT and depth > 0:
            choices += ["binop", "binop"]
        kind = rng.choice(choices)
        if kind == "lit":
            if ty == INT:
                return IntLit(rng.randint(-20, 20))
            return ColorLit(rng.choice(list(Color)))
        if kind == "attr":
            if ty == INT:
                return AttrRef(Attr.SIZE)
            return AttrRef(rng.choice([Attr.SHIRT_COLOR, Attr.HAIR_COLOR]))
        if kind == "var":
            return VarRef(rng.choice(typed_vars))
        if kind == "input":
            return InputRef(rng.choice(["x", "y"]))
        return BinOp(
            rng.choice(BIN_OPS),
            self._expr(INT, env, depth - 1, inputs_ok),
            self._expr(INT, env, depth - 1, inputs_ok),
        )

    def _cond(self, env: dict[str, str], depth: int):
        rng = self.rng
        kinds = ["compare", "predicate", "texture", "compare"]
        if depth > 0:
            kinds += ["and", "or", "not"]
        kind = rng.choice(kinds)
        if kind == "compare":
            if rng.random() < 0.3:
                ty, ops = COLOR, ["==", "!="]
            else:
                ty, ops = INT, ["==", "!=", "<", "<=", ">", ">="]
            return Compare(
                rng.choice(ops),
                self._expr(ty, env, 1, inputs_ok=True),
                self._expr(ty, env, 1, inputs_ok=True),
            )
        if kind == "predicate":
            return Predicate(rng.choice(list(Pred)), self._expr(INT, env, 1, inputs_ok=True))
        if kind == "texture":
            return TextureIs(rng.choice(list(Texture)))
        if kind == "and":
            return And(self._cond(env, depth - 1), self._cond(env, depth - 1))
        if kind == "or":
            return Or(self._cond(env, depth - 1), self._cond(env, depth - 1))
        return Not(self._cond(env, depth - 1))

    def _assign(self, env: dict[str, str], inputs_ok: bool, vars_ok: bool = True) -> Assign:
        rng = self.rng
        if vars_ok and rng.random() < 0.35:
            name = f"v{rng.randint(0, 3)}"
            ty = env.get(name)
            if ty is None:
                # first assignment anchors the type: keep the new name out of
                # its own right side so the checker can resolve it
                ty = rng.choice([INT, COLOR])
                value = self._expr(ty, env, 2, inputs_ok)
                env[name] = ty
            else:
                value = self._expr(ty, env, 2, inputs_ok)
            return Assign(VarRef(name), value)
        attr = rng.choice(list(Attr))
        return Assign(AttrRef(attr), self._expr(_ATTR_TYPES[attr], env, 2, inputs_ok))

    def _stmts(self, env: dict[str, str], count: int, depth: int) -> tuple:
        out = []
        for _ in range(count):
            if depth > 0 and self.rng.random() < 0.4:
                then = self._stmts(env, self.rng.randint(1, 2), depth - 1)
                otherwise = (
                    self._stmts(env, self.rng.randint(0, 2), depth - 1)
                    if self.rng.random() < 0.5
                    else ()
                )
                out.append(If(self._cond(env, 1), then, otherwise))
            else:
                out.append(self._assign(env, inputs_ok=True))
        return tuple(out)

    def critter_program(self) -> CritterProgram:
        env: dict[str, str] = {}
        init = tuple(
            self._assign(env, inputs_ok=False) for _ in range(self.rng.randint(0, 3))
        )
        loop = self._stmts(env, self.rng.randint(0, 4), depth=2)
        return CritterProgram(init=init, loop=loop)

    def test_program(self) -> TestProgram:
        env: dict[str, str] = {}
        setup = tuple(
            self._assign(env, inputs_ok=True, vars_ok=True)
            for _ in range(self.rng.randint(0, 2))
        )
        # setup may only write variables
        setup = tuple(s for s in setup if isinstance(s.target, VarRef))
        asserts = []
        for _ in range(self.rng.randint(1, 3)):
            attr = self.rng.choice(list(Attr))
            if attr is Attr.SIZE and self.rng.random() < 0.5:
                asserts.append(Assert(AttrRef(attr), Satisfies(self.rng.choice(list(Pred)))))
            else:
                asserts.append(
                    Assert(AttrRef(attr), Equals(self._expr(_ATTR_TYPES[attr], env, 1, inputs_ok=True)))
                )
        return TestProgram(setup=setup, asserts=tuple(asserts))

    def critter_state(self):
        from crittermine.interp import CritterState

        rng = self.rng
        vars: dict = {}
        for i in range(rng.randint(0, 3)):
            if rng.random() < 0.5:
                vars[f"v{i}"] = rng.randint(-50, 50)
            else:
                vars[f"v{i}"] = rng.choice(list(Color))
        return CritterState(
            shirt_color=rng.choice(list(Color)),
            hair_color=rng.choice(list(Color)),
            size=rng.randint(-100, 100),
            vars=vars,
        )
