"""Deterministic tree-walking interpreter for critter and test programs.

Semantics are total: no well-formed program can abort execution.  Integer
arithmetic saturates at +/-1_000_000, division truncates toward zero and
division by zero yields zero, and a read of a never-assigned variable yields
zero.  Running a loop step or a test never mutates its inputs; callers always
get fresh state back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .blocks import (
    And,
    Assign,
    Attr,
    AttrRef,
    BinOp,
    BoolExpr,
    Color,
    ColorLit,
    Compare,
    CritterProgram,
    Equals,
    Expr,
    If,
    InputRef,
    IntLit,
    NodePath,
    Not,
    Or,
    Pred,
    Predicate,
    Satisfies,
    Stmt,
    TestProgram,
    Texture,
    TextureIs,
    VarRef,
    path,
)

INT_LIMIT = 1_000_000

DEFAULT_SHIRT = Color.RED
DEFAULT_HAIR = Color.BROWN
DEFAULT_SIZE = 1

Value = Union[int, Color]


def clamp(n: int) -> int:
    return max(-INT_LIMIT, min(INT_LIMIT, n))


def div_trunc(a: int, b: int) -> int:
    """Integer division truncated toward zero; anything / 0 is 0."""
    if b == 0:
        return 0
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


_PREDICATES = {
    Pred.EVEN: lambda n: n % 2 == 0,
    Pred.ODD: lambda n: n % 2 != 0,
    Pred.NEGATIVE: lambda n: n < 0,
    Pred.POSITIVE: lambda n: n > 0,
    Pred.PRIME: is_prime,
}


@dataclass(frozen=True)
class TileInput:
    """What a loop step or a mine sees: the tile's texture and coordinates."""

    texture: Texture
    x: int
    y: int


@dataclass
class CritterState:
    shirt_color: Color = DEFAULT_SHIRT
    hair_color: Color = DEFAULT_HAIR
    size: int = DEFAULT_SIZE
    vars: dict[str, Value] = field(default_factory=dict)

    def copy(self) -> "CritterState":
        return CritterState(self.shirt_color, self.hair_color, self.size, dict(self.vars))

    def get_attr(self, attr: Attr) -> Value:
        return getattr(self, attr.value)

    def set_attr(self, attr: Attr, value: Value) -> None:
        if attr is Attr.SIZE and isinstance(value, int):
            value = clamp(value)
        setattr(self, attr.value, value)

    def snapshot(self) -> tuple:
        """Hashable structural snapshot, used for envelope comparisons."""
        return (
            self.shirt_color,
            self.hair_color,
            self.size,
            tuple(sorted(self.vars.items())),
        )


@dataclass(frozen=True)
class TestVerdict:
    passed: bool
    failed_assert: Optional[NodePath] = None


def eval_expr(
    expr: Expr,
    state: CritterState,
    tile: Optional[TileInput],
    scope: dict[str, Value],
) -> Value:
    if isinstance(expr, IntLit):
        return clamp(expr.value)
    if isinstance(expr, ColorLit):
        return expr.value
    if isinstance(expr, AttrRef):
        return state.get_attr(expr.attr)
    if isinstance(expr, InputRef):
        if tile is None:
            return 0
        return tile.x if expr.axis == "x" else tile.y
    if isinstance(expr, VarRef):
        return scope.get(expr.name, 0)
    if isinstance(expr, BinOp):
        a = eval_expr(expr.lhs, state, tile, scope)
        b = eval_expr(expr.rhs, state, tile, scope)
        if not isinstance(a, int) or not isinstance(b, int):
            return 0
        if expr.op == "+":
            return clamp(a + b)
        if expr.op == "-":
            return clamp(a - b)
        if expr.op == "*":
            return clamp(a * b)
        return clamp(div_trunc(a, b))
    raise TypeError(f"unknown expression node {expr!r}")


def eval_bool(
    cond: BoolExpr,
    state: CritterState,
    tile: Optional[TileInput],
    scope: dict[str, Value],
) -> bool:
    if isinstance(cond, Compare):
        a = eval_expr(cond.lhs, state, tile, scope)
        b = eval_expr(cond.rhs, state, tile, scope)
        if cond.op == "==":
            return a == b
        if cond.op == "!=":
            return a != b
        if not isinstance(a, int) or not isinstance(b, int):
            return False
        if cond.op == "<":
            return a < b
        if cond.op == "<=":
            return a <= b
        if cond.op == ">":
            return a > b
        return a >= b
    if isinstance(cond, Predicate):
        v = eval_expr(cond.operand, state, tile, scope)
        if not isinstance(v, int):
            return False
        return _PREDICATES[cond.pred](v)
    if isinstance(cond, TextureIs):
        return tile is not None and tile.texture is cond.texture
    if isinstance(cond, And):
        return eval_bool(cond.lhs, state, tile, scope) and eval_bool(cond.rhs, state, tile, scope)
    if isinstance(cond, Or):
        return eval_bool(cond.lhs, state, tile, scope) or eval_bool(cond.rhs, state, tile, scope)
    if isinstance(cond, Not):
        return not eval_bool(cond.operand, state, tile, scope)
    raise TypeError(f"unknown boolean node {cond!r}")


def _exec_stmts(
    stmts: tuple[Stmt, ...],
    state: CritterState,
    tile: Optional[TileInput],
    scope: dict[str, Value],
    allow_attr_writes: bool,
) -> None:
    for stmt in stmts:
        if isinstance(stmt, Assign):
            value = eval_expr(stmt.value, state, tile, scope)
            if isinstance(stmt.target, AttrRef):
                if allow_attr_writes:
                    state.set_attr(stmt.target.attr, value)
            else:
                scope[stmt.target.name] = value
        elif isinstance(stmt, If):
            branch = stmt.then if eval_bool(stmt.cond, state, tile, scope) else stmt.otherwise
            _exec_stmts(branch, state, tile, scope, allow_attr_writes)
        else:
            raise TypeError(f"unknown statement node {stmt!r}")


def init_state(program: CritterProgram) -> CritterState:
    """Run the init section from the default state, constructor style."""
    state = CritterState()
    _exec_stmts(program.init, state, None, state.vars, allow_attr_writes=True)
    return state


def step_loop(program: CritterProgram, state: CritterState, tile: TileInput) -> CritterState:
    """Execute the loop section once for one tile; the input state is untouched."""
    new = state.copy()
    _exec_stmts(program.loop, new, tile, new.vars, allow_attr_writes=True)
    return new


def eval_test(test: TestProgram, state: CritterState, tile: TileInput) -> TestVerdict:
    """Run a mine's test against a critter's state at a tile.

    Setup assignments live in a fresh variable scope, independent of the
    critter's own variables; the critter state is read-only throughout.
    Asserts run in order and the first failure decides the verdict.
    """
    shadow = state.copy()  # isolation even for ill-typed setups
    scope: dict[str, Value] = {}
    _exec_stmts(test.setup, shadow, tile, scope, allow_attr_writes=False)
    for i, a in enumerate(test.asserts):
        actual = shadow.get_attr(a.prop.attr)
        if isinstance(a.matcher, Equals):
            expected = eval_expr(a.matcher.value, shadow, tile, scope)
            ok = actual == expected
        elif isinstance(a.matcher, Satisfies):
            ok = isinstance(actual, int) and _PREDICATES[a.matcher.pred](actual)
        else:
            raise TypeError(f"unknown matcher {a.matcher!r}")
        if not ok:
            return TestVerdict(False, path("asserts", i))
    return TestVerdict(True)
