"""AST node types for the critter block language.

Programs come in two shapes: a critter program with an ``init`` section
(constructor-style attribute assignments) and a ``loop`` section executed once
per tile entered, and a mine test program with a ``setup`` section (variable
plumbing only) followed by a non-empty list of assert blocks.

All nodes are immutable values.  Editing a program goes through
:func:`replace` / :func:`remove`, which rebuild the tree and leave the
original untouched.  Every node is addressable by a :class:`NodePath`:
a section name plus a list of child-slot indices.  Paths are canonical --
no two distinct paths reach the same node.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Union


class Color(Enum):
    RED = "RED"
    BLUE = "BLUE"
    GREEN = "GREEN"
    YELLOW = "YELLOW"
    PURPLE = "PURPLE"
    BROWN = "BROWN"


class Texture(Enum):
    GRASS = "GRASS"
    DIRT = "DIRT"
    WATER = "WATER"
    ICE = "ICE"
    WOOD = "WOOD"


class Attr(Enum):
    SHIRT_COLOR = "shirt_color"
    HAIR_COLOR = "hair_color"
    SIZE = "size"


class Pred(Enum):
    EVEN = "EVEN"
    ODD = "ODD"
    NEGATIVE = "NEGATIVE"
    POSITIVE = "POSITIVE"
    PRIME = "PRIME"


BIN_OPS = ("+", "-", "*", "/")
CMP_OPS = ("==", "!=", "<", "<=", ">", ">=")
ORDERED_CMP_OPS = ("<", "<=", ">", ">=")
INPUT_AXES = ("x", "y")

COLOR_ATTRS = (Attr.SHIRT_COLOR, Attr.HAIR_COLOR)


class PathInvalid(Exception):
    """A NodePath does not address a node of the given program."""


class KindMismatch(Exception):
    """A replacement node is structurally incompatible with its slot."""


class Node:
    """Base for every AST node."""

    __slots__ = ()


@dataclass(frozen=True)
class Expr(Node):
    __slots__ = ()


@dataclass(frozen=True)
class BoolExpr(Node):
    __slots__ = ()


@dataclass(frozen=True)
class Stmt(Node):
    __slots__ = ()


@dataclass(frozen=True)
class Matcher(Node):
    __slots__ = ()


@dataclass(frozen=True)
class IntLit(Expr):
    value: int


@dataclass(frozen=True)
class ColorLit(Expr):
    value: Color


@dataclass(frozen=True)
class AttrRef(Expr):
    attr: Attr


@dataclass(frozen=True)
class InputRef(Expr):
    axis: str

    def __post_init__(self) -> None:
        if self.axis not in INPUT_AXES:
            raise ValueError(f"bad input axis {self.axis!r}")


@dataclass(frozen=True)
class VarRef(Expr):
    name: str


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    lhs: Expr
    rhs: Expr

    def __post_init__(self) -> None:
        if self.op not in BIN_OPS:
            raise ValueError(f"bad arithmetic operator {self.op!r}")


@dataclass(frozen=True)
class Compare(BoolExpr):
    op: str
    lhs: Expr
    rhs: Expr

    def __post_init__(self) -> None:
        if self.op not in CMP_OPS:
            raise ValueError(f"bad comparison operator {self.op!r}")


@dataclass(frozen=True)
class Predicate(BoolExpr):
    pred: Pred
    operand: Expr


@dataclass(frozen=True)
class TextureIs(BoolExpr):
    texture: Texture


@dataclass(frozen=True)
class And(BoolExpr):
    lhs: BoolExpr
    rhs: BoolExpr


@dataclass(frozen=True)
class Or(BoolExpr):
    lhs: BoolExpr
    rhs: BoolExpr


@dataclass(frozen=True)
class Not(BoolExpr):
    operand: BoolExpr


@dataclass(frozen=True)
class Assign(Stmt):
    target: Union[AttrRef, VarRef]
    value: Expr


@dataclass(frozen=True)
class If(Stmt):
    cond: BoolExpr
    then: tuple[Stmt, ...]
    otherwise: tuple[Stmt, ...] = ()


@dataclass(frozen=True)
class Equals(Matcher):
    value: Expr


@dataclass(frozen=True)
class Satisfies(Matcher):
    pred: Pred


@dataclass(frozen=True)
class Assert(Node):
    prop: AttrRef
    matcher: Matcher


@dataclass(frozen=True)
class CritterProgram(Node):
    init: tuple[Stmt, ...] = ()
    loop: tuple[Stmt, ...] = ()


@dataclass(frozen=True)
class TestProgram(Node):
    setup: tuple[Stmt, ...] = ()
    asserts: tuple[Assert, ...] = ()


Program = Union[CritterProgram, TestProgram]


@dataclass(frozen=True)
class NodePath:
    section: str
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.section not in ("init", "loop", "setup", "asserts"):
            raise ValueError(f"bad section {self.section!r}")
        if any(i < 0 for i in self.indices):
            raise ValueError("path indices must be non-negative")

    def child(self, *extra: int) -> "NodePath":
        return NodePath(self.section, self.indices + extra)

    def is_prefix_of(self, other: "NodePath") -> bool:
        return (
            self.section == other.section
            and len(self.indices) <= len(other.indices)
            and other.indices[: len(self.indices)] == self.indices
        )

    def __str__(self) -> str:
        if not self.indices:
            return self.section
        head, *rest = self.indices
        return f"{self.section}[{head}]" + "".join(f".{i}" for i in rest)


def path(section: str, *indices: int) -> NodePath:
    return NodePath(section, tuple(indices))


# Child slots per node kind.  A slot is either a single node or a tuple of
# nodes; tuple slots consume one extra path index to pick the element.
def _slots(node: Node) -> tuple:
    if isinstance(node, Assign):
        return (node.target, node.value)
    if isinstance(node, If):
        return (node.cond, node.then, node.otherwise)
    if isinstance(node, (BinOp, Compare, And, Or)):
        return (node.lhs, node.rhs)
    if isinstance(node, Predicate):
        return (node.operand,)
    if isinstance(node, Not):
        return (node.operand,)
    if isinstance(node, Assert):
        return (node.prop, node.matcher)
    if isinstance(node, Equals):
        return (node.value,)
    return ()


_SLOT_FIELDS: dict[type, tuple[str, ...]] = {
    Assign: ("target", "value"),
    If: ("cond", "then", "otherwise"),
    BinOp: ("lhs", "rhs"),
    Compare: ("lhs", "rhs"),
    And: ("lhs", "rhs"),
    Or: ("lhs", "rhs"),
    Predicate: ("operand",),
    Not: ("operand",),
    Assert: ("prop", "matcher"),
    Equals: ("value",),
}


def sections(program: Program) -> dict[str, tuple]:
    if isinstance(program, CritterProgram):
        return {"init": program.init, "loop": program.loop}
    if isinstance(program, TestProgram):
        return {"setup": program.setup, "asserts": program.asserts}
    raise TypeError(f"not a program: {program!r}")


def _section_items(program: Program, section: str) -> tuple:
    table = sections(program)
    if section not in table:
        raise PathInvalid(f"section {section!r} not present in this program kind")
    return table[section]


def resolve(program: Program, p: NodePath) -> Node:
    """Return the node addressed by ``p``, or raise :class:`PathInvalid`."""
    items = _section_items(program, p.section)
    if not p.indices:
        raise PathInvalid(f"{p}: path must select a node, not a section")
    cursor: object = items
    for step, idx in enumerate(p.indices):
        if isinstance(cursor, tuple):
            if idx >= len(cursor):
                raise PathInvalid(f"{p}: index {idx} out of range at step {step}")
            cursor = cursor[idx]
        else:
            slots = _slots(cursor)  # type: ignore[arg-type]
            if idx >= len(slots):
                raise PathInvalid(f"{p}: node {type(cursor).__name__} has no slot {idx}")
            cursor = slots[idx]
    if isinstance(cursor, tuple):
        raise PathInvalid(f"{p}: path ends on a statement list, not a node")
    return cursor  # type: ignore[return-value]


_REMOVE = object()


def _compatible(old: Node, new: Node) -> bool:
    for base in (Expr, BoolExpr, Stmt, Matcher, Assert):
        if isinstance(old, base):
            return isinstance(new, base)
    return type(old) is type(new)


def _rebuild_list(items: tuple, indices: tuple[int, ...], new: object) -> tuple:
    idx = indices[0]
    if idx >= len(items):
        raise PathInvalid(f"list index {idx} out of range")
    if len(indices) == 1:
        if new is _REMOVE:
            return items[:idx] + items[idx + 1 :]
        old = items[idx]
        if not _compatible(old, new):  # type: ignore[arg-type]
            raise KindMismatch(
                f"cannot put {type(new).__name__} where {type(old).__name__} was"
            )
        return items[:idx] + (new,) + items[idx + 1 :]
    rebuilt = _rebuild_node(items[idx], indices[1:], new)
    return items[:idx] + (rebuilt,) + items[idx + 1 :]


def _rebuild_node(node: Node, indices: tuple[int, ...], new: object) -> Node:
    slots = _slots(node)
    fields = _SLOT_FIELDS.get(type(node), ())
    idx = indices[0]
    if idx >= len(slots):
        raise PathInvalid(f"node {type(node).__name__} has no slot {idx}")
    slot = slots[idx]
    if isinstance(slot, tuple):
        if len(indices) == 1:
            raise PathInvalid("path ends on a statement list, not a node")
        replacement: object = _rebuild_list(slot, indices[1:], new)
    elif len(indices) == 1:
        if new is _REMOVE:
            raise KindMismatch("only statement-list elements can be removed")
        if not _compatible(slot, new):  # type: ignore[arg-type]
            raise KindMismatch(
                f"cannot put {type(new).__name__} where {type(slot).__name__} was"
            )
        replacement = new
    else:
        replacement = _rebuild_node(slot, indices[1:], new)
    updated = dataclasses.replace(node, **{fields[idx]: replacement})
    _check_slot_constraints(updated)
    return updated


def _check_slot_constraints(node: Node) -> None:
    if isinstance(node, Assign) and not isinstance(node.target, (AttrRef, VarRef)):
        raise KindMismatch("assignment target must be an attribute or variable")
    if isinstance(node, Assert) and not isinstance(node.prop, AttrRef):
        raise KindMismatch("assert property must be an attribute reference")


def _rebuild_program(program: Program, p: NodePath, new: object) -> Program:
    items = _section_items(program, p.section)
    if not p.indices:
        raise PathInvalid(f"{p}: path must select a node, not a section")
    rebuilt = _rebuild_list(items, p.indices, new)
    if isinstance(program, TestProgram) and p.section == "asserts":
        for a in rebuilt:
            if not isinstance(a, Assert):
                raise KindMismatch("asserts section only holds assert blocks")
    else:
        for s in rebuilt:
            if not isinstance(s, Stmt):
                raise KindMismatch("program sections only hold statements")
    return dataclasses.replace(program, **{p.section: rebuilt})


def replace(program: Program, p: NodePath, new: Node) -> Program:
    """Return a copy of ``program`` with the node at ``p`` substituted."""
    resolve(program, p)  # surface PathInvalid before any rebuilding
    return _rebuild_program(program, p, new)


def remove(program: Program, p: NodePath) -> Program:
    """Return a copy of ``program`` with the statement at ``p`` dropped.

    Only elements of statement lists can be removed; removing a mandatory
    slot (an operand, a condition, ...) raises :class:`KindMismatch`.
    """
    resolve(program, p)
    return _rebuild_program(program, p, _REMOVE)


def _walk_node(node: Node, at: NodePath) -> Iterator[tuple[NodePath, Node]]:
    yield at, node
    for slot_idx, slot in enumerate(_slots(node)):
        if isinstance(slot, tuple):
            for elem_idx, elem in enumerate(slot):
                yield from _walk_node(elem, at.child(slot_idx, elem_idx))
        else:
            yield from _walk_node(slot, at.child(slot_idx))


def walk(program: Program) -> Iterator[tuple[NodePath, Node]]:
    """Yield every (path, node) pair of the program in preorder."""
    for section, items in sections(program).items():
        for idx, item in enumerate(items):
            yield from _walk_node(item, path(section, idx))
