"""Mutation operators over critter programs.

Four mutation classes mirror the four parts of a program a tester has to
think about: the initial configuration, the assignments, the branching
structure, and the branch conditions.  A mutation is a typed edit addressed
by a node path into the *base* program; a mutant is the base plus one or
more non-overlapping mutations, identified by a stable content hash so that
the same edits always name the same mutant.

The enumeration catalog is finite and closed:

* every color literal can become each of the 5 other colors,
* an integer literal ``n`` can become ``n-1``, ``n+1``, ``0`` and ``-n``,
* every operator can become each legal alternative (comparisons on colors
  stay within ``==``/``!=``),
* every texture test can name each of the 4 other textures,
* every if-statement can be removed or have its branches swapped,
* every if-condition can be negated, and conjunctions/disjunctions can
  drop either side.

Edits that would leave the program structurally identical or ill-typed are
never offered.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .blocks import (
    And,
    Assign,
    BIN_OPS,
    BinOp,
    BoolExpr,
    CMP_OPS,
    Color,
    ColorLit,
    Compare,
    CritterProgram,
    If,
    IntLit,
    Node,
    NodePath,
    Not,
    Or,
    PathInvalid,
    Pred,
    Predicate,
    TextureIs,
    Texture,
    replace,
    remove,
    resolve,
    walk,
)
from .serialize import SchemaError, _require, node_to_doc, path_from_doc, path_to_doc, program_to_doc
from .typecheck import ValueType, typecheck


class MutationClass(Enum):
    INITIALIZATION = "INITIALIZATION"
    ASSIGNMENT = "ASSIGNMENT"
    BRANCH = "BRANCH"
    CONDITION = "CONDITION"


class PathInvalidForEdit(Exception):
    pass


class IncompatibleEdit(Exception):
    pass


class ProducesIllTyped(Exception):
    pass


class ConflictingPaths(Exception):
    pass


class EmptyMutationList(Exception):
    pass


@dataclass(frozen=True)
class ReplaceValue:
    value: Union[int, Color, Texture]


@dataclass(frozen=True)
class ReplaceOperator:
    op: str  # arithmetic/comparison op, "and"/"or", or a predicate name


@dataclass(frozen=True)
class RemoveNode:
    pass


@dataclass(frozen=True)
class SwapBranches:
    pass


@dataclass(frozen=True)
class NegateCondition:
    pass


@dataclass(frozen=True)
class DropConjunct:
    side: str  # "left" or "right": the side that is dropped

    def __post_init__(self) -> None:
        if self.side not in ("left", "right"):
            raise ValueError(f"bad side {self.side!r}")


Edit = Union[ReplaceValue, ReplaceOperator, RemoveNode, SwapBranches, NegateCondition, DropConjunct]


@dataclass(frozen=True)
class Mutation:
    cls: MutationClass
    path: NodePath
    edit: Edit


@dataclass(frozen=True)
class Mutant:
    id: str
    base: CritterProgram
    mutations: tuple[Mutation, ...]
    program: CritterProgram


def classify_path(base: CritterProgram, p: NodePath) -> MutationClass:
    """Which mutation class an edit at this path belongs to.

    Anything in init is INITIALIZATION.  In the loop, the if-node itself is
    BRANCH, anything inside an if-condition is CONDITION, and anything inside
    an assignment's right side is ASSIGNMENT.
    """
    if p.section == "init":
        return MutationClass.INITIALIZATION
    if p.section != "loop":
        raise PathInvalidForEdit(f"mutations target critter programs, not {p.section}")
    node = resolve(base, p)
    if isinstance(node, If):
        return MutationClass.BRANCH
    # Walk the ancestor chain to find the enclosing slot; prefixes that land
    # on a statement list are not nodes and just get skipped.
    for cut in range(len(p.indices) - 1, 0, -1):
        try:
            parent = resolve(base, NodePath(p.section, p.indices[:cut]))
        except PathInvalid:
            continue
        slot = p.indices[cut]
        if isinstance(parent, If) and slot == 0:
            return MutationClass.CONDITION
        if isinstance(parent, Assign) and slot == 1:
            return MutationClass.ASSIGNMENT
    raise PathInvalidForEdit(f"{p} is not inside a condition or an assignment value")


def _edited_node(node: Node, edit: Edit) -> Optional[Node]:
    """The replacement node for in-place edits; None means 'remove'."""
    if isinstance(edit, ReplaceValue):
        if isinstance(node, ColorLit) and isinstance(edit.value, Color):
            return ColorLit(edit.value)
        if isinstance(node, IntLit) and isinstance(edit.value, int) and not isinstance(edit.value, bool):
            return IntLit(edit.value)
        if isinstance(node, TextureIs) and isinstance(edit.value, Texture):
            return TextureIs(edit.value)
        raise IncompatibleEdit(f"cannot replace {type(node).__name__} with value {edit.value!r}")
    if isinstance(edit, ReplaceOperator):
        if isinstance(node, BinOp) and edit.op in BIN_OPS:
            return BinOp(edit.op, node.lhs, node.rhs)
        if isinstance(node, Compare) and edit.op in CMP_OPS:
            return Compare(edit.op, node.lhs, node.rhs)
        if isinstance(node, And) and edit.op == "or":
            return Or(node.lhs, node.rhs)
        if isinstance(node, Or) and edit.op == "and":
            return And(node.lhs, node.rhs)
        if isinstance(node, Predicate):
            try:
                return Predicate(Pred(edit.op), node.operand)
            except ValueError:
                pass
        raise IncompatibleEdit(f"operator {edit.op!r} does not fit a {type(node).__name__}")
    if isinstance(edit, RemoveNode):
        if isinstance(node, If):
            return None
        raise IncompatibleEdit("only if-statements can be removed")
    if isinstance(edit, SwapBranches):
        if isinstance(node, If):
            return If(node.cond, node.otherwise, node.then)
        raise IncompatibleEdit("branch swap applies to if-statements")
    if isinstance(edit, NegateCondition):
        if isinstance(node, BoolExpr):
            return Not(node)
        raise IncompatibleEdit("negation applies to conditions")
    if isinstance(edit, DropConjunct):
        if isinstance(node, (And, Or)):
            return node.rhs if edit.side == "left" else node.lhs
        raise IncompatibleEdit("conjunct dropping applies to and/or nodes")
    raise TypeError(f"unknown edit {edit!r}")


def apply(base: CritterProgram, m: Mutation) -> CritterProgram:
    """Apply one mutation; the result must still type-check."""
    node = resolve(base, m.path)
    new = _edited_node(node, m.edit)
    mutated = remove(base, m.path) if new is None else replace(base, m.path, new)
    if typecheck(mutated):
        raise ProducesIllTyped(f"edit at {m.path} breaks typing")
    return mutated  # type: ignore[return-value]


def _check_no_conflicts(mutations: tuple[Mutation, ...]) -> None:
    for i, a in enumerate(mutations):
        for b in mutations[i + 1 :]:
            if a.path.is_prefix_of(b.path) or b.path.is_prefix_of(a.path):
                raise ConflictingPaths(f"{a.path} overlaps {b.path}")


def _apply_all(base: CritterProgram, mutations: tuple[Mutation, ...]) -> CritterProgram:
    # Deepest/rightmost first, so removals never shift a sibling path that
    # still has to be resolved against base coordinates.
    ordered = sorted(mutations, key=lambda m: (m.path.section, m.path.indices), reverse=True)
    program = base
    for m in ordered:
        node = resolve(base, m.path)
        new = _edited_node(node, m.edit)
        program = remove(program, m.path) if new is None else replace(program, m.path, new)
    if typecheck(program):
        raise ProducesIllTyped("combined edits break typing")
    return program


def mutant_id(base: CritterProgram, mutations: tuple[Mutation, ...]) -> str:
    payload = {
        "base": program_to_doc(base),
        "mutations": [mutation_to_doc(m) for m in mutations],
    }
    digest = hashlib.sha256(json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()).hexdigest()
    return digest[:12]


def make_mutant(base: CritterProgram, mutations: list[Mutation]) -> Mutant:
    if not mutations:
        raise EmptyMutationList("a mutant needs at least one mutation")
    muts = tuple(mutations)
    _check_no_conflicts(muts)
    program = _apply_all(base, muts)
    if program == base:
        raise IncompatibleEdit("mutations cancel out: mutant equals the base program")
    return Mutant(mutant_id(base, muts), base, muts, program)


@dataclass(frozen=True)
class DiffEntry:
    path: NodePath
    before: Node
    after: Optional[Node]  # None when the node was removed
    cls: MutationClass


def explain(mutant: Mutant) -> list[DiffEntry]:
    """One human-renderable entry per mutation: where, what was, what is."""
    out = []
    for m in mutant.mutations:
        before = resolve(mutant.base, m.path)
        out.append(DiffEntry(m.path, before, _edited_node(before, m.edit), m.cls))
    return out


# ---------------------------------------------------------------------------
# enumeration catalog


def _int_alternatives(n: int) -> list[int]:
    seen = []
    for v in (n - 1, n + 1, 0, -n):
        if v != n and v not in seen:
            seen.append(v)
    return seen


def _color_alternatives(c: Color) -> list[Color]:
    return [other for other in Color if other is not c]


def _texture_alternatives(t: Texture) -> list[Texture]:
    return [other for other in Texture if other is not t]


def _operand_types(base: CritterProgram, cmp_path: NodePath) -> Optional[ValueType]:
    # Comparison operand type decides the legal replacement operators; colors
    # only support equality tests.
    node = resolve(base, cmp_path)
    assert isinstance(node, Compare)
    from .typecheck import _Checker

    checker = _Checker(base)
    t = checker.expr_type(node.lhs, cmp_path.child(0), in_init=False)
    return t


def _edits_for_node(base: CritterProgram, p: NodePath, node: Node, in_cond: bool) -> list[Edit]:
    edits: list[Edit] = []
    if isinstance(node, ColorLit):
        edits += [ReplaceValue(c) for c in _color_alternatives(node.value)]
    elif isinstance(node, IntLit):
        edits += [ReplaceValue(v) for v in _int_alternatives(node.value)]
    elif isinstance(node, BinOp):
        edits += [ReplaceOperator(op) for op in BIN_OPS if op != node.op]
    elif in_cond:
        if isinstance(node, Compare):
            if _operand_types(base, p) is ValueType.COLOR:
                ops: tuple[str, ...] = ("==", "!=")
            else:
                ops = CMP_OPS
            edits += [ReplaceOperator(op) for op in ops if op != node.op]
        elif isinstance(node, Predicate):
            edits += [ReplaceOperator(pr.value) for pr in Pred if pr is not node.pred]
        elif isinstance(node, TextureIs):
            edits += [ReplaceValue(t) for t in _texture_alternatives(node.texture)]
        elif isinstance(node, And):
            edits += [ReplaceOperator("or"), DropConjunct("left"), DropConjunct("right")]
        elif isinstance(node, Or):
            edits += [ReplaceOperator("and"), DropConjunct("left"), DropConjunct("right")]
    return edits


def _cond_subpaths(p: NodePath, cond: BoolExpr) -> list[tuple[NodePath, Node]]:
    out: list[tuple[NodePath, Node]] = [(p, cond)]
    if isinstance(cond, (And, Or)):
        out += _cond_subpaths(p.child(0), cond.lhs)
        out += _cond_subpaths(p.child(1), cond.rhs)
    elif isinstance(cond, Not):
        out += _cond_subpaths(p.child(0), cond.operand)
    elif isinstance(cond, Compare):
        out += _expr_subpaths(p.child(0), cond.lhs)
        out += _expr_subpaths(p.child(1), cond.rhs)
    elif isinstance(cond, Predicate):
        out += _expr_subpaths(p.child(0), cond.operand)
    return out


def _expr_subpaths(p: NodePath, expr: Node) -> list[tuple[NodePath, Node]]:
    out: list[tuple[NodePath, Node]] = [(p, expr)]
    if isinstance(expr, BinOp):
        out += _expr_subpaths(p.child(0), expr.lhs)
        out += _expr_subpaths(p.child(1), expr.rhs)
    return out


def enumerate_mutations(
    base: CritterProgram,
    classes: Optional[set[MutationClass]] = None,
) -> list[Mutation]:
    """Every single mutation of the requested classes, duplicate-free.

    Each returned mutation applies cleanly, type-checks, and produces a
    program structurally different from the base.
    """
    if typecheck(base):
        raise ProducesIllTyped("base program must type-check before mutation")
    wanted = classes if classes is not None else set(MutationClass)
    candidates: list[Mutation] = []

    for p, node in walk(base):
        if p.section == "init":
            cls = MutationClass.INITIALIZATION
            for edit in _edits_for_node(base, p, node, in_cond=False):
                candidates.append(Mutation(cls, p, edit))

    def visit_stmts(stmts, at: Optional[NodePath]) -> None:
        for i, stmt in enumerate(stmts):
            sp = at.child(i) if at is not None else NodePath("loop", (i,))
            if isinstance(stmt, Assign):
                for q, sub in _expr_subpaths(sp.child(1), stmt.value):
                    for edit in _edits_for_node(base, q, sub, in_cond=False):
                        candidates.append(Mutation(MutationClass.ASSIGNMENT, q, edit))
            elif isinstance(stmt, If):
                candidates.append(Mutation(MutationClass.BRANCH, sp, RemoveNode()))
                if stmt.then != stmt.otherwise:
                    candidates.append(Mutation(MutationClass.BRANCH, sp, SwapBranches()))
                candidates.append(Mutation(MutationClass.CONDITION, sp.child(0), NegateCondition()))
                for q, sub in _cond_subpaths(sp.child(0), stmt.cond):
                    for edit in _edits_for_node(base, q, sub, in_cond=True):
                        candidates.append(Mutation(MutationClass.CONDITION, q, edit))
                visit_stmts(stmt.then, sp.child(1))
                visit_stmts(stmt.otherwise, sp.child(2))

    visit_stmts(base.loop, None)

    out: list[Mutation] = []
    seen: set[tuple] = set()
    for m in candidates:
        if m.cls not in wanted:
            continue
        key = (m.cls, m.path, m.edit)
        if key in seen:
            continue
        seen.add(key)
        try:
            mutated = apply(base, m)
        except (ProducesIllTyped, IncompatibleEdit):
            continue
        if mutated == base:
            continue
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# wire format: {"class", "path", "edit"} embedded in level documents


def mutation_to_doc(m: Mutation) -> dict:
    edit: dict
    if isinstance(m.edit, ReplaceValue):
        v = m.edit.value
        edit = {"kind": "replace_value", "value": v.value if isinstance(v, (Color, Texture)) else v}
    elif isinstance(m.edit, ReplaceOperator):
        edit = {"kind": "replace_operator", "op": m.edit.op}
    elif isinstance(m.edit, RemoveNode):
        edit = {"kind": "remove_node"}
    elif isinstance(m.edit, SwapBranches):
        edit = {"kind": "swap_branches"}
    elif isinstance(m.edit, NegateCondition):
        edit = {"kind": "negate_condition"}
    elif isinstance(m.edit, DropConjunct):
        edit = {"kind": "drop_conjunct", "side": m.edit.side}
    else:
        raise TypeError(f"unknown edit {m.edit!r}")
    return {"class": m.cls.value, "path": path_to_doc(m.path), "edit": edit}


_COLOR_NAMES = {c.value for c in Color}
_TEXTURE_NAMES = {t.value for t in Texture}


def mutation_from_doc(doc: dict) -> Mutation:
    d = _require(doc, {"class", "path", "edit"}, "mutation")
    try:
        cls = MutationClass(d["class"])
    except ValueError:
        raise SchemaError(f"unknown mutation class {d['class']!r}", "mutation.class") from None
    p = path_from_doc(d["path"], "mutation.path")
    e = d["edit"]
    kind = e.get("kind") if isinstance(e, dict) else None
    if kind == "replace_value":
        ed = _require(e, {"kind", "value"}, "mutation.edit")
        raw = ed["value"]
        value: Union[int, Color, Texture]
        if isinstance(raw, bool):
            raise SchemaError("replacement value must be an int, color or texture", "mutation.edit")
        elif isinstance(raw, int):
            value = raw
        elif raw in _COLOR_NAMES:
            value = Color(raw)
        elif raw in _TEXTURE_NAMES:
            value = Texture(raw)
        else:
            raise SchemaError(f"bad replacement value {raw!r}", "mutation.edit")
        return Mutation(cls, p, ReplaceValue(value))
    if kind == "replace_operator":
        ed = _require(e, {"kind", "op"}, "mutation.edit")
        return Mutation(cls, p, ReplaceOperator(str(ed["op"])))
    if kind == "remove_node":
        _require(e, {"kind"}, "mutation.edit")
        return Mutation(cls, p, RemoveNode())
    if kind == "swap_branches":
        _require(e, {"kind"}, "mutation.edit")
        return Mutation(cls, p, SwapBranches())
    if kind == "negate_condition":
        _require(e, {"kind"}, "mutation.edit")
        return Mutation(cls, p, NegateCondition())
    if kind == "drop_conjunct":
        ed = _require(e, {"kind", "side"}, "mutation.edit")
        if ed["side"] not in ("left", "right"):
            raise SchemaError(f"bad side {ed['side']!r}", "mutation.edit")
        return Mutation(cls, p, DropConjunct(ed["side"]))
    raise SchemaError(f"unknown edit kind {kind!r}", "mutation.edit")


def diff_entry_to_doc(entry: DiffEntry) -> dict:
    return {
        "path": path_to_doc(entry.path),
        "class": entry.cls.value,
        "before": node_to_doc(entry.before),
        "after": None if entry.after is None else node_to_doc(entry.after),
    }
