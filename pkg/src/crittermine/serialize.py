"""JSON wire format for programs, tests and node paths.

This is the one serialization used everywhere: level files on disk, the HTTP
API and the browser client all exchange exactly these documents.  The schema
is closed -- unknown node kinds or extra keys are rejected with
:class:`SchemaError` so that a typo never silently becomes a different
program.

Document shapes::

    critter program   {"init": [stmt...], "loop": [stmt...]}
    test program      {"setup": [stmt...], "asserts": [assert...]}
    node path         {"section": "loop", "indices": [0, 1]}

Every node is an object with a ``kind`` discriminator; see README for the
full kind table.
"""

from __future__ import annotations

import json
from typing import Any

from .blocks import (
    And,
    Assert,
    Assign,
    Attr,
    AttrRef,
    BIN_OPS,
    BinOp,
    BoolExpr,
    CMP_OPS,
    Color,
    ColorLit,
    Compare,
    CritterProgram,
    Equals,
    Expr,
    If,
    INPUT_AXES,
    InputRef,
    IntLit,
    Matcher,
    Node,
    NodePath,
    Not,
    Or,
    Pred,
    Predicate,
    Program,
    Satisfies,
    Stmt,
    TestProgram,
    Texture,
    TextureIs,
    VarRef,
)


class ParseError(Exception):
    """The document is not valid JSON at all."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class SchemaError(Exception):
    """The document is JSON but not a valid program document."""

    def __init__(self, message: str, key: str | None = None):
        super().__init__(message if key is None else f"{message} (at {key!r})")
        self.key = key


# ---------------------------------------------------------------------------
# encoding


def node_to_doc(node: Node) -> dict[str, Any]:
    if isinstance(node, IntLit):
        return {"kind": "int", "value": node.value}
    if isinstance(node, ColorLit):
        return {"kind": "color", "value": node.value.value}
    if isinstance(node, AttrRef):
        return {"kind": "attr", "name": node.attr.value}
    if isinstance(node, InputRef):
        return {"kind": "input", "axis": node.axis}
    if isinstance(node, VarRef):
        return {"kind": "var", "name": node.name}
    if isinstance(node, BinOp):
        return {"kind": "binop", "op": node.op, "lhs": node_to_doc(node.lhs), "rhs": node_to_doc(node.rhs)}
    if isinstance(node, Compare):
        return {"kind": "compare", "op": node.op, "lhs": node_to_doc(node.lhs), "rhs": node_to_doc(node.rhs)}
    if isinstance(node, Predicate):
        return {"kind": "predicate", "pred": node.pred.value, "operand": node_to_doc(node.operand)}
    if isinstance(node, TextureIs):
        return {"kind": "texture_is", "texture": node.texture.value}
    if isinstance(node, And):
        return {"kind": "and", "lhs": node_to_doc(node.lhs), "rhs": node_to_doc(node.rhs)}
    if isinstance(node, Or):
        return {"kind": "or", "lhs": node_to_doc(node.lhs), "rhs": node_to_doc(node.rhs)}
    if isinstance(node, Not):
        return {"kind": "not", "operand": node_to_doc(node.operand)}
    if isinstance(node, Assign):
        return {"kind": "assign", "target": node_to_doc(node.target), "value": node_to_doc(node.value)}
    if isinstance(node, If):
        return {
            "kind": "if",
            "cond": node_to_doc(node.cond),
            "then": [node_to_doc(s) for s in node.then],
            "else": [node_to_doc(s) for s in node.otherwise],
        }
    if isinstance(node, Equals):
        return {"kind": "equals", "value": node_to_doc(node.value)}
    if isinstance(node, Satisfies):
        return {"kind": "predicate", "pred": node.pred.value}
    if isinstance(node, Assert):
        return {"kind": "assert", "property": node_to_doc(node.prop), "matcher": node_to_doc(node.matcher)}
    raise TypeError(f"cannot serialize {node!r}")


def program_to_doc(program: Program) -> dict[str, Any]:
    if isinstance(program, CritterProgram):
        return {
            "init": [node_to_doc(s) for s in program.init],
            "loop": [node_to_doc(s) for s in program.loop],
        }
    if isinstance(program, TestProgram):
        return {
            "setup": [node_to_doc(s) for s in program.setup],
            "asserts": [node_to_doc(a) for a in program.asserts],
        }
    raise TypeError(f"not a program: {program!r}")


def path_to_doc(p: NodePath) -> dict[str, Any]:
    return {"section": p.section, "indices": list(p.indices)}


def dumps(program: Program) -> str:
    return json.dumps(program_to_doc(program), sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# decoding


def _require(doc: Any, keys: set[str], where: str) -> dict:
    if not isinstance(doc, dict):
        raise SchemaError(f"expected an object, got {type(doc).__name__}", where)
    extra = set(doc) - keys
    if extra:
        raise SchemaError(f"unknown key {sorted(extra)[0]!r}", where)
    missing = keys - set(doc)
    if missing:
        raise SchemaError(f"missing key {sorted(missing)[0]!r}", where)
    return doc


def _enum(cls, raw: Any, where: str):
    try:
        return cls(raw)
    except ValueError:
        raise SchemaError(f"{raw!r} is not a valid {cls.__name__}", where) from None


def _choice(raw: Any, allowed: tuple, where: str):
    if raw not in allowed:
        raise SchemaError(f"{raw!r} not one of {list(allowed)}", where)
    return raw


def _int(raw: Any, where: str) -> int:
    if not isinstance(raw, int) or isinstance(raw, bool):
        raise SchemaError("expected an integer", where)
    return raw


def _str(raw: Any, where: str) -> str:
    if not isinstance(raw, str):
        raise SchemaError("expected a string", where)
    return raw


def expr_from_doc(doc: Any, where: str = "expr") -> Expr:
    kind = _kind(doc, where)
    if kind == "int":
        d = _require(doc, {"kind", "value"}, where)
        return IntLit(_int(d["value"], where))
    if kind == "color":
        d = _require(doc, {"kind", "value"}, where)
        return ColorLit(_enum(Color, d["value"], where))
    if kind == "attr":
        d = _require(doc, {"kind", "name"}, where)
        return AttrRef(_enum(Attr, d["name"], where))
    if kind == "input":
        d = _require(doc, {"kind", "axis"}, where)
        return InputRef(_choice(d["axis"], INPUT_AXES, where))
    if kind == "var":
        d = _require(doc, {"kind", "name"}, where)
        return VarRef(_str(d["name"], where))
    if kind == "binop":
        d = _require(doc, {"kind", "op", "lhs", "rhs"}, where)
        return BinOp(
            _choice(d["op"], BIN_OPS, where),
            expr_from_doc(d["lhs"], where + ".lhs"),
            expr_from_doc(d["rhs"], where + ".rhs"),
        )
    raise SchemaError(f"unknown expression kind {kind!r}", where)


def bool_from_doc(doc: Any, where: str = "cond") -> BoolExpr:
    kind = _kind(doc, where)
    if kind == "compare":
        d = _require(doc, {"kind", "op", "lhs", "rhs"}, where)
        return Compare(
            _choice(d["op"], CMP_OPS, where),
            expr_from_doc(d["lhs"], where + ".lhs"),
            expr_from_doc(d["rhs"], where + ".rhs"),
        )
    if kind == "predicate":
        d = _require(doc, {"kind", "pred", "operand"}, where)
        return Predicate(_enum(Pred, d["pred"], where), expr_from_doc(d["operand"], where + ".operand"))
    if kind == "texture_is":
        d = _require(doc, {"kind", "texture"}, where)
        return TextureIs(_enum(Texture, d["texture"], where))
    if kind == "and":
        d = _require(doc, {"kind", "lhs", "rhs"}, where)
        return And(bool_from_doc(d["lhs"], where + ".lhs"), bool_from_doc(d["rhs"], where + ".rhs"))
    if kind == "or":
        d = _require(doc, {"kind", "lhs", "rhs"}, where)
        return Or(bool_from_doc(d["lhs"], where + ".lhs"), bool_from_doc(d["rhs"], where + ".rhs"))
    if kind == "not":
        d = _require(doc, {"kind", "operand"}, where)
        return Not(bool_from_doc(d["operand"], where + ".operand"))
    raise SchemaError(f"unknown condition kind {kind!r}", where)


def stmt_from_doc(doc: Any, where: str = "stmt") -> Stmt:
    kind = _kind(doc, where)
    if kind == "assign":
        d = _require(doc, {"kind", "target", "value"}, where)
        target = expr_from_doc(d["target"], where + ".target")
        if not isinstance(target, (AttrRef, VarRef)):
            raise SchemaError("assignment target must be an attr or var", where + ".target")
        return Assign(target, expr_from_doc(d["value"], where + ".value"))
    if kind == "if":
        d = _require(doc, {"kind", "cond", "then", "else"}, where)
        return If(
            bool_from_doc(d["cond"], where + ".cond"),
            _stmt_list(d["then"], where + ".then"),
            _stmt_list(d["else"], where + ".else"),
        )
    raise SchemaError(f"unknown statement kind {kind!r}", where)


def _matcher_from_doc(doc: Any, where: str) -> Matcher:
    kind = _kind(doc, where)
    if kind == "equals":
        d = _require(doc, {"kind", "value"}, where)
        return Equals(expr_from_doc(d["value"], where + ".value"))
    if kind == "predicate":
        d = _require(doc, {"kind", "pred"}, where)
        return Satisfies(_enum(Pred, d["pred"], where))
    raise SchemaError(f"unknown matcher kind {kind!r}", where)


def assert_from_doc(doc: Any, where: str = "assert") -> Assert:
    kind = _kind(doc, where)
    if kind != "assert":
        raise SchemaError(f"expected an assert block, got kind {kind!r}", where)
    d = _require(doc, {"kind", "property", "matcher"}, where)
    prop = expr_from_doc(d["property"], where + ".property")
    if not isinstance(prop, AttrRef):
        raise SchemaError("assert property must be an attr", where + ".property")
    return Assert(prop, _matcher_from_doc(d["matcher"], where + ".matcher"))


def _kind(doc: Any, where: str) -> str:
    if not isinstance(doc, dict):
        raise SchemaError(f"expected an object, got {type(doc).__name__}", where)
    if "kind" not in doc:
        raise SchemaError("missing key 'kind'", where)
    return _str(doc["kind"], where)


def _stmt_list(raw: Any, where: str) -> tuple[Stmt, ...]:
    if not isinstance(raw, list):
        raise SchemaError("expected a list of statements", where)
    return tuple(stmt_from_doc(s, f"{where}[{i}]") for i, s in enumerate(raw))


def program_from_doc(doc: Any) -> Program:
    if not isinstance(doc, dict):
        raise SchemaError(f"expected an object, got {type(doc).__name__}", "program")
    if set(doc) == {"init", "loop"}:
        return CritterProgram(
            init=_stmt_list(doc["init"], "init"),
            loop=_stmt_list(doc["loop"], "loop"),
        )
    if set(doc) == {"setup", "asserts"}:
        raw = doc["asserts"]
        if not isinstance(raw, list):
            raise SchemaError("expected a list of asserts", "asserts")
        return TestProgram(
            setup=_stmt_list(doc["setup"], "setup"),
            asserts=tuple(assert_from_doc(a, f"asserts[{i}]") for i, a in enumerate(raw)),
        )
    raise SchemaError("program needs keys init+loop or setup+asserts", "program")


def critter_program_from_doc(doc: Any) -> CritterProgram:
    p = program_from_doc(doc)
    if not isinstance(p, CritterProgram):
        raise SchemaError("expected a critter program (init+loop)", "program")
    return p


def test_program_from_doc(doc: Any) -> TestProgram:
    p = program_from_doc(doc)
    if not isinstance(p, TestProgram):
        raise SchemaError("expected a test program (setup+asserts)", "program")
    return p


def path_from_doc(doc: Any, where: str = "path") -> NodePath:
    d = _require(doc, {"section", "indices"}, where)
    section = _str(d["section"], where)
    if section not in ("init", "loop", "setup", "asserts"):
        raise SchemaError(f"bad section {section!r}", where)
    raw = d["indices"]
    if not isinstance(raw, list):
        raise SchemaError("indices must be a list", where)
    indices = tuple(_int(i, where) for i in raw)
    if any(i < 0 for i in indices):
        raise SchemaError("indices must be non-negative", where)
    return NodePath(section, indices)


def loads(text: str) -> Program:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    return program_from_doc(doc)
