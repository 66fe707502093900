"""Static type checking for critter and mine test programs.

The language has exactly two value types, integers and colors.  Shirt and
hair are color attributes, size is an integer, arithmetic and ordered
comparisons and numeric predicates work on integers only, and equality
requires both sides to share a type.  Variables get their type from their
first assignment anywhere in the program (the loop runs repeatedly, so
textual order of definition and use is not significant) and keep it.

Section shape rules are enforced here too: ``init`` holds attribute or
variable assignments only, a test's ``setup`` may assign variables but never
attributes, and a test must carry at least one assert block.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .blocks import (
    And,
    Assert,
    Assign,
    Attr,
    AttrRef,
    BinOp,
    BoolExpr,
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
    ORDERED_CMP_OPS,
    Pred,
    Predicate,
    Program,
    Satisfies,
    Stmt,
    TestProgram,
    TextureIs,
    VarRef,
    path,
)


class ValueType(Enum):
    INT = "int"
    COLOR = "color"


@dataclass(frozen=True)
class TypeIssue:
    path: NodePath
    code: str
    detail: str

    def __str__(self) -> str:
        return f"{self.code} at {self.path}: {self.detail}"


def attr_type(attr: Attr) -> ValueType:
    return ValueType.INT if attr is Attr.SIZE else ValueType.COLOR


class _Checker:
    def __init__(self, program: Program):
        self.program = program
        self.issues: list[TypeIssue] = []
        self.var_types = _infer_var_types(program)

    def error(self, at: NodePath, code: str, detail: str) -> None:
        self.issues.append(TypeIssue(at, code, detail))

    # Returns None when the type cannot be determined; an issue has already
    # been recorded in that case, so callers stay quiet on None.
    def expr_type(self, expr: Expr, at: NodePath, in_init: bool) -> Optional[ValueType]:
        if isinstance(expr, IntLit):
            return ValueType.INT
        if isinstance(expr, ColorLit):
            return ValueType.COLOR
        if isinstance(expr, AttrRef):
            return attr_type(expr.attr)
        if isinstance(expr, InputRef):
            if in_init:
                self.error(at, "InputInInit", "tile inputs do not exist during init")
            return ValueType.INT
        if isinstance(expr, VarRef):
            t = self.var_types.get(expr.name)
            if t is None:
                self.error(at, "UndefinedVar", f"variable {expr.name!r} is never assigned")
            return t
        if isinstance(expr, BinOp):
            lt = self.expr_type(expr.lhs, at.child(0), in_init)
            rt = self.expr_type(expr.rhs, at.child(1), in_init)
            if lt is ValueType.COLOR:
                self.error(at.child(0), "TypeMismatch", "arithmetic needs integers, got a color")
            if rt is ValueType.COLOR:
                self.error(at.child(1), "TypeMismatch", "arithmetic needs integers, got a color")
            return ValueType.INT
        raise TypeError(f"unknown expression node {expr!r}")

    def bool_type(self, cond: BoolExpr, at: NodePath, in_init: bool) -> None:
        if isinstance(cond, Compare):
            lt = self.expr_type(cond.lhs, at.child(0), in_init)
            rt = self.expr_type(cond.rhs, at.child(1), in_init)
            if cond.op in ORDERED_CMP_OPS:
                for t, slot in ((lt, 0), (rt, 1)):
                    if t is ValueType.COLOR:
                        self.error(
                            at.child(slot),
                            "TypeMismatch",
                            f"ordered comparison {cond.op!r} needs integers, got a color",
                        )
            elif lt is not None and rt is not None and lt is not rt:
                self.error(at, "TypeMismatch", f"cannot compare {lt.value} with {rt.value}")
        elif isinstance(cond, Predicate):
            t = self.expr_type(cond.operand, at.child(0), in_init)
            if t is ValueType.COLOR:
                self.error(at, "PredicateOnColor", f"{cond.pred.value} needs an integer operand")
        elif isinstance(cond, TextureIs):
            if in_init:
                self.error(at, "InputInInit", "tile inputs do not exist during init")
        elif isinstance(cond, (And, Or)):
            self.bool_type(cond.lhs, at.child(0), in_init)
            self.bool_type(cond.rhs, at.child(1), in_init)
        elif isinstance(cond, Not):
            self.bool_type(cond.operand, at.child(0), in_init)
        else:
            raise TypeError(f"unknown boolean node {cond!r}")

    def check_assign(self, stmt: Assign, at: NodePath, in_init: bool) -> None:
        vt = self.expr_type(stmt.value, at.child(1), in_init)
        if isinstance(stmt.target, AttrRef):
            tt: Optional[ValueType] = attr_type(stmt.target.attr)
        else:
            tt = self.var_types.get(stmt.target.name)
        if tt is not None and vt is not None and tt is not vt:
            self.error(at, "TypeMismatch", f"assigning {vt.value} to a {tt.value} target")

    def check_stmts(self, stmts: tuple[Stmt, ...], base: NodePath) -> None:
        for i, stmt in enumerate(stmts):
            at = base.child(i)
            if isinstance(stmt, Assign):
                self.check_assign(stmt, at, in_init=False)
            elif isinstance(stmt, If):
                self.bool_type(stmt.cond, at.child(0), in_init=False)
                self.check_stmts(stmt.then, at.child(1))
                self.check_stmts(stmt.otherwise, at.child(2))
            else:
                raise TypeError(f"unknown statement node {stmt!r}")

    def check_critter(self, program: CritterProgram) -> None:
        for i, stmt in enumerate(program.init):
            at = path("init", i)
            if not isinstance(stmt, Assign):
                self.error(at, "InitStmtNotAssign", "init holds assignments only")
                continue
            self.check_assign(stmt, at, in_init=True)
        self.check_stmts(program.loop, NodePath("loop", ()))

    def check_test(self, program: TestProgram) -> None:
        for i, stmt in enumerate(program.setup):
            at = path("setup", i)
            if not isinstance(stmt, Assign):
                self.error(at, "SetupStmtNotAssign", "setup holds assignments only")
                continue
            if isinstance(stmt.target, AttrRef):
                self.error(at, "SetupWritesAttr", "tests may not modify critter attributes")
            self.check_assign(stmt, at, in_init=False)
        if not program.asserts:
            self.error(NodePath("asserts", (0,)), "NoAsserts", "a test needs at least one assert")
        for i, a in enumerate(program.asserts):
            at = path("asserts", i)
            pt = attr_type(a.prop.attr)
            if isinstance(a.matcher, Equals):
                vt = self.expr_type(a.matcher.value, at.child(1, 0), in_init=False)
                if vt is not None and vt is not pt:
                    self.error(at, "TypeMismatch", f"asserting a {vt.value} against a {pt.value} property")
            elif isinstance(a.matcher, Satisfies):
                if pt is not ValueType.INT:
                    self.error(at, "PredicateOnColor", f"{a.matcher.pred.value} applies to size only")
            else:
                raise TypeError(f"unknown matcher {a.matcher!r}")


def _infer_var_types(program: Program) -> dict[str, ValueType]:
    """First assignment (in traversal order) fixes a variable's type.

    Assignments whose right side mentions not-yet-typed variables are retried
    until the table stops growing, so definition order never matters.
    """
    assigns: list[Assign] = []

    def collect(stmts) -> None:
        for stmt in stmts:
            if isinstance(stmt, Assign):
                if isinstance(stmt.target, VarRef):
                    assigns.append(stmt)
            elif isinstance(stmt, If):
                collect(stmt.then)
                collect(stmt.otherwise)

    if isinstance(program, CritterProgram):
        collect(program.init)
        collect(program.loop)
    else:
        collect(program.setup)

    table: dict[str, ValueType] = {}

    def rhs_type(expr: Expr) -> Optional[ValueType]:
        if isinstance(expr, IntLit):
            return ValueType.INT
        if isinstance(expr, ColorLit):
            return ValueType.COLOR
        if isinstance(expr, AttrRef):
            return attr_type(expr.attr)
        if isinstance(expr, InputRef):
            return ValueType.INT
        if isinstance(expr, VarRef):
            return table.get(expr.name)
        if isinstance(expr, BinOp):
            return ValueType.INT
        return None

    pending = assigns
    while pending:
        deferred = []
        for stmt in pending:
            name = stmt.target.name  # type: ignore[union-attr]
            if name in table:
                continue
            t = rhs_type(stmt.value)
            if t is None:
                deferred.append(stmt)
            else:
                table[name] = t
        if len(deferred) == len(pending):
            break
        pending = deferred
    return table


def typecheck(program: Program) -> list[TypeIssue]:
    """Check a program; an empty list means it is well typed."""
    checker = _Checker(program)
    if isinstance(program, CritterProgram):
        checker.check_critter(program)
    elif isinstance(program, TestProgram):
        checker.check_test(program)
    else:
        raise TypeError(f"not a program: {program!r}")
    return checker.issues
