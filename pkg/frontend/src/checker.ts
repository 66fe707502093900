// Client-side mirror of the server's type rules, just enough to reject an
// ill-typed block drop while the user composes a mine. The server remains
// authoritative: every program still goes through its checker on use.

import type { AttrName, ExprDoc, TestProgramDoc } from "./types.js";

export type SlotType = "int" | "color";

const ATTR_TYPES: Record<AttrName, SlotType> = {
  shirt_color: "color",
  hair_color: "color",
  size: "int",
};

export function attrType(name: AttrName): SlotType {
  return ATTR_TYPES[name];
}

/**
 * The type an expression document produces, or null when it is ill-formed
 * (e.g. arithmetic over colors). `vars` maps setup variables to their types.
 */
export function exprType(doc: ExprDoc, vars: Map<string, SlotType>): SlotType | null {
  switch (doc.kind) {
    case "int":
      return "int";
    case "color":
      return "color";
    case "input":
      return "int";
    case "attr":
      return ATTR_TYPES[doc.name as AttrName] ?? null;
    case "var": {
      return vars.get(doc.name as string) ?? null;
    }
    case "binop": {
      const l = exprType(doc.lhs as ExprDoc, vars);
      const r = exprType(doc.rhs as ExprDoc, vars);
      return l === "int" && r === "int" ? "int" : null;
    }
    default:
      return null;
  }
}

/** May a block producing `offered` land in a slot expecting `wanted`? */
export function canDrop(wanted: SlotType, offered: SlotType | null): boolean {
  return offered !== null && wanted === offered;
}

export interface MirrorIssue {
  where: string;
  message: string;
}

/** Whole-test check before save; mirrors the server's rules for tests. */
export function checkTest(test: TestProgramDoc): MirrorIssue[] {
  const issues: MirrorIssue[] = [];
  const vars = new Map<string, SlotType>();

  test.setup.forEach((stmt, i) => {
    const where = `setup[${i}]`;
    if (stmt.kind !== "assign") {
      issues.push({ where, message: "setup only holds assignments" });
      return;
    }
    const target = stmt.target as ExprDoc;
    if (target.kind === "attr") {
      issues.push({ where, message: "a test may not change the critter" });
      return;
    }
    if (target.kind !== "var") {
      issues.push({ where, message: "assign to a variable" });
      return;
    }
    const valueType = exprType(stmt.value as ExprDoc, vars);
    if (valueType === null) {
      issues.push({ where, message: "value does not type-check" });
      return;
    }
    const name = target.name as string;
    const known = vars.get(name);
    if (known && known !== valueType) {
      issues.push({ where, message: `variable ${name} already holds a ${known}` });
    } else {
      vars.set(name, valueType);
    }
  });

  if (test.asserts.length === 0) {
    issues.push({ where: "asserts", message: "a mine needs at least one assert" });
  }

  test.asserts.forEach((assert, i) => {
    const where = `asserts[${i}]`;
    const propType = ATTR_TYPES[assert.property.name];
    if (assert.matcher.kind === "equals") {
      const got = exprType(assert.matcher.value, vars);
      if (got === null) {
        issues.push({ where, message: "expected value does not type-check" });
      } else if (got !== propType) {
        issues.push({ where, message: `cannot compare a ${propType} property with a ${got}` });
      }
    } else if (assert.matcher.kind === "predicate") {
      if (propType !== "int") {
        issues.push({ where, message: "number checks apply to size only" });
      }
    }
  });

  return issues;
}
