// The client-side type mirror: what the mine dialog uses to reject drops
// and to vet a composed test before sending it anywhere.

import { describe, expect, it } from "vitest";
import { canDrop, checkTest, exprType } from "../src/checker.js";
import type { TestProgramDoc } from "../src/types.js";

const vars = new Map<string, "int" | "color">([["v", "int"]]);

describe("expression typing", () => {
  it("types literals, attributes, inputs and variables", () => {
    expect(exprType({ kind: "int", value: 3 }, vars)).toBe("int");
    expect(exprType({ kind: "color", value: "RED" }, vars)).toBe("color");
    expect(exprType({ kind: "attr", name: "shirt_color" }, vars)).toBe("color");
    expect(exprType({ kind: "attr", name: "size" }, vars)).toBe("int");
    expect(exprType({ kind: "input", axis: "x" }, vars)).toBe("int");
    expect(exprType({ kind: "var", name: "v" }, vars)).toBe("int");
    expect(exprType({ kind: "var", name: "ghost" }, vars)).toBeNull();
  });

  it("arithmetic over colors is ill-typed", () => {
    const bad = {
      kind: "binop",
      op: "+",
      lhs: { kind: "color", value: "RED" },
      rhs: { kind: "int", value: 1 },
    };
    expect(exprType(bad, vars)).toBeNull();
  });
});

describe("drop rules", () => {
  it("rejects a color block in an integer slot", () => {
    expect(canDrop("int", "color")).toBe(false);
    expect(canDrop("int", "int")).toBe(true);
  });

  it("rejects an integer block in a color slot", () => {
    expect(canDrop("color", "int")).toBe(false);
    expect(canDrop("color", "color")).toBe(true);
  });

  it("rejects blocks whose type cannot be determined", () => {
    expect(canDrop("int", null)).toBe(false);
  });
});

describe("whole-test checking", () => {
  const shirtEqualsBlue: TestProgramDoc = {
    setup: [],
    asserts: [
      {
        kind: "assert",
        property: { kind: "attr", name: "shirt_color" },
        matcher: { kind: "equals", value: { kind: "color", value: "BLUE" } },
      },
    ],
  };

  it("accepts a well-typed assert", () => {
    expect(checkTest(shirtEqualsBlue)).toEqual([]);
  });

  it("rejects comparing a color property with a number", () => {
    const bad = structuredClone(shirtEqualsBlue);
    bad.asserts[0].matcher = { kind: "equals", value: { kind: "int", value: 3 } };
    const issues = checkTest(bad);
    expect(issues.length).toBe(1);
    expect(issues[0].message).toContain("color");
  });

  it("restricts predicate matchers to the size property", () => {
    const bad = structuredClone(shirtEqualsBlue);
    bad.asserts[0].matcher = { kind: "predicate", pred: "PRIME" };
    expect(checkTest(bad).length).toBe(1);
    const ok: TestProgramDoc = {
      setup: [],
      asserts: [
        {
          kind: "assert",
          property: { kind: "attr", name: "size" },
          matcher: { kind: "predicate", pred: "PRIME" },
        },
      ],
    };
    expect(checkTest(ok)).toEqual([]);
  });

  it("requires at least one assert", () => {
    expect(checkTest({ setup: [], asserts: [] }).length).toBe(1);
  });

  it("lets setup variables feed assert values", () => {
    const test: TestProgramDoc = {
      setup: [
        {
          kind: "assign",
          target: { kind: "var", name: "v" },
          value: {
            kind: "binop",
            op: "*",
            lhs: { kind: "int", value: 2 },
            rhs: { kind: "int", value: 3 },
          },
        },
      ],
      asserts: [
        {
          kind: "assert",
          property: { kind: "attr", name: "size" },
          matcher: { kind: "equals", value: { kind: "var", name: "v" } },
        },
      ],
    };
    expect(checkTest(test)).toEqual([]);
  });

  it("refuses attribute writes in setup", () => {
    const test: TestProgramDoc = {
      setup: [
        {
          kind: "assign",
          target: { kind: "attr", name: "shirt_color" },
          value: { kind: "color", value: "RED" },
        },
      ],
      asserts: shirtEqualsBlue.asserts,
    };
    const issues = checkTest(test);
    expect(issues.length).toBe(1);
    expect(issues[0].where).toBe("setup[0]");
  });
});
