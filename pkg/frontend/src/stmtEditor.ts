// Statement-list block editor used for a critter program's init and loop
// sections: assignment and if blocks are dragged in from a palette and
// composed with the shared expression/condition slots.

import { CondModel, ExprModel, StmtModel } from "./blocks.js";
import { SlotType } from "./checker.js";
import { el } from "./render.js";
import { BlockDesc, paletteBlock, readBlock, renderCondSlot, renderExprSlot } from "./slots.js";
import type { AttrName, PaletteDoc } from "./types.js";

export interface StmtEditorOptions {
  palette: PaletteDoc;
  allowIf: boolean; // init sections hold assignments only
  allowInputs: boolean;
  varTypes: Map<string, SlotType>;
  onChange: () => void;
}

export function stmtPalette(palette: PaletteDoc, allowIf: boolean, allowInputs: boolean): HTMLElement {
  const blocks: HTMLElement[] = [
    paletteBlock("assign", { make: "stmt", stmt: "assign" }, "stmt"),
  ];
  if (allowIf) blocks.push(paletteBlock("if / else", { make: "stmt", stmt: "if" }, "stmt"));
  const conds: HTMLElement[] = [];
  if (allowIf) {
    for (const texture of palette.textures) {
      conds.push(
        paletteBlock(
          `tile is ${texture.toLowerCase()}`,
          { make: "cond", model: { kind: "texture_is", texture } },
          `cond tile-${texture}`,
        ),
      );
    }
    conds.push(
      paletteBlock("compare", { make: "cond", model: { kind: "compare", op: "==", lhs: null, rhs: null } }, "cond"),
      ...palette.predicates.map((pred) =>
        paletteBlock(
          `is ${pred.toLowerCase()}`,
          { make: "cond", model: { kind: "predicate", pred, operand: null } },
          "cond",
        ),
      ),
      paletteBlock("and", { make: "cond", model: { kind: "and", lhs: null, rhs: null } }, "cond"),
      paletteBlock("or", { make: "cond", model: { kind: "or", lhs: null, rhs: null } }, "cond"),
      paletteBlock("not", { make: "cond", model: { kind: "not", operand: null } }, "cond"),
    );
  }
  const values: HTMLElement[] = [
    ...palette.colors.map((color) =>
      paletteBlock(color.toLowerCase(), { make: "expr", model: { kind: "color", value: color } }, `color swatch-${color}`),
    ),
    paletteBlock("number", { make: "expr", model: { kind: "int", value: 0 } }, "int"),
    paletteBlock("math", { make: "expr", model: { kind: "binop", op: "+", lhs: null, rhs: null } }, "math"),
    ...palette.attributes.map((attr) =>
      paletteBlock(attr.name.replace("_", " "), { make: "expr", model: { kind: "attr", name: attr.name } }, "attr"),
    ),
    paletteBlock("variable ref", { make: "expr", model: { kind: "var", name: "v0" } }, "var"),
  ];
  if (allowInputs) {
    values.push(
      ...palette.inputs.map((axis) =>
        paletteBlock(`tile ${axis}`, { make: "expr", model: { kind: "input", axis } }, "input"),
      ),
    );
  }
  const box = el("div", { class: "palette" });
  box.append(el("h3", {}, "statements"), el("div", { class: "palette-group" }, ...blocks));
  if (conds.length) box.append(el("h3", {}, "conditions"), el("div", { class: "palette-group" }, ...conds));
  box.append(el("h3", {}, "values"), el("div", { class: "palette-group" }, ...values));
  return box;
}

export function renderStmtList(list: StmtModel[], opts: StmtEditorOptions): HTMLElement {
  const box = el("div", { class: "stmt-list" });
  list.forEach((stmt, index) => box.append(renderStmt(stmt, list, index, opts)));
  const drop = el("div", { class: "drop-area" }, opts.allowIf ? "drop assign / if here" : "drop assign here");
  drop.addEventListener("dragover", (ev) => ev.preventDefault());
  drop.addEventListener("drop", (ev) => {
    ev.preventDefault();
    ev.stopPropagation();
    const desc: BlockDesc | null = readBlock(ev as DragEvent);
    if (desc?.make !== "stmt") return;
    if (desc.stmt === "if" && !opts.allowIf) return;
    list.push(
      desc.stmt === "assign"
        ? { kind: "assign", target: { attr: "shirt_color" }, value: null }
        : { kind: "if", cond: null, then: [], otherwise: [] },
    );
    opts.onChange();
  });
  box.append(drop);
  return box;
}

function renderStmt(stmt: StmtModel, list: StmtModel[], index: number, opts: StmtEditorOptions): HTMLElement {
  const remove = el("button", { class: "remove", type: "button" }, "x");
  remove.addEventListener("click", () => {
    list.splice(index, 1);
    opts.onChange();
  });
  if (stmt.kind === "assign") {
    return el(
      "div",
      { class: "stmt-row" },
      renderTarget(stmt, opts),
      " := ",
      renderExprSlot({
        expected: targetType(stmt, opts.varTypes),
        varTypes: opts.varTypes,
        get: () => stmt.value,
        set: (m: ExprModel | null) => (stmt.value = m),
        onChange: opts.onChange,
      }),
      remove,
    );
  }
  return el(
    "div",
    { class: "stmt-row if-row" },
    el(
      "div",
      {},
      el("strong", {}, "if "),
      renderCondSlot({
        varTypes: opts.varTypes,
        comparisonOps: opts.palette.comparisonOps,
        get: () => stmt.cond,
        set: (m: CondModel | null) => (stmt.cond = m),
        onChange: opts.onChange,
      }),
      remove,
    ),
    el("div", { class: "branch" }, el("em", {}, "then"), renderStmtList(stmt.then, opts)),
    el("div", { class: "branch" }, el("em", {}, "else"), renderStmtList(stmt.otherwise, opts)),
  );
}

function renderTarget(stmt: Extract<StmtModel, { kind: "assign" }>, opts: StmtEditorOptions): HTMLElement {
  const select = el("select", {}) as HTMLSelectElement;
  for (const attr of opts.palette.attributes) {
    select.append(
      el(
        "option",
        { value: `attr:${attr.name}`, selected: "attr" in stmt.target && stmt.target.attr === attr.name },
        attr.name.replace("_", " "),
      ),
    );
  }
  select.append(el("option", { value: "var", selected: "varName" in stmt.target }, "variable…"));
  const box = el("span", { class: "target" }, select);
  if ("varName" in stmt.target) {
    const name = el("input", { type: "text", value: stmt.target.varName, placeholder: "name" }) as HTMLInputElement;
    name.addEventListener("change", () => {
      stmt.target = { varName: name.value.trim() || "v0" };
      opts.onChange();
    });
    box.append(name);
  }
  select.addEventListener("change", () => {
    if (select.value === "var") {
      stmt.target = { varName: "v0" };
    } else {
      stmt.target = { attr: select.value.split(":")[1] as AttrName };
    }
    opts.onChange();
  });
  return box;
}

function targetType(stmt: Extract<StmtModel, { kind: "assign" }>, vars: Map<string, SlotType>): SlotType {
  if ("attr" in stmt.target) return stmt.target.attr === "size" ? "int" : "color";
  return vars.get(stmt.target.varName) ?? (stmt.value ? "int" : "int");
}

/** Variable types implied by the statement lists, first assignment wins. */
export function collectVarTypes(lists: StmtModel[][]): Map<string, SlotType> {
  const vars = new Map<string, SlotType>();
  let grew = true;
  while (grew) {
    grew = false;
    const visit = (stmts: StmtModel[]): void => {
      for (const stmt of stmts) {
        if (stmt.kind === "assign" && "varName" in stmt.target && !vars.has(stmt.target.varName)) {
          const ty = valueType(stmt.value, vars);
          if (ty) {
            vars.set(stmt.target.varName, ty);
            grew = true;
          }
        } else if (stmt.kind === "if") {
          visit(stmt.then);
          visit(stmt.otherwise);
        }
      }
    };
    lists.forEach(visit);
  }
  return vars;
}

function valueType(model: ExprModel | null, vars: Map<string, SlotType>): SlotType | null {
  if (model === null) return null;
  if (model.kind === "var") return vars.get(model.name) ?? null;
  if (model.kind === "color") return "color";
  if (model.kind === "attr") return model.name === "size" ? "int" : "color";
  return "int";
}
