// The mine dialog: palette of blocks on the left, the test under
// construction on the right, composed by drag and drop. Ill-typed drops are
// rejected on the spot; whole-test issues are shown inline before saving.

import { ExprModel, exprToDoc, IncompleteProgram } from "./blocks.js";
import { attrType, checkTest, exprType, SlotType } from "./checker.js";
import { clear, dismiss, el, show } from "./render.js";
import { paletteBlock, readBlock, renderExprSlot } from "./slots.js";
import type { AssertDoc, AttrName, MineDoc, PaletteDoc, PredName, TestProgramDoc } from "./types.js";

interface AssertRow {
  property: AttrName | null;
  matcherKind: "equals" | "predicate";
  value: ExprModel | null;
  pred: PredName;
}

interface SetupRow {
  name: string;
  value: ExprModel | null;
}

export interface MineDialogOptions {
  x: number;
  y: number;
  palette: PaletteDoc;
  existing: MineDoc | null;
  onSave: (mine: MineDoc) => void;
  onRemove: (() => void) | null;
}

export function openMineDialog(opts: MineDialogOptions): void {
  const asserts: AssertRow[] = [];
  const setup: SetupRow[] = [];
  if (opts.existing) {
    for (const stmt of opts.existing.test.setup) {
      setup.push({
        name: (stmt.target as { name: string }).name,
        value: modelFromDoc(stmt.value),
      });
    }
    for (const a of opts.existing.test.asserts) {
      asserts.push({
        property: a.property.name,
        matcherKind: a.matcher.kind,
        value: a.matcher.kind === "equals" ? modelFromDoc(a.matcher.value) : null,
        pred: a.matcher.kind === "predicate" ? a.matcher.pred : opts.palette.predicates[0],
      });
    }
  } else {
    asserts.push(freshAssert());
  }

  const issueBox = el("div", { class: "issues" });
  const workspace = el("div", { class: "mine-workspace" });
  const dialog = el(
    "div",
    { class: "overlay" },
    el(
      "div",
      { class: "dialog mine-dialog" },
      el("h2", {}, `Mine at (${opts.x}, ${opts.y})`),
      el(
        "div",
        { class: "dialog-columns" },
        buildPalette(opts.palette),
        workspace,
      ),
      issueBox,
      el(
        "div",
        { class: "dialog-actions" },
        el("button", { type: "button", onclick: save }, "Save mine"),
        opts.onRemove
          ? el("button", { type: "button", class: "danger", onclick: removeMine }, "Remove mine")
          : null,
        el("button", { type: "button", onclick: () => dismiss(dialog) }, "Cancel"),
      ),
    ),
  );

  function freshAssert(): AssertRow {
    return { property: null, matcherKind: "equals", value: null, pred: opts.palette.predicates[0] };
  }

  function varTypes(): Map<string, SlotType> {
    const vars = new Map<string, SlotType>();
    for (const row of setup) {
      if (!row.name || row.value === null) continue;
      try {
        const doc = exprToDoc(row.value);
        const ty = exprTypeOf(doc, vars);
        if (ty) vars.set(row.name, ty);
      } catch {
        // incomplete rows define nothing yet
      }
    }
    return vars;
  }

  function rerender(): void {
    clear(workspace);
    workspace.append(el("h3", {}, "setup"));
    setup.forEach((row, i) => {
      const name = el("input", { type: "text", value: row.name, placeholder: "name" }) as HTMLInputElement;
      name.addEventListener("change", () => {
        row.name = name.value.trim();
        rerender();
      });
      workspace.append(
        el(
          "div",
          { class: "stmt-row" },
          name,
          " := ",
          renderExprSlot({
            expected: guessSetupType(row),
            varTypes: varTypes(),
            get: () => row.value,
            set: (m) => (row.value = m),
            onChange: rerender,
          }),
          rowRemove(() => setup.splice(i, 1)),
        ),
      );
    });
    workspace.append(el("h3", {}, "asserts"));
    asserts.forEach((row, i) => workspace.append(assertRow(row, i)));
    const dropArea = el("div", { class: "drop-area" }, "drag an assert or variable block here");
    dropArea.addEventListener("dragover", (ev) => ev.preventDefault());
    dropArea.addEventListener("drop", (ev) => {
      ev.preventDefault();
      const desc = readBlock(ev as DragEvent);
      if (desc?.make === "assert") asserts.push(freshAssert());
      else if (desc?.make === "setup") setup.push({ name: `v${setup.length}`, value: null });
      else return;
      rerender();
    });
    workspace.append(dropArea);
  }

  function guessSetupType(row: SetupRow): SlotType {
    if (row.value === null) return "int";
    try {
      return exprTypeOf(exprToDoc(row.value), varTypes()) ?? "int";
    } catch {
      return "int";
    }
  }

  function rowRemove(action: () => void): HTMLElement {
    const button = el("button", { class: "remove", type: "button" }, "x");
    button.addEventListener("click", () => {
      action();
      rerender();
    });
    return button;
  }

  function assertRow(row: AssertRow, index: number): HTMLElement {
    const propertySlot = row.property
      ? el("span", { class: "block attr-block" }, row.property.replace("_", " "), rowRemove(() => (asserts[index].property = null)))
      : (() => {
          const slot = el("span", { class: "slot empty property" }, "property");
          slot.addEventListener("dragover", (ev) => ev.preventDefault());
          slot.addEventListener("drop", (ev) => {
            ev.preventDefault();
            const desc = readBlock(ev as DragEvent);
            if (desc?.make === "expr" && desc.model.kind === "attr") {
              row.property = desc.model.name;
              if (attrType(row.property) === "color") row.matcherKind = "equals";
              rerender();
            } else {
              slot.classList.add("reject");
              setTimeout(() => slot.classList.remove("reject"), 350);
            }
          });
          return slot;
        })();

    const children: (Node | string)[] = [el("strong", {}, "assert "), propertySlot];
    if (row.property && attrType(row.property) === "int") {
      const matcher = el("select", {}) as HTMLSelectElement;
      matcher.append(el("option", { value: "equals", selected: row.matcherKind === "equals" }, "=="));
      for (const pred of opts.palette.predicates) {
        matcher.append(
          el(
            "option",
            { value: `predicate:${pred}`, selected: row.matcherKind === "predicate" && row.pred === pred },
            `is ${pred.toLowerCase()}`,
          ),
        );
      }
      matcher.addEventListener("change", () => {
        if (matcher.value === "equals") {
          row.matcherKind = "equals";
        } else {
          row.matcherKind = "predicate";
          row.pred = matcher.value.split(":")[1] as PredName;
        }
        rerender();
      });
      children.push(matcher);
    } else {
      children.push(" == ");
    }
    if (row.matcherKind === "equals") {
      children.push(
        renderExprSlot({
          expected: row.property ? attrType(row.property) : "color",
          varTypes: varTypes(),
          get: () => row.value,
          set: (m) => (row.value = m),
          onChange: rerender,
        }),
      );
    }
    children.push(rowRemove(() => asserts.splice(index, 1)));
    return el("div", { class: "stmt-row assert-row" }, ...children);
  }

  function toDoc(): TestProgramDoc {
    const doc: TestProgramDoc = { setup: [], asserts: [] };
    for (const row of setup) {
      if (!row.name) throw new IncompleteProgram("a setup variable needs a name");
      doc.setup.push({
        kind: "assign",
        target: { kind: "var", name: row.name },
        value: exprToDoc(row.value),
      });
    }
    for (const row of asserts) {
      if (!row.property) throw new IncompleteProgram("an assert needs a property");
      const assert: AssertDoc = {
        kind: "assert",
        property: { kind: "attr", name: row.property },
        matcher:
          row.matcherKind === "equals"
            ? { kind: "equals", value: exprToDoc(row.value) }
            : { kind: "predicate", pred: row.pred },
      };
      doc.asserts.push(assert);
    }
    return doc;
  }

  function save(): void {
    clear(issueBox);
    let test: TestProgramDoc;
    try {
      test = toDoc();
    } catch (e) {
      issueBox.append(el("p", { class: "error" }, (e as Error).message));
      return;
    }
    const issues = checkTest(test);
    if (issues.length) {
      for (const issue of issues) {
        issueBox.append(el("p", { class: "error" }, `${issue.where}: ${issue.message}`));
      }
      return;
    }
    dismiss(dialog);
    opts.onSave({ x: opts.x, y: opts.y, test });
  }

  function removeMine(): void {
    dismiss(dialog);
    opts.onRemove?.();
  }

  rerender();
  show(dialog);
}

function buildPalette(palette: PaletteDoc): HTMLElement {
  const groups: [string, HTMLElement[]][] = [
    ["test blocks", [
      paletteBlock("assert", { make: "assert" }, "assert"),
      paletteBlock("variable", { make: "setup" }, "var"),
    ]],
    ["properties", palette.attributes.map((attr) =>
      paletteBlock(attr.name.replace("_", " "), { make: "expr", model: { kind: "attr", name: attr.name } }, "attr"),
    )],
    ["colors", palette.colors.map((color) =>
      paletteBlock(color.toLowerCase(), { make: "expr", model: { kind: "color", value: color } }, `color swatch-${color}`),
    )],
    ["numbers", [
      paletteBlock("number", { make: "expr", model: { kind: "int", value: 0 } }, "int"),
      ...palette.inputs.map((axis) =>
        paletteBlock(`tile ${axis}`, { make: "expr", model: { kind: "input", axis } }, "input"),
      ),
      paletteBlock("math", { make: "expr", model: { kind: "binop", op: "+", lhs: null, rhs: null } }, "math"),
      paletteBlock("variable ref", { make: "expr", model: { kind: "var", name: "v0" } }, "var"),
    ]],
  ];
  const box = el("div", { class: "palette" });
  for (const [title, blocks] of groups) {
    box.append(el("h3", {}, title), el("div", { class: "palette-group" }, ...blocks));
  }
  return box;
}

// local, import-cycle-free copies of tiny helpers

function modelFromDoc(doc: unknown): ExprModel {
  const d = doc as Record<string, unknown>;
  switch (d.kind) {
    case "int":
      return { kind: "int", value: d.value as number };
    case "color":
      return { kind: "color", value: d.value as never };
    case "attr":
      return { kind: "attr", name: d.name as never };
    case "input":
      return { kind: "input", axis: d.axis as never };
    case "var":
      return { kind: "var", name: d.name as string };
    case "binop":
      return {
        kind: "binop",
        op: d.op as string,
        lhs: modelFromDoc(d.lhs),
        rhs: modelFromDoc(d.rhs),
      };
    default:
      throw new Error(`not an expression: ${String(d.kind)}`);
  }
}

function exprTypeOf(doc: unknown, vars: Map<string, SlotType>): SlotType | null {
  return exprType(doc as never, vars);
}
