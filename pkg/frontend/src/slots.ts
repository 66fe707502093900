// Drag-and-drop plumbing for block composition: palette items carry a block
// descriptor, slots accept or visually reject it based on the type they
// expect, and filled slots re-render as removable blocks.

import { CondModel, ExprModel, exprModelType } from "./blocks.js";
import { canDrop, SlotType } from "./checker.js";
import { el } from "./render.js";

const MIME = "application/x-critter-block";

export type BlockDesc =
  | { make: "expr"; model: ExprModel }
  | { make: "cond"; model: CondModel }
  | { make: "stmt"; stmt: "assign" | "if" }
  | { make: "assert" }
  | { make: "setup" };

export function paletteBlock(label: string, desc: BlockDesc, cssKind: string): HTMLElement {
  const block = el("span", { class: `block palette-block ${cssKind}`, draggable: "true" }, label);
  block.addEventListener("dragstart", (ev) => {
    (ev as DragEvent).dataTransfer?.setData(MIME, JSON.stringify(desc));
  });
  return block;
}

export function readBlock(ev: DragEvent): BlockDesc | null {
  const raw = ev.dataTransfer?.getData(MIME);
  if (!raw) return null;
  try {
    return JSON.parse(raw) as BlockDesc;
  } catch {
    return null;
  }
}

function flashReject(target: HTMLElement): void {
  target.classList.add("reject");
  setTimeout(() => target.classList.remove("reject"), 350);
}

export interface ExprSlotOptions {
  expected: SlotType;
  varTypes: Map<string, SlotType>;
  get: () => ExprModel | null;
  set: (model: ExprModel | null) => void;
  onChange: () => void;
}

function offeredType(model: ExprModel, vars: Map<string, SlotType>): SlotType | null {
  if (model.kind === "var") return vars.get(model.name) ?? null;
  return exprModelType(model);
}

export function renderExprSlot(opts: ExprSlotOptions): HTMLElement {
  const model = opts.get();
  if (model === null) {
    const slot = el("span", { class: `slot empty ${opts.expected}` }, opts.expected === "int" ? "number" : "color");
    slot.addEventListener("dragover", (ev) => ev.preventDefault());
    slot.addEventListener("drop", (ev) => {
      ev.preventDefault();
      ev.stopPropagation();
      const desc = readBlock(ev as DragEvent);
      if (!desc || desc.make !== "expr") return flashReject(slot);
      if (!canDrop(opts.expected, offeredType(desc.model, opts.varTypes))) {
        return flashReject(slot); // e.g. a color into an integer slot
      }
      opts.set(structuredClone(desc.model));
      opts.onChange();
    });
    return slot;
  }
  return renderExprBlock(model, opts);
}

function removable(opts: { set: (m: null) => void; onChange: () => void }): HTMLElement {
  const button = el("button", { class: "remove", type: "button" }, "x");
  button.addEventListener("click", () => {
    opts.set(null);
    opts.onChange();
  });
  return button;
}

function renderExprBlock(model: ExprModel, opts: ExprSlotOptions): HTMLElement {
  const wrap = (cls: string, ...children: (Node | string)[]) =>
    el("span", { class: `block ${cls}` }, ...children, removable(opts));
  switch (model.kind) {
    case "int": {
      const input = el("input", {
        type: "number",
        value: String(model.value),
      }) as HTMLInputElement;
      input.addEventListener("change", () => {
        model.value = parseInt(input.value || "0", 10);
        opts.onChange();
      });
      return wrap("int-block", input);
    }
    case "color":
      return wrap(`color-block swatch-${model.value}`, model.value.toLowerCase());
    case "attr":
      return wrap("attr-block", model.name.replace("_", " "));
    case "input":
      return wrap("input-block", `tile ${model.axis}`);
    case "var":
      return wrap("var-block", model.name);
    case "binop": {
      const op = el("select", {}) as HTMLSelectElement;
      for (const candidate of ["+", "-", "*", "/"]) {
        op.append(el("option", { value: candidate, selected: candidate === model.op }, candidate));
      }
      op.addEventListener("change", () => {
        model.op = op.value;
        opts.onChange();
      });
      return wrap(
        "math-block",
        renderExprSlot({ ...opts, expected: "int", get: () => model.lhs, set: (m) => (model.lhs = m) }),
        op,
        renderExprSlot({ ...opts, expected: "int", get: () => model.rhs, set: (m) => (model.rhs = m) }),
      );
    }
  }
}

export interface CondSlotOptions {
  varTypes: Map<string, SlotType>;
  comparisonOps: string[];
  get: () => CondModel | null;
  set: (model: CondModel | null) => void;
  onChange: () => void;
}

export function renderCondSlot(opts: CondSlotOptions): HTMLElement {
  const model = opts.get();
  if (model === null) {
    const slot = el("span", { class: "slot empty bool" }, "condition");
    slot.addEventListener("dragover", (ev) => ev.preventDefault());
    slot.addEventListener("drop", (ev) => {
      ev.preventDefault();
      ev.stopPropagation();
      const desc = readBlock(ev as DragEvent);
      if (!desc || desc.make !== "cond") return flashReject(slot);
      opts.set(structuredClone(desc.model));
      opts.onChange();
    });
    return slot;
  }
  return renderCondBlock(model, opts);
}

function renderCondBlock(model: CondModel, opts: CondSlotOptions): HTMLElement {
  const wrap = (cls: string, ...children: (Node | string)[]) =>
    el(
      "span",
      { class: `block ${cls}` },
      ...children,
      removable({ set: () => opts.set(null), onChange: opts.onChange }),
    );
  const exprOpts = (get: () => ExprModel | null, set: (m: ExprModel | null) => void, expected: SlotType) =>
    renderExprSlot({ expected, varTypes: opts.varTypes, get, set, onChange: opts.onChange });
  switch (model.kind) {
    case "texture_is":
      return wrap(`texture-block tile-${model.texture}`, `tile is ${model.texture.toLowerCase()}`);
    case "compare": {
      const op = el("select", {}) as HTMLSelectElement;
      for (const candidate of opts.comparisonOps) {
        op.append(el("option", { value: candidate, selected: candidate === model.op }, candidate));
      }
      op.addEventListener("change", () => {
        model.op = op.value;
        opts.onChange();
      });
      // both operand families allowed; the server flags ordered color compares
      const lhsType = sideType(model.lhs, opts.varTypes);
      const rhsType = sideType(model.rhs, opts.varTypes);
      const expected: SlotType = lhsType ?? rhsType ?? "int";
      return wrap(
        "compare-block",
        exprOpts(() => model.lhs, (m) => (model.lhs = m), expected),
        op,
        exprOpts(() => model.rhs, (m) => (model.rhs = m), expected),
      );
    }
    case "predicate":
      return wrap(
        "pred-block",
        exprOpts(() => model.operand, (m) => (model.operand = m), "int"),
        ` is ${model.pred.toLowerCase()}`,
      );
    case "and":
    case "or":
      return wrap(
        "bool-block",
        renderCondSlot({ ...opts, get: () => model.lhs, set: (m) => (model.lhs = m) }),
        ` ${model.kind} `,
        renderCondSlot({ ...opts, get: () => model.rhs, set: (m) => (model.rhs = m) }),
      );
    case "not":
      return wrap(
        "bool-block",
        "not ",
        renderCondSlot({ ...opts, get: () => model.operand, set: (m) => (model.operand = m) }),
      );
  }
}

function sideType(model: ExprModel | null, vars: Map<string, SlotType>): SlotType | null {
  return model === null ? null : offeredType(model, vars);
}
