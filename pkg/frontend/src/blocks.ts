// Editable block models: partially-filled program trees the editors mutate
// in place, converted to wire documents only when every slot is filled.
// Rendering labels for nodes and diffs also lives here.

import type {
  AttrName,
  ColorName,
  CritterProgramDoc,
  DiffEntryDoc,
  ExprDoc,
  PredName,
  TextureName,
} from "./types.js";
import type { SlotType } from "./checker.js";

export type ExprModel =
  | { kind: "int"; value: number }
  | { kind: "color"; value: ColorName }
  | { kind: "attr"; name: AttrName }
  | { kind: "input"; axis: "x" | "y" }
  | { kind: "var"; name: string }
  | { kind: "binop"; op: string; lhs: ExprModel | null; rhs: ExprModel | null };

export type CondModel =
  | { kind: "compare"; op: string; lhs: ExprModel | null; rhs: ExprModel | null }
  | { kind: "predicate"; pred: PredName; operand: ExprModel | null }
  | { kind: "texture_is"; texture: TextureName }
  | { kind: "and"; lhs: CondModel | null; rhs: CondModel | null }
  | { kind: "or"; lhs: CondModel | null; rhs: CondModel | null }
  | { kind: "not"; operand: CondModel | null };

export type StmtModel =
  | { kind: "assign"; target: { attr: AttrName } | { varName: string }; value: ExprModel | null }
  | { kind: "if"; cond: CondModel | null; then: StmtModel[]; otherwise: StmtModel[] };

export class IncompleteProgram extends Error {}

export function exprModelType(model: ExprModel | null): SlotType | null {
  if (model === null) return null;
  switch (model.kind) {
    case "int":
    case "input":
      return "int";
    case "color":
      return "color";
    case "attr":
      return model.name === "size" ? "int" : "color";
    case "var":
      return null; // unknown until the context resolves it
    case "binop":
      return "int";
  }
}

export function exprToDoc(model: ExprModel | null): ExprDoc {
  if (model === null) throw new IncompleteProgram("an expression slot is empty");
  switch (model.kind) {
    case "int":
      return { kind: "int", value: model.value };
    case "color":
      return { kind: "color", value: model.value };
    case "attr":
      return { kind: "attr", name: model.name };
    case "input":
      return { kind: "input", axis: model.axis };
    case "var":
      return { kind: "var", name: model.name };
    case "binop":
      return { kind: "binop", op: model.op, lhs: exprToDoc(model.lhs), rhs: exprToDoc(model.rhs) };
  }
}

export function condToDoc(model: CondModel | null): ExprDoc {
  if (model === null) throw new IncompleteProgram("a condition slot is empty");
  switch (model.kind) {
    case "compare":
      return { kind: "compare", op: model.op, lhs: exprToDoc(model.lhs), rhs: exprToDoc(model.rhs) };
    case "predicate":
      return { kind: "predicate", pred: model.pred, operand: exprToDoc(model.operand) };
    case "texture_is":
      return { kind: "texture_is", texture: model.texture };
    case "and":
    case "or":
      return { kind: model.kind, lhs: condToDoc(model.lhs), rhs: condToDoc(model.rhs) };
    case "not":
      return { kind: "not", operand: condToDoc(model.operand) };
  }
}

export function stmtToDoc(model: StmtModel): ExprDoc {
  if (model.kind === "assign") {
    const target: ExprDoc =
      "attr" in model.target
        ? { kind: "attr", name: model.target.attr }
        : { kind: "var", name: model.target.varName };
    return { kind: "assign", target, value: exprToDoc(model.value) };
  }
  return {
    kind: "if",
    cond: condToDoc(model.cond),
    then: model.then.map(stmtToDoc),
    else: model.otherwise.map(stmtToDoc),
  };
}

export function stmtFromDoc(doc: ExprDoc): StmtModel {
  if (doc.kind === "assign") {
    const target = doc.target as ExprDoc;
    return {
      kind: "assign",
      target:
        target.kind === "attr"
          ? { attr: target.name as AttrName }
          : { varName: target.name as string },
      value: exprFromDoc(doc.value as ExprDoc),
    };
  }
  if (doc.kind === "if") {
    return {
      kind: "if",
      cond: condFromDoc(doc.cond as ExprDoc),
      then: (doc.then as ExprDoc[]).map(stmtFromDoc),
      otherwise: (doc.else as ExprDoc[]).map(stmtFromDoc),
    };
  }
  throw new Error(`not a statement: ${doc.kind}`);
}

export function exprFromDoc(doc: ExprDoc): ExprModel {
  switch (doc.kind) {
    case "int":
      return { kind: "int", value: doc.value as number };
    case "color":
      return { kind: "color", value: doc.value as ColorName };
    case "attr":
      return { kind: "attr", name: doc.name as AttrName };
    case "input":
      return { kind: "input", axis: doc.axis as "x" | "y" };
    case "var":
      return { kind: "var", name: doc.name as string };
    case "binop":
      return {
        kind: "binop",
        op: doc.op as string,
        lhs: exprFromDoc(doc.lhs as ExprDoc),
        rhs: exprFromDoc(doc.rhs as ExprDoc),
      };
    default:
      throw new Error(`not an expression: ${doc.kind}`);
  }
}

export function condFromDoc(doc: ExprDoc): CondModel {
  switch (doc.kind) {
    case "compare":
      return {
        kind: "compare",
        op: doc.op as string,
        lhs: exprFromDoc(doc.lhs as ExprDoc),
        rhs: exprFromDoc(doc.rhs as ExprDoc),
      };
    case "predicate":
      return {
        kind: "predicate",
        pred: doc.pred as PredName,
        operand: exprFromDoc(doc.operand as ExprDoc),
      };
    case "texture_is":
      return { kind: "texture_is", texture: doc.texture as TextureName };
    case "and":
    case "or":
      return {
        kind: doc.kind,
        lhs: condFromDoc(doc.lhs as ExprDoc),
        rhs: condFromDoc(doc.rhs as ExprDoc),
      };
    case "not":
      return { kind: "not", operand: condFromDoc(doc.operand as ExprDoc) };
    default:
      throw new Error(`not a condition: ${doc.kind}`);
  }
}

// ---------------------------------------------------------------------------
// human-readable rendering of wire documents (mutant review, path pickers)

export function nodeLabel(doc: ExprDoc | null): string {
  if (doc === null) return "(removed)";
  switch (doc.kind) {
    case "int":
      return String(doc.value);
    case "color":
      return String(doc.value).toLowerCase();
    case "attr":
      return String(doc.name).replace("_", " ");
    case "input":
      return `tile ${doc.axis}`;
    case "var":
      return String(doc.name);
    case "binop":
    case "compare":
      return `${nodeLabel(doc.lhs as ExprDoc)} ${doc.op} ${nodeLabel(doc.rhs as ExprDoc)}`;
    case "predicate":
      return "operand" in doc
        ? `${nodeLabel(doc.operand as ExprDoc)} is ${String(doc.pred).toLowerCase()}`
        : `is ${String(doc.pred).toLowerCase()}`;
    case "texture_is":
      return `tile is ${String(doc.texture).toLowerCase()}`;
    case "and":
      return `(${nodeLabel(doc.lhs as ExprDoc)}) and (${nodeLabel(doc.rhs as ExprDoc)})`;
    case "or":
      return `(${nodeLabel(doc.lhs as ExprDoc)}) or (${nodeLabel(doc.rhs as ExprDoc)})`;
    case "not":
      return `not (${nodeLabel(doc.operand as ExprDoc)})`;
    case "assign":
      return `${nodeLabel(doc.target as ExprDoc)} := ${nodeLabel(doc.value as ExprDoc)}`;
    case "if": {
      const thenCount = (doc.then as ExprDoc[]).length;
      const elseCount = (doc.else as ExprDoc[]).length;
      const tail = elseCount ? ` else [${elseCount}]` : "";
      return `if ${nodeLabel(doc.cond as ExprDoc)} then [${thenCount}]${tail}`;
    }
    case "equals":
      return `== ${nodeLabel(doc.value as ExprDoc)}`;
    case "assert":
      return `assert ${nodeLabel(doc.property as ExprDoc)} ${nodeLabel(doc.matcher as ExprDoc)}`;
    default:
      return doc.kind;
  }
}

export function diffLabel(entry: DiffEntryDoc): string {
  const where = `${entry.path.section}[${entry.path.indices.join(".")}]`;
  return `${entry.class.toLowerCase()} at ${where}: ${nodeLabel(entry.before)} -> ${nodeLabel(entry.after)}`;
}

// ---------------------------------------------------------------------------
// node paths of a critter program document, for the mutation editor

export interface PathEntry {
  section: string;
  indices: number[];
  label: string;
  node: ExprDoc;
}

export function walkProgramPaths(cut: CritterProgramDoc): PathEntry[] {
  const out: PathEntry[] = [];

  function visit(node: ExprDoc, section: string, indices: number[]): void {
    out.push({ section, indices, label: nodeLabel(node), node });
    const slots = childSlots(node);
    slots.forEach((slot, slotIndex) => {
      if (Array.isArray(slot)) {
        slot.forEach((child, childIndex) =>
          visit(child, section, [...indices, slotIndex, childIndex]),
        );
      } else if (slot) {
        visit(slot, section, [...indices, slotIndex]);
      }
    });
  }

  cut.init.forEach((stmt, i) => visit(stmt, "init", [i]));
  cut.loop.forEach((stmt, i) => visit(stmt, "loop", [i]));
  return out;
}

function childSlots(node: ExprDoc): (ExprDoc | ExprDoc[] | null)[] {
  switch (node.kind) {
    case "assign":
      return [node.target as ExprDoc, node.value as ExprDoc];
    case "if":
      return [node.cond as ExprDoc, node.then as ExprDoc[], node.else as ExprDoc[]];
    case "binop":
    case "compare":
    case "and":
    case "or":
      return [node.lhs as ExprDoc, node.rhs as ExprDoc];
    case "predicate":
      return "operand" in node ? [node.operand as ExprDoc] : [];
    case "not":
      return [node.operand as ExprDoc];
    case "assert":
      return [node.property as ExprDoc, node.matcher as ExprDoc];
    case "equals":
      return [node.value as ExprDoc];
    default:
      return [];
  }
}
