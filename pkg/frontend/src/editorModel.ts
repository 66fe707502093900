// Pure level-editor state: board painting, document assembly, issue display.
// The DOM layer on top of this stays thin, so the behavior is testable
// without a browser.

import { stmtFromDoc, stmtToDoc, StmtModel } from "./blocks.js";
import type { ExprDoc, IssueDoc, LevelDoc, MutationDoc, TextureName } from "./types.js";

export const TEXTURE_CODES: Record<TextureName, string> = {
  GRASS: "G",
  DIRT: "D",
  WATER: "W",
  ICE: "I",
  WOOD: "O",
};

export type Tool = TextureName | "SPAWN" | "TOWER";

export interface EditorState {
  id: string;
  name: string;
  category: string;
  rows: string[][]; // mutable grid of tile codes
  spawn: [number, number];
  tower: [number, number];
  init: StmtModel[];
  loop: StmtModel[];
  mutants: MutationDoc[][];
  critters: number;
  mineBudget: number;
  difficulty: number;
}

export function emptyEditorState(width = 16, height = 16): EditorState {
  const rows = Array.from({ length: height }, (_, y) =>
    Array.from({ length: width }, () => (y === Math.floor(height / 2) ? "G" : "O")),
  );
  return {
    id: "",
    name: "",
    category: "beginner",
    rows,
    spawn: [1, Math.floor(height / 2) + 1],
    tower: [width, Math.floor(height / 2) + 1],
    init: [],
    loop: [],
    mutants: [],
    critters: 3,
    mineBudget: 2,
    difficulty: 1,
  };
}

export function editorStateFromLevel(doc: LevelDoc): EditorState {
  return {
    id: doc.id,
    name: doc.name,
    category: doc.category,
    rows: doc.board.tiles.map((row) => row.split("")),
    spawn: [...doc.board.spawn],
    tower: [...doc.board.tower],
    init: doc.cut.init.map(stmtFromDoc),
    loop: doc.cut.loop.map(stmtFromDoc),
    mutants: doc.mutants.map((list) => list.map((m) => structuredClone(m))),
    critters: doc.critters,
    mineBudget: doc.mineBudget,
    difficulty: doc.difficulty,
  };
}

export function applyTool(state: EditorState, tool: Tool, x: number, y: number): void {
  if (tool === "SPAWN") {
    state.spawn = [x, y];
  } else if (tool === "TOWER") {
    state.tower = [x, y];
  } else {
    state.rows[y - 1][x - 1] = TEXTURE_CODES[tool];
  }
}

export function buildLevelDoc(state: EditorState): LevelDoc {
  const cutInit = state.init.map(stmtToDoc);
  const cutLoop = state.loop.map(stmtToDoc);
  return {
    version: 1,
    id: state.id,
    name: state.name,
    category: state.category,
    board: {
      width: state.rows[0].length,
      height: state.rows.length,
      tiles: state.rows.map((row) => row.join("")),
      spawn: state.spawn,
      tower: state.tower,
    },
    cut: { init: cutInit as ExprDoc[], loop: cutLoop as ExprDoc[] },
    mutants: state.mutants,
    critters: state.critters,
    mineBudget: state.mineBudget,
    difficulty: state.difficulty,
  };
}

export interface IssueLine {
  severity: "ERROR" | "WARNING";
  text: string;
}

export function issueLines(issues: IssueDoc[]): IssueLine[] {
  const ordered = [...issues].sort((a, b) =>
    a.severity === b.severity ? 0 : a.severity === "ERROR" ? -1 : 1,
  );
  return ordered.map((issue) => ({
    severity: issue.severity,
    text: `${issue.code}: ${issue.detail}`,
  }));
}

export function hasErrors(issues: IssueDoc[]): boolean {
  return issues.some((issue) => issue.severity === "ERROR");
}
