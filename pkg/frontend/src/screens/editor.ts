// Level editor: paint the map with the five texture brushes, set spawn and
// tower, compose the critter program and its mutants, then run server
// validation and analysis. All issues come back from the server; the editor
// only displays them.

import { api, ApiError } from "../api.js";
import { walkProgramPaths } from "../blocks.js";
import { clear, el } from "../render.js";
import { router } from "../router.js";
import {
  applyTool,
  buildLevelDoc,
  editorStateFromLevel,
  emptyEditorState,
  EditorState,
  issueLines,
  Tool,
} from "../editorModel.js";
import { collectVarTypes, renderStmtList, stmtPalette } from "../stmtEditor.js";
import type { IssueDoc, MutationDoc } from "../types.js";

const CATEGORIES = ["tutorial", "beginner", "advanced"];
const EDIT_KINDS = [
  "replace_value",
  "replace_operator",
  "remove_node",
  "swap_branches",
  "negate_condition",
  "drop_conjunct",
];
const CLASSES = ["INITIALIZATION", "ASSIGNMENT", "BRANCH", "CONDITION"];

export async function editorScreen(root: HTMLElement, levelId: string): Promise<void> {
  clear(root);
  const palette = await api.palette();
  const isNew = levelId === "new";
  const state: EditorState = isNew
    ? emptyEditorState()
    : editorStateFromLevel(await api.level(levelId));

  let tool: Tool = "GRASS";
  let painting = false;

  const boardBox = el("div", { class: "board-box" });
  const issuePanel = el("div", { class: "issues" });
  const analysisPanel = el("div", { class: "analysis" });
  const programBox = el("div", { class: "program-editor" });
  const mutantBox = el("div", { class: "mutant-editor" });

  root.append(
    el("h1", {}, isNew ? "New level" : `Edit: ${state.name}`),
    el(
      "div",
      { class: "toolbar" },
      el("button", { onclick: () => router.go({ screen: "levels" }) }, "Back"),
      el("button", { onclick: runValidation }, "Validate"),
      el("button", { onclick: save }, "Save"),
      el("button", { class: "secondary", onclick: runAnalysis }, "Analysis"),
    ),
    metaForm(),
    el(
      "div",
      { class: "editor-columns" },
      el("div", {}, toolPicker(), boardBox),
      el("div", {}, issuePanel, analysisPanel),
    ),
    el("h2", {}, "Critter program"),
    programBox,
    el("h2", {}, "Mutants"),
    mutantBox,
  );

  function metaForm(): HTMLElement {
    const field = (label: string, input: HTMLElement) => el("label", { class: "field" }, label, input);
    const id = textInput(state.id, (v) => (state.id = v));
    if (!isNew) id.setAttribute("disabled", "");
    const category = el("select", {}) as HTMLSelectElement;
    for (const c of CATEGORIES) {
      category.append(el("option", { value: c, selected: c === state.category }, c));
    }
    category.addEventListener("change", () => (state.category = category.value));
    return el(
      "div",
      { class: "meta-form" },
      field("id", id),
      field("name", textInput(state.name, (v) => (state.name = v))),
      field("category", category),
      field("critters", numberInput(state.critters, (v) => (state.critters = v))),
      field("mine budget", numberInput(state.mineBudget, (v) => (state.mineBudget = v))),
      field("difficulty", numberInput(state.difficulty, (v) => (state.difficulty = v))),
    );
  }

  function textInput(value: string, set: (v: string) => void): HTMLInputElement {
    const input = el("input", { type: "text", value }) as HTMLInputElement;
    input.addEventListener("change", () => set(input.value.trim()));
    return input;
  }

  function numberInput(value: number, set: (v: number) => void): HTMLInputElement {
    const input = el("input", { type: "number", value: String(value) }) as HTMLInputElement;
    input.addEventListener("change", () => set(parseInt(input.value || "0", 10)));
    return input;
  }

  function toolPicker(): HTMLElement {
    const box = el("div", { class: "tool-picker" });
    const tools: Tool[] = ["GRASS", "DIRT", "WATER", "ICE", "WOOD", "SPAWN", "TOWER"];
    for (const candidate of tools) {
      const button = el(
        "button",
        {
          class: `tool ${candidate === tool ? "active" : ""} tile-${candidate}`,
          onclick: () => {
            tool = candidate;
            renderBoardEditor();
            const picker = box.parentElement?.querySelector(".tool-picker");
            if (picker) picker.replaceWith(toolPicker());
          },
        },
        candidate.toLowerCase(),
      );
      box.append(button);
    }
    return box;
  }

  function renderBoardEditor(): void {
    clear(boardBox);
    const grid = el("div", { class: "board" });
    grid.style.gridTemplateColumns = `repeat(${state.rows[0].length}, var(--tile))`;
    for (let y = 1; y <= state.rows.length; y++) {
      for (let x = 1; x <= state.rows[0].length; x++) {
        const code = state.rows[y - 1][x - 1];
        const names: Record<string, string> = { G: "GRASS", D: "DIRT", W: "WATER", I: "ICE", O: "WOOD" };
        const tile = el("div", { class: `tile tile-${names[code]}` });
        if (state.spawn[0] === x && state.spawn[1] === y) tile.append(el("span", { class: "marker spawn" }, "⌂"));
        if (state.tower[0] === x && state.tower[1] === y) tile.append(el("span", { class: "marker tower" }, "♜"));
        const paint = () => {
          applyTool(state, tool, x, y);
          renderBoardEditor();
        };
        tile.addEventListener("mousedown", () => {
          painting = true;
          paint();
        });
        tile.addEventListener("mouseover", () => {
          if (painting) paint();
        });
        grid.append(tile);
      }
    }
    window.addEventListener("mouseup", () => (painting = false), { once: true });
    boardBox.append(grid);
  }

  function renderProgramEditor(): void {
    clear(programBox);
    const vars = collectVarTypes([state.init, state.loop]);
    programBox.append(
      el(
        "div",
        { class: "dialog-columns" },
        stmtPalette(palette, true, true),
        el(
          "div",
          {},
          el("h3", {}, "init (runs once, assignments only)"),
          renderStmtList(state.init, {
            palette,
            allowIf: false,
            allowInputs: false,
            varTypes: vars,
            onChange: rerenderPrograms,
          }),
          el("h3", {}, "loop (runs on every tile)"),
          renderStmtList(state.loop, {
            palette,
            allowIf: true,
            allowInputs: true,
            varTypes: vars,
            onChange: rerenderPrograms,
          }),
        ),
      ),
    );
  }

  function rerenderPrograms(): void {
    renderProgramEditor();
    renderMutantEditor();
  }

  function pathOptions(): { label: string; value: string }[] {
    try {
      const doc = buildLevelDoc(state);
      return walkProgramPaths(doc.cut).map((entry) => ({
        label: `${entry.section}[${entry.indices.join(".")}] ${entry.label}`,
        value: JSON.stringify({ section: entry.section, indices: entry.indices }),
      }));
    } catch {
      return [];
    }
  }

  function renderMutantEditor(): void {
    clear(mutantBox);
    const options = pathOptions();
    if (!options.length) {
      mutantBox.append(el("p", { class: "meta" }, "Finish the critter program to define mutants."));
    }
    state.mutants.forEach((mutations, mi) => {
      const section = el("div", { class: "mutant-section" }, el("h3", {}, `Mutant ${mi + 1}`));
      mutations.forEach((mutation, i) => {
        section.append(mutationRow(mutations, mutation, i, options));
      });
      section.append(
        el("button", {
          class: "secondary",
          onclick: () => {
            mutations.push(defaultMutation(options));
            renderMutantEditor();
          },
        }, "Add mutation"),
        el("button", {
          class: "danger",
          onclick: () => {
            state.mutants.splice(mi, 1);
            renderMutantEditor();
          },
        }, "Delete mutant"),
      );
      mutantBox.append(section);
    });
    mutantBox.append(
      el("button", {
        onclick: () => {
          state.mutants.push([defaultMutation(options)]);
          renderMutantEditor();
        },
      }, "Add mutant"),
    );
  }

  function defaultMutation(options: { value: string }[]): MutationDoc {
    const path = options.length ? JSON.parse(options[0].value) : { section: "init", indices: [0] };
    return { class: "INITIALIZATION", path, edit: { kind: "replace_value", value: "GREEN" } };
  }

  function mutationRow(
    list: MutationDoc[],
    mutation: MutationDoc,
    index: number,
    options: { label: string; value: string }[],
  ): HTMLElement {
    const cls = el("select", {}) as HTMLSelectElement;
    for (const c of CLASSES) cls.append(el("option", { value: c, selected: c === mutation.class }, c.toLowerCase()));
    cls.addEventListener("change", () => (mutation.class = cls.value));

    const where = el("select", { class: "path-select" }) as HTMLSelectElement;
    const current = JSON.stringify(mutation.path);
    for (const option of options) {
      where.append(el("option", { value: option.value, selected: option.value === current }, option.label));
    }
    where.addEventListener("change", () => (mutation.path = JSON.parse(where.value)));

    const kind = el("select", {}) as HTMLSelectElement;
    for (const k of EDIT_KINDS) kind.append(el("option", { value: k, selected: k === mutation.edit.kind }, k.replace("_", " ")));

    const payload = el("span", {});
    const renderPayload = () => {
      clear(payload as HTMLElement);
      if (mutation.edit.kind === "replace_value") {
        const value = el("input", {
          type: "text",
          value: String(mutation.edit.value ?? ""),
          placeholder: "3 | GREEN | ICE",
        }) as HTMLInputElement;
        value.addEventListener("change", () => {
          const raw = value.value.trim();
          mutation.edit = { kind: "replace_value", value: /^-?\d+$/.test(raw) ? parseInt(raw, 10) : raw };
        });
        payload.append(value);
      } else if (mutation.edit.kind === "replace_operator") {
        const op = el("input", { type: "text", value: String(mutation.edit.op ?? ""), placeholder: "+ | >= | or | PRIME" }) as HTMLInputElement;
        op.addEventListener("change", () => (mutation.edit = { kind: "replace_operator", op: op.value.trim() }));
        payload.append(op);
      } else if (mutation.edit.kind === "drop_conjunct") {
        const side = el("select", {}) as HTMLSelectElement;
        for (const s of ["left", "right"]) side.append(el("option", { value: s, selected: mutation.edit.side === s }, s));
        side.addEventListener("change", () => (mutation.edit = { kind: "drop_conjunct", side: side.value }));
        payload.append(side);
      }
    };
    kind.addEventListener("change", () => {
      mutation.edit = { kind: kind.value };
      if (kind.value === "drop_conjunct") mutation.edit = { kind: "drop_conjunct", side: "left" };
      if (kind.value === "replace_value") mutation.edit = { kind: "replace_value", value: "GREEN" };
      if (kind.value === "replace_operator") mutation.edit = { kind: "replace_operator", op: "+" };
      renderPayload();
    });
    renderPayload();

    const remove = el("button", { class: "remove", type: "button" }, "x");
    remove.addEventListener("click", () => {
      list.splice(index, 1);
      renderMutantEditor();
    });
    return el("div", { class: "mutation-row" }, cls, where, kind, payload, remove);
  }

  function showIssues(issues: IssueDoc[]): void {
    clear(issuePanel);
    issuePanel.append(el("h3", {}, "Validation"));
    if (!issues.length) {
      issuePanel.append(el("p", { class: "ok" }, "No issues."));
      return;
    }
    for (const line of issueLines(issues)) {
      issuePanel.append(
        el("p", { class: line.severity === "ERROR" ? "error" : "warning" }, `${line.severity} ${line.text}`),
      );
    }
  }

  async function runValidation(): Promise<void> {
    let doc;
    try {
      doc = buildLevelDoc(state);
    } catch (e) {
      showIssues([{ severity: "ERROR", code: "Incomplete", detail: (e as Error).message }]);
      return;
    }
    try {
      const res = await api.validateLevel(doc);
      showIssues(res.issues);
    } catch (e) {
      const message = e instanceof ApiError ? `${e.code}: ${e.message}` : String(e);
      showIssues([{ severity: "ERROR", code: "Schema", detail: message }]);
    }
  }

  async function save(): Promise<void> {
    let doc;
    try {
      doc = buildLevelDoc(state);
    } catch (e) {
      showIssues([{ severity: "ERROR", code: "Incomplete", detail: (e as Error).message }]);
      return;
    }
    try {
      const res = await api.saveLevel(doc);
      showIssues(res.issues);
      issuePanel.append(el("p", { class: "ok" }, `Saved ${res.level.id}.`));
    } catch (e) {
      if (e instanceof ApiError && Array.isArray(e.details)) {
        showIssues(e.details as IssueDoc[]);
      } else {
        showIssues([{ severity: "ERROR", code: "SaveFailed", detail: String(e) }]);
      }
    }
  }

  async function runAnalysis(): Promise<void> {
    clear(analysisPanel);
    analysisPanel.append(el("h3", {}, "Analysis"));
    if (!state.id) {
      analysisPanel.append(el("p", { class: "warning" }, "Save the level first."));
      return;
    }
    try {
      const report = await api.analysis(state.id);
      analysisPanel.append(
        el("p", {}, `routes: ${report.routeCount}`),
        el(
          "p",
          {},
          `minimal mine set (${report.certificate.status}): ${report.minimalMines.length} — ` +
            report.minimalMines.map((m) => `(${m.x},${m.y})`).join(" "),
        ),
        el(
          "p",
          {},
          report.equivalentMutants.length
            ? `equivalent mutants: ${report.equivalentMutants.join(", ")}`
            : "equivalent mutants: none",
        ),
        el("p", { class: "meta" }, "set the mine budget at or above the minimal set size"),
      );
    } catch (e) {
      const message = e instanceof ApiError ? `${e.code}: ${e.message}` : String(e);
      analysisPanel.append(el("p", { class: "error" }, message));
    }
  }

  renderBoardEditor();
  renderProgramEditor();
  renderMutantEditor();
}
