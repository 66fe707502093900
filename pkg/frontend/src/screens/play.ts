// The play screen: place mines on the board, start the game, then replay
// the server's event log with pause/reset/speed controls. The finish
// scoreboard offers score submission and the mutant review view.

import { api, ApiError } from "../api.js";
import { diffLabel, nodeLabel } from "../blocks.js";
import { isWalkable, rejectTile, renderBoard } from "../boardView.js";
import { openMineDialog } from "../mineDialog.js";
import { clear, dismiss, el, show } from "../render.js";
import { ReplayMachine } from "../replay.js";
import { router } from "../router.js";
import type { GameDoc, LevelDoc, MineDoc, PaletteDoc } from "../types.js";

const BASE_TICK_MS = 400;

export async function playScreen(root: HTMLElement, levelId: string): Promise<void> {
  clear(root);
  const [level, palette] = await Promise.all([api.level(levelId), api.palette()]);

  const mines: MineDoc[] = [];
  let game: GameDoc | null = null;
  let machine: ReplayMachine | null = null;
  let timer: number | null = null;
  let speed = 1;
  let scoreboardShown = false;

  const boardBox = el("div", { class: "board-box" });
  const controls = el("div", { class: "toolbar" });
  const rosterBox = el("div", { class: "roster" });
  const statusLine = el("p", { class: "status" });

  root.append(
    el("h1", {}, level.name),
    el(
      "div",
      { class: "toolbar" },
      el("button", { onclick: () => router.go({ screen: "levels" }) }, "Back"),
      el(
        "span",
        { class: "meta" },
        ` mine budget ${level.mineBudget} · ${level.critters} critters · ${level.mutants.length} mutants`,
      ),
    ),
    controls,
    boardBox,
    statusLine,
    rosterBox,
  );

  function stopTimer(): void {
    if (timer !== null) {
      clearInterval(timer);
      timer = null;
    }
  }

  function startTimer(): void {
    stopTimer();
    timer = setInterval(tickForward, BASE_TICK_MS / speed) as unknown as number;
  }

  function tickForward(): void {
    if (!machine) return;
    machine.advance();
    renderAll();
    if (machine.finished) {
      stopTimer();
      if (!scoreboardShown) {
        scoreboardShown = true;
        showScoreboard();
      }
    }
  }

  function renderControls(): void {
    clear(controls);
    if (!game) {
      controls.append(
        el("button", { onclick: startGame }, "Start game"),
        el("span", { class: "meta" }, ` ${mines.length} mine(s) placed — click a walkable tile to add one`),
      );
      return;
    }
    controls.append(
      timer === null
        ? el("button", { onclick: () => { startTimer(); renderControls(); } }, "Play")
        : el("button", { onclick: () => { stopTimer(); renderControls(); } }, "Pause"),
      el("button", {
        onclick: () => {
          stopTimer();
          machine?.reset();
          scoreboardShown = true; // a reset replay should not re-open the dialog
          renderAll();
          renderControls();
        },
      }, "Reset"),
      ...[1, 2, 4].map((factor) =>
        el(
          "button",
          {
            class: speed === factor ? "active" : "secondary",
            onclick: () => {
              speed = factor;
              if (timer !== null) startTimer();
              renderControls();
            },
          },
          `x${factor}`,
        ),
      ),
      el("button", { class: "secondary", onclick: showScoreboard }, "Scoreboard"),
      el("button", { class: "secondary", onclick: showMutantReview }, "Mutants"),
      el("span", { class: "meta" }, ` seed ${game.seed}`),
    );
  }

  function renderAll(): void {
    clear(boardBox);
    boardBox.append(
      renderBoard({
        board: level.board,
        mines,
        critters: machine ? machine.roster() : [],
        flashes: machine ? machine.mineFlashes() : [],
        onTileClick: game ? undefined : placeMine,
      }),
    );
    clear(rosterBox);
    if (machine) {
      statusLine.textContent = `tick ${machine.tick} / ${machine.finalTick}`;
      for (const critter of machine.roster()) {
        rosterBox.append(
          el(
            "span",
            { class: `roster-chip ${critter.kind} ${critter.status}`, title: critter.id },
            critter.kind === "mutant" ? "☠" : "☺",
          ),
        );
      }
    } else {
      statusLine.textContent = "";
    }
  }

  function placeMine(x: number, y: number, tile: HTMLElement): void {
    if (!isWalkable(level.board, x, y)) {
      rejectTile(tile); // mines only go where critters walk
      return;
    }
    const existingIndex = mines.findIndex((m) => m.x === x && m.y === y);
    openMineDialog({
      x,
      y,
      palette,
      existing: existingIndex >= 0 ? mines[existingIndex] : null,
      onSave: (mine) => {
        if (existingIndex >= 0) mines[existingIndex] = mine;
        else mines.push(mine);
        renderAll();
        renderControls();
      },
      onRemove:
        existingIndex >= 0
          ? () => {
              mines.splice(existingIndex, 1);
              renderAll();
              renderControls();
            }
          : null,
    });
  }

  async function startGame(): Promise<void> {
    try {
      game = await api.startGame(level.id, mines);
    } catch (e) {
      const message = e instanceof ApiError ? e.message : String(e);
      statusLine.textContent = `cannot start: ${message}`;
      return;
    }
    machine = new ReplayMachine(game.events);
    scoreboardShown = false;
    renderAll();
    renderControls();
    startTimer();
  }

  function showScoreboard(): void {
    if (!game) return;
    const score = game.score;
    const dialog = el(
      "div",
      { class: "overlay" },
      el(
        "div",
        { class: "dialog scoreboard" },
        el("h2", {}, "Scoreboard"),
        el(
          "table",
          {},
          scoreRow("critters saved", score.healthySaved),
          scoreRow("critters trapped", score.healthyTrapped),
          scoreRow("mutants detected", score.mutantsTrapped),
          scoreRow("mutants escaped", score.mutantsEscaped),
          scoreRow("mines used", score.minesUsed),
          scoreRow("time bonus", score.timeBonus),
          scoreRow("total", score.total),
        ),
        submitForm(),
        el(
          "div",
          { class: "dialog-actions" },
          el("button", { class: "secondary", onclick: () => { dismiss(dialog); showMutantReview(); } }, "Review mutants"),
          el("button", { onclick: () => dismiss(dialog) }, "Close"),
        ),
      ),
    );
    show(dialog);

    function submitForm(): HTMLElement {
      const name = el("input", { type: "text", placeholder: "player name" }) as HTMLInputElement;
      const note = el("span", { class: "meta" });
      const button = el("button", {
        onclick: async () => {
          if (!name.value.trim() || !game) return;
          try {
            const entry = await api.submitScore(name.value.trim(), game.gameId, game.score.total);
            note.textContent = ` total for ${entry.player}: ${entry.score}`;
          } catch (e) {
            note.textContent = e instanceof ApiError ? ` ${e.code}: ${e.message}` : String(e);
          }
        },
      }, "Submit score");
      return el("div", { class: "submit-row" }, name, button, note);
    }
  }

  function scoreRow(label: string, value: number): HTMLElement {
    return el("tr", {}, el("td", {}, label), el("td", { class: "num" }, String(value)));
  }

  function showMutantReview(): void {
    const details = level.mutantDetails ?? [];
    const list = el("div", { class: "mutant-review" });
    details.forEach((mutant, i) => {
      list.append(
        el("h3", {}, `Mutant ${i + 1}`),
        el(
          "ul",
          {},
          ...mutant.diff.map((entry) =>
            el(
              "li",
              {},
              el("span", { class: `chip ${entry.class.toLowerCase()}` }, entry.class.toLowerCase()),
              " ",
              `${nodeLabel(entry.before)} → ${nodeLabel(entry.after)}`,
              el("div", { class: "meta" }, diffLabel(entry)),
            ),
          ),
        ),
      );
    });
    const dialog = el(
      "div",
      { class: "overlay" },
      el(
        "div",
        { class: "dialog" },
        el("h2", {}, "How the critter was mutated"),
        details.length ? list : el("p", {}, "No mutant details available."),
        el("div", { class: "dialog-actions" }, el("button", { onclick: () => dismiss(dialog) }, "Close")),
      ),
    );
    show(dialog);
  }

  renderAll();
  renderControls();
}

export type { LevelDoc, PaletteDoc };
