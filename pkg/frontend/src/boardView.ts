// Tile-grid rendering shared by the play screen and the level editor.

import { el } from "./render.js";
import type { BoardDoc, MineDoc, TextureName } from "./types.js";
import type { CritterView, MineFlash } from "./replay.js";

const CODE_TEXTURES: Record<string, TextureName> = {
  G: "GRASS",
  D: "DIRT",
  W: "WATER",
  I: "ICE",
  O: "WOOD",
};

export function textureAt(board: BoardDoc, x: number, y: number): TextureName {
  return CODE_TEXTURES[board.tiles[y - 1][x - 1]];
}

export function isWalkable(board: BoardDoc, x: number, y: number): boolean {
  const t = textureAt(board, x, y);
  return t === "GRASS" || t === "DIRT" || t === "ICE";
}

export interface BoardViewOptions {
  board: BoardDoc;
  mines: MineDoc[];
  critters: CritterView[];
  flashes: MineFlash[];
  onTileClick?: (x: number, y: number, tile: HTMLElement) => void;
}

export function renderBoard(opts: BoardViewOptions): HTMLElement {
  const { board } = opts;
  const grid = el("div", { class: "board" });
  grid.style.gridTemplateColumns = `repeat(${board.width}, var(--tile))`;
  const critterByTile = new Map<string, CritterView[]>();
  for (const critter of opts.critters) {
    if (critter.x === null || critter.status !== "walking") continue;
    const key = `${critter.x},${critter.y}`;
    (critterByTile.get(key) ?? critterByTile.set(key, []).get(key)!).push(critter);
  }
  const mineTiles = new Set(opts.mines.map((m) => `${m.x},${m.y}`));
  const flashByTile = new Map(opts.flashes.map((f) => [`${f.x},${f.y}`, f.verdict]));

  for (let y = 1; y <= board.height; y++) {
    for (let x = 1; x <= board.width; x++) {
      const key = `${x},${y}`;
      const tile = el("div", {
        class: `tile tile-${textureAt(board, x, y)}`,
        "data-x": String(x),
        "data-y": String(y),
      });
      if (board.spawn[0] === x && board.spawn[1] === y) {
        tile.append(el("span", { class: "marker spawn", title: "colony" }, "⌂"));
      }
      if (board.tower[0] === x && board.tower[1] === y) {
        tile.append(el("span", { class: "marker tower", title: "tower" }, "♜"));
      }
      if (mineTiles.has(key)) {
        tile.append(el("span", { class: "marker mine", title: "mine" }, "✹"));
      }
      const verdict = flashByTile.get(key);
      if (verdict) tile.classList.add(verdict === "fail" ? "flash-fail" : "flash-pass");
      for (const critter of critterByTile.get(key) ?? []) {
        tile.append(
          el("span", { class: `critter ${critter.kind}`, title: critter.id }, "●"),
        );
      }
      if (opts.onTileClick) {
        tile.addEventListener("click", () => opts.onTileClick!(x, y, tile));
      }
      grid.append(tile);
    }
  }
  return grid;
}

export function rejectTile(tile: HTMLElement): void {
  tile.classList.add("shake");
  setTimeout(() => tile.classList.remove("shake"), 400);
}
