import { api } from "../api.js";
import { clear, el } from "../render.js";
import { router } from "../router.js";

export async function leaderboardScreen(root: HTMLElement): Promise<void> {
  clear(root);
  const board = await api.leaderboard();
  root.append(
    el("h1", {}, "Leaderboard"),
    el(
      "div",
      { class: "toolbar" },
      el("button", { onclick: () => router.go({ screen: "levels" }) }, "Back to levels"),
    ),
    board.entries.length
      ? el(
          "table",
          { class: "leaderboard" },
          el("tr", {}, el("th", {}, "#"), el("th", {}, "player"), el("th", {}, "score"), el("th", {}, "games")),
          ...board.entries.map((entry, i) =>
            el(
              "tr",
              {},
              el("td", {}, String(i + 1)),
              el("td", {}, entry.player),
              el("td", {}, String(entry.score)),
              el("td", {}, String(entry.gamesPlayed)),
            ),
          ),
        )
      : el("p", {}, "No games scored yet."),
  );
}
