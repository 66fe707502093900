// Level overview: the three category shelves plus the public leaderboard.

import { api } from "../api.js";
import { clear, el } from "../render.js";
import { router } from "../router.js";

const CATEGORIES = ["tutorial", "beginner", "advanced"] as const;

export async function levelsScreen(root: HTMLElement): Promise<void> {
  clear(root);
  const [grouped, board] = await Promise.all([api.levels(), api.leaderboard()]);

  const shelves = el("div", { class: "level-shelves" });
  for (const category of CATEGORIES) {
    const cards = el("div", { class: "level-cards" });
    for (const summary of grouped[category] ?? []) {
      cards.append(
        el(
          "div",
          { class: "level-card" },
          el("h3", {}, summary.name),
          el(
            "p",
            { class: "meta" },
            `difficulty ${summary.difficulty}/5 · ${summary.critters} critters · ` +
              `${summary.mutantCount} mutants · budget ${summary.mineBudget}`,
          ),
          el(
            "div",
            { class: "card-actions" },
            el("button", { onclick: () => router.go({ screen: "play", levelId: summary.id }) }, "Play"),
            el(
              "button",
              { class: "secondary", onclick: () => router.go({ screen: "editor", levelId: summary.id }) },
              "Edit",
            ),
          ),
        ),
      );
    }
    shelves.append(el("section", {}, el("h2", {}, category), cards));
  }

  const rows = board.entries.map((entry, i) =>
    el(
      "tr",
      {},
      el("td", {}, String(i + 1)),
      el("td", {}, entry.player),
      el("td", {}, String(entry.score)),
      el("td", {}, String(entry.gamesPlayed)),
    ),
  );
  root.append(
    el("h1", {}, "Levels"),
    el(
      "div",
      { class: "toolbar" },
      el("button", { onclick: () => router.go({ screen: "editor", levelId: "new" }) }, "New level"),
    ),
    shelves,
    el(
      "section",
      { class: "leaderboard-panel" },
      el("h2", {}, "Leaderboard"),
      rows.length
        ? el(
            "table",
            { class: "leaderboard" },
            el("tr", {}, el("th", {}, "#"), el("th", {}, "player"), el("th", {}, "score"), el("th", {}, "games")),
            ...rows,
          )
        : el("p", {}, "No games scored yet."),
    ),
  );
}
