import { el } from "./render.js";
import { router, Route } from "./router.js";
import { editorScreen } from "./screens/editor.js";
import { leaderboardScreen } from "./screens/leaderboard.js";
import { levelsScreen } from "./screens/levels.js";
import { playScreen } from "./screens/play.js";

const root = document.getElementById("app")!;

async function dispatch(route: Route): Promise<void> {
  try {
    switch (route.screen) {
      case "levels":
        await levelsScreen(root);
        break;
      case "play":
        await playScreen(root, route.levelId);
        break;
      case "editor":
        await editorScreen(root, route.levelId);
        break;
      case "leaderboard":
        await leaderboardScreen(root);
        break;
    }
  } catch (e) {
    root.replaceChildren(
      el("h1", {}, "Something went wrong"),
      el("p", { class: "error" }, String(e)),
      el("button", { onclick: () => router.go({ screen: "levels" }) }, "Back to levels"),
    );
  }
}

router.start((route) => void dispatch(route));
