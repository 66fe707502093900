// Path-based routing: /levels, /play/{id}, /editor/{id}, /leaderboard.
// The server serves the SPA shell for all four, so deep links work.

export type Route =
  | { screen: "levels" }
  | { screen: "play"; levelId: string }
  | { screen: "editor"; levelId: string }
  | { screen: "leaderboard" };

export function parseRoute(pathname: string): Route {
  const parts = pathname.replace(/\/+$/, "").split("/").filter(Boolean);
  if (parts[0] === "play" && parts[1]) return { screen: "play", levelId: parts[1] };
  if (parts[0] === "editor" && parts[1]) return { screen: "editor", levelId: parts[1] };
  if (parts[0] === "leaderboard") return { screen: "leaderboard" };
  return { screen: "levels" };
}

export function routePath(route: Route): string {
  switch (route.screen) {
    case "levels":
      return "/levels";
    case "play":
      return `/play/${route.levelId}`;
    case "editor":
      return `/editor/${route.levelId}`;
    case "leaderboard":
      return "/leaderboard";
  }
}

export class Router {
  private handler: ((route: Route) => void) | null = null;

  start(handler: (route: Route) => void): void {
    this.handler = handler;
    window.addEventListener("popstate", () => handler(parseRoute(location.pathname)));
    handler(parseRoute(location.pathname));
  }

  go(route: Route): void {
    history.pushState(null, "", routePath(route));
    this.handler?.(route);
  }
}

export const router = new Router();
