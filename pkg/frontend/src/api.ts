// Thin fetch client for the game service.

import type {
  AnalysisDoc,
  GameDoc,
  IssueDoc,
  LeaderboardEntryDoc,
  LevelDoc,
  LevelSummaryDoc,
  MineDoc,
  PaletteDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly details: unknown = null,
  ) {
    super(message);
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const res = await fetch(path, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  const body = await res.json().catch(() => null);
  if (!res.ok) {
    const code = body?.code ?? "HttpError";
    const message = body?.message ?? `${res.status} on ${path}`;
    throw new ApiError(res.status, code, message, body?.details ?? null);
  }
  return body as T;
}

export const api = {
  levels: () => request<Record<string, LevelSummaryDoc[]>>("/api/levels"),
  level: (id: string) => request<LevelDoc>(`/api/levels/${id}`),
  saveLevel: (doc: unknown) =>
    request<{ level: LevelSummaryDoc; issues: IssueDoc[] }>("/api/levels", {
      method: "POST",
      body: JSON.stringify(doc),
    }),
  validateLevel: (doc: unknown) =>
    request<{ issues: IssueDoc[] }>("/api/levels/validate", {
      method: "POST",
      body: JSON.stringify(doc),
    }),
  analysis: (id: string) => request<AnalysisDoc>(`/api/levels/${id}/analysis`),
  startGame: (levelId: string, mines: MineDoc[], seed?: number) =>
    request<GameDoc>("/api/games", {
      method: "POST",
      body: JSON.stringify(seed === undefined ? { levelId, mines } : { levelId, mines, seed }),
    }),
  submitScore: (player: string, gameId: string, total: number) =>
    request<LeaderboardEntryDoc>("/api/scores", {
      method: "POST",
      body: JSON.stringify({ player, gameId, total }),
    }),
  leaderboard: () => request<{ entries: LeaderboardEntryDoc[] }>("/api/leaderboard"),
  palette: () => request<PaletteDoc>("/api/palette"),
};

export type Api = typeof api;
