// Replay of a server event log. The machine only *reads* the log: critter
// positions and statuses at any tick are a pure fold over its prefix, so the
// animated outcome cannot diverge from what the server computed.

import type { EventDoc } from "./types.js";

export type RosterStatus = "pending" | "walking" | "saved" | "trapped";

export interface CritterView {
  id: string;
  kind: "healthy" | "mutant";
  status: RosterStatus;
  x: number | null;
  y: number | null;
}

export interface MineFlash {
  x: number;
  y: number;
  verdict: "pass" | "fail";
  critter: string;
}

export class ReplayMachine {
  readonly events: EventDoc[];
  readonly finalTick: number;
  private readonly ids: string[];
  private readonly kinds: Map<string, "healthy" | "mutant">;
  tick = 0;

  constructor(events: EventDoc[]) {
    this.events = events;
    this.finalTick = events.reduce((m, e) => Math.max(m, e.tick), 0);
    this.ids = [];
    this.kinds = new Map();
    for (const e of events) {
      if (!this.kinds.has(e.critter)) {
        this.ids.push(e.critter);
        this.kinds.set(e.critter, e.critter.startsWith("m") ? "mutant" : "healthy");
      }
    }
    this.ids.sort(compareIds);
  }

  get finished(): boolean {
    return this.tick >= this.finalTick;
  }

  reset(): void {
    this.tick = 0;
  }

  advance(): void {
    if (!this.finished) this.tick += 1;
  }

  seek(tick: number): void {
    this.tick = Math.max(0, Math.min(tick, this.finalTick));
  }

  /** Events that became visible on the current tick. */
  eventsAt(tick: number): EventDoc[] {
    return this.events.filter((e) => e.tick === tick);
  }

  mineFlashes(): MineFlash[] {
    return this.eventsAt(this.tick)
      .filter((e) => e.kind === "mine_evaluated")
      .map((e) => ({
        x: e.data.x as number,
        y: e.data.y as number,
        verdict: e.data.verdict as "pass" | "fail",
        critter: e.critter,
      }));
  }

  /** Roster at the current tick: a fold over the event-log prefix. */
  roster(): CritterView[] {
    const views = new Map<string, CritterView>();
    for (const id of this.ids) {
      views.set(id, { id, kind: this.kinds.get(id)!, status: "pending", x: null, y: null });
    }
    for (const e of this.events) {
      if (e.tick > this.tick) break;
      const view = views.get(e.critter)!;
      switch (e.kind) {
        case "spawned":
          view.status = "walking";
          view.x = e.data.x ?? null;
          view.y = e.data.y ?? null;
          break;
        case "moved":
          view.x = e.data.x ?? null;
          view.y = e.data.y ?? null;
          break;
        case "trapped":
          view.status = "trapped";
          break;
        case "saved":
          view.status = "saved";
          break;
        case "mine_evaluated":
          break;
      }
    }
    return [...views.values()];
  }

  /** What the log itself says each critter ended as (no replaying involved). */
  terminalStatuses(): Map<string, RosterStatus> {
    const out = new Map<string, RosterStatus>();
    for (const id of this.ids) out.set(id, "pending");
    for (const e of this.events) {
      if (e.kind === "spawned" && out.get(e.critter) === "pending") out.set(e.critter, "walking");
      if (e.kind === "trapped") out.set(e.critter, "trapped");
      if (e.kind === "saved") out.set(e.critter, "saved");
    }
    return out;
  }
}

function compareIds(a: string, b: string): number {
  // roster order: healthy first, then mutants, numerically within each
  const [ka, na] = [a[0], parseInt(a.slice(1), 10)];
  const [kb, nb] = [b[0], parseInt(b.slice(1), 10)];
  if (ka !== kb) return ka === "h" ? -1 : 1;
  return na - nb;
}
