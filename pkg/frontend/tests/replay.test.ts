// Replay fidelity: stepping the machine through a real server event log
// must land every critter in exactly the status the log's terminal events
// say, at every intermediate point as a consistent prefix.

import { describe, expect, it } from "vitest";
import { readFileSync } from "node:fs";
import { ReplayMachine } from "../src/replay.js";
import type { GameDoc } from "../src/types.js";

const game: GameDoc = JSON.parse(
  readFileSync(new URL("./fixtures/tutorial-game.json", import.meta.url), "utf-8"),
);

describe("replay machine", () => {
  it("animating to the end reproduces the log's terminal statuses", () => {
    const machine = new ReplayMachine(game.events);
    while (!machine.finished) machine.advance();
    const roster = new Map(machine.roster().map((c) => [c.id, c.status]));
    expect(roster).toEqual(machine.terminalStatuses());
  });

  it("matches the score report's totals", () => {
    const machine = new ReplayMachine(game.events);
    machine.seek(machine.finalTick);
    const roster = machine.roster();
    const saved = roster.filter((c) => c.kind === "healthy" && c.status === "saved").length;
    const trappedMutants = roster.filter((c) => c.kind === "mutant" && c.status === "trapped").length;
    expect(saved).toBe(game.score.healthySaved);
    expect(trappedMutants).toBe(game.score.mutantsTrapped);
  });

  it("reset rewinds to a board with nobody spawned", () => {
    const machine = new ReplayMachine(game.events);
    machine.seek(machine.finalTick);
    machine.reset();
    expect(machine.tick).toBe(0);
    for (const critter of machine.roster()) {
      expect(critter.status).toBe("pending");
    }
  });

  it("statuses only ever move forward while advancing", () => {
    const machine = new ReplayMachine(game.events);
    const rank = { pending: 0, walking: 1, saved: 2, trapped: 2 } as const;
    let previous = new Map(machine.roster().map((c) => [c.id, c.status]));
    while (!machine.finished) {
      machine.advance();
      for (const critter of machine.roster()) {
        expect(rank[critter.status]).toBeGreaterThanOrEqual(rank[previous.get(critter.id)!]);
      }
      previous = new Map(machine.roster().map((c) => [c.id, c.status]));
    }
  });

  it("walking critters sit on exactly one tile", () => {
    const machine = new ReplayMachine(game.events);
    while (!machine.finished) {
      machine.advance();
      for (const critter of machine.roster()) {
        if (critter.status === "walking") {
          expect(critter.x).not.toBeNull();
          expect(critter.y).not.toBeNull();
        }
      }
    }
  });

  it("seek is a pure function of the target tick", () => {
    const a = new ReplayMachine(game.events);
    const b = new ReplayMachine(game.events);
    a.seek(9);
    for (let i = 0; i < 9; i++) b.advance();
    expect(a.roster()).toEqual(b.roster());
  });
});
