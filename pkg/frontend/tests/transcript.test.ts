/**
 * Replays the recorded service transcript (same fixture the backend pins)
 * through the client-side parsers and view models.
 */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { membershipFits, parseServerMessage, type ServerMessage } from "../src/protocol.js";
import { instabilityLines, measuresText, membershipView, suggestionLines } from "../src/viewmodel.js";

const here = dirname(fileURLToPath(import.meta.url));
const transcript = JSON.parse(
  readFileSync(join(here, "..", "..", "tests", "fixtures", "golden_protocol.json"), "utf-8"),
) as Record<string, unknown[]>;

function parsed(step: string): ServerMessage[] {
  return transcript[step].map((message) => {
    const result = parseServerMessage(JSON.stringify(message));
    expect(result).not.toBeNull();
    return result as ServerMessage;
  });
}

describe("recorded transcript", () => {
  it("the state message renders six nodes in two package colors", () => {
    const [state] = parsed("open");
    if (state.type !== "state") throw new Error("expected state");
    expect(membershipFits(state.payload.membership, state.payload.graph.nodes.length))
      .toBe(true);
    const view = membershipView(state.payload.membership, state.payload.packages);
    expect(view.nodeColors).toHaveLength(6);
    expect(new Set(view.nodeColors).size).toBe(2);
    expect(view.legend.map((entry) => entry.label)).toEqual(["a", "b"]);
    expect(measuresText(state.payload.modularity)).toBe("modularity: 0.12");
  });

  it("get-original replies render membership, measures and instabilities", () => {
    const [membership, measures, instability] = parsed("get-original");
    if (membership.type !== "membership" || measures.type !== "measures"
      || instability.type !== "instability") throw new Error("unexpected order");
    const view = membershipView(membership.payload.membership, membership.payload.packages);
    expect(view.legend).toHaveLength(2);
    expect(measuresText(measures.payload.modularity)).toBe("modularity: 0.12");
    expect(instabilityLines(instability.payload.packages))
      .toEqual(["a: 0.500", "b: 0.500"]);
  });

  it("refactor replies produce the suggestion sentence and new coloring", () => {
    const messages = parsed("refactor-directed");
    const suggestions = messages.find((m) => m.type === "suggestions");
    if (!suggestions || suggestions.type !== "suggestions") throw new Error("no suggestions");
    expect(suggestionLines(suggestions.payload.movements))
      .toEqual(["1. Move class C3 from package a to package b"]);
    const membership = messages.find((m) => m.type === "membership");
    if (!membership || membership.type !== "membership") throw new Error("no membership");
    const view = membershipView(membership.payload.membership, membership.payload.packages);
    expect(view.nodeColors[3]).toBe(view.nodeColors[4]);
    expect(view.nodeColors[0]).not.toBe(view.nodeColors[3]);
    const measures = messages.find((m) => m.type === "measures");
    if (!measures || measures.type !== "measures") throw new Error("no measures");
    expect(measuresText(measures.payload.modularity)).toBe("modularity: 0.36");
  });
});
