/**
 * Pure view-model functions: protocol payloads in, renderable values out.
 *
 * Keeping these free of DOM access is what makes the UI contract testable:
 * coloring, legend building, sentence formatting and modal state are all
 * plain data transformations.
 */

import { communityColor } from "./palette.js";
import type { InstabilityRow, MovementPayload } from "./protocol.js";

export type ModalKind = "suggestions" | "instabilities" | "none";

export interface LegendEntry {
  community: number;
  label: string;
  color: string;
}

export interface MembershipView {
  nodeColors: string[];
  legend: LegendEntry[];
}

/** Node fill colors plus one legend entry per occupied community. */
export function membershipView(
  membership: number[],
  packages: string[] | null,
): MembershipView {
  const nodeColors = membership.map(communityColor);
  const seen: number[] = [];
  for (const community of membership) {
    if (!seen.includes(community)) {
      seen.push(community);
    }
  }
  seen.sort((a, b) => a - b);
  const legend = seen.map((community) => ({
    community,
    label: packages && packages[community] !== undefined
      ? packages[community]
      : `community ${community}`,
    color: communityColor(community),
  }));
  return { nodeColors, legend };
}

export function movementSentence(movement: MovementPayload): string {
  return `Move class ${movement.class} from package ${movement.from} ` +
    `to package ${movement.to}`;
}

/** Ordered suggestion sentences; an explicit empty-state line otherwise. */
export function suggestionLines(movements: MovementPayload[] | null): string[] {
  if (movements === null) {
    return ["run a refactoring first"];
  }
  if (movements.length === 0) {
    return ["No movements suggested"];
  }
  return movements.map((m, i) => `${i + 1}. ${movementSentence(m)}`);
}

export function instabilityLines(rows: InstabilityRow[]): string[] {
  return rows.map((row) => `${row.package}: ${row.instability.toFixed(3)}`);
}

export function measuresText(modularity: number): string {
  return `modularity: ${modularity.toFixed(2)}`;
}

export function connectionText(connected: boolean): string {
  return connected ? "connected" : "disconnected";
}
