/**
 * Wire protocol: envelope types and builders.
 *
 * Every user action maps to exactly one envelope; the view never changes
 * analysis state locally. Incoming messages are narrowed with the guards
 * below before any rendering happens.
 */

export interface GraphNodePayload {
  label: string;
  abstract?: boolean;
  locked?: boolean;
}

export interface GraphEdgePayload {
  source: number;
  target: number;
  weight?: number;
}

export interface GraphPayload {
  directed: boolean;
  nodes: GraphNodePayload[];
  edges: GraphEdgePayload[];
}

export interface MovementPayload {
  class: string;
  from: string;
  to: string;
}

export interface InstabilityRow {
  package: string;
  ca: number;
  ce: number;
  instability: number;
}

export interface StatePayload {
  sessionId: number;
  graph: GraphPayload;
  membership: number[];
  packages: string[];
  modularity: number;
  instability: InstabilityRow[];
}

export type ServerMessage =
  | { type: "state"; payload: StatePayload }
  | { type: "membership"; payload: { membership: number[]; packages: string[] | null } }
  | { type: "measures"; payload: { modularity: number } }
  | { type: "suggestions"; payload: { movements: MovementPayload[] } }
  | { type: "instability"; payload: { packages: InstabilityRow[] } }
  | { type: "graph"; payload: GraphPayload }
  | { type: "error"; code: string; message?: string };

export type CommandName =
  | "get-original"
  | "refactor-directed"
  | "refactor-undirected"
  | "fast-greedy"
  | "cluster-graph"
  | "instability";

export interface Envelope {
  type: string;
  payload?: unknown;
}

export function openEnvelope(graph: GraphPayload): Envelope {
  return { type: "open", payload: { graph } };
}

export function commandEnvelope(name: CommandName): Envelope {
  return { type: "command", payload: { name } };
}

export type EditOp =
  | { op: "add-node"; label: string }
  | { op: "remove-node"; index: number }
  | { op: "add-edge"; source: number; target: number }
  | { op: "remove-edge"; source: number; target: number }
  | { op: "set-locked"; index: number; locked: boolean };

export function editEnvelope(edit: EditOp): Envelope {
  return { type: "command", payload: { name: "edit", ...edit } };
}

export function parseServerMessage(raw: string): ServerMessage | null {
  let doc: unknown;
  try {
    doc = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof doc !== "object" || doc === null || !("type" in doc)) {
    return null;
  }
  const message = doc as { type: unknown; payload?: unknown; code?: unknown };
  if (typeof message.type !== "string") {
    return null;
  }
  if (message.type === "error") {
    return typeof message.code === "string"
      ? { type: "error", code: message.code, message: (doc as { message?: string }).message }
      : null;
  }
  if (typeof message.payload !== "object" || message.payload === null) {
    return null;
  }
  switch (message.type) {
    case "state":
    case "membership":
    case "measures":
    case "suggestions":
    case "instability":
    case "graph":
      return doc as ServerMessage;
    default:
      return null;
  }
}

/** Membership payloads must cover every rendered node, one id each. */
export function membershipFits(membership: unknown, nodeCount: number): membership is number[] {
  return (
    Array.isArray(membership) &&
    membership.length === nodeCount &&
    membership.every((c) => Number.isInteger(c) && c >= 0)
  );
}
