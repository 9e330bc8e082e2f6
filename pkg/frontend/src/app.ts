/**
 * Dependency-graph studio: renders the working graph as a force layout
 * colored by community, and drives the analysis service over WebSocket.
 *
 * All analysis state lives on the server; every button press emits one
 * protocol envelope and the view only changes when a reply arrives.
 */

import { initialPositions, relax, type LayoutNode } from "./layout.js";
import {
  commandEnvelope,
  editEnvelope,
  membershipFits,
  openEnvelope,
  parseServerMessage,
  type CommandName,
  type Envelope,
  type GraphPayload,
  type InstabilityRow,
  type MovementPayload,
  type ServerMessage,
} from "./protocol.js";
import {
  connectionText,
  instabilityLines,
  measuresText,
  membershipView,
  suggestionLines,
  type ModalKind,
} from "./viewmodel.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 900;
const HEIGHT = 620;

interface ViewState {
  graph: GraphPayload | null;
  positions: LayoutNode[];
  membership: number[] | null;
  packages: string[] | null;
  selected: number | null;
  modal: ModalKind;
  lastSuggestions: MovementPayload[] | null;
  lastInstability: InstabilityRow[] | null;
  pendingCommand: string | null;
  connected: boolean;
}

const state: ViewState = {
  graph: null,
  positions: [],
  membership: null,
  packages: null,
  selected: null,
  modal: "none",
  lastSuggestions: null,
  lastInstability: null,
  pendingCommand: null,
  connected: false,
};

let socket: WebSocket | null = null;

function byId<T extends HTMLElement>(id: string): T {
  const element = document.getElementById(id);
  if (!element) {
    throw new Error(`missing element #${id}`);
  }
  return element as T;
}

// ---------------------------------------------------------------------------
// connection
// ---------------------------------------------------------------------------

function connect(): void {
  const protocol = location.protocol === "https:" ? "wss" : "ws";
  socket = new WebSocket(`${protocol}://${location.host}/api/session`);
  socket.onopen = () => {
    state.connected = true;
    updateChrome();
  };
  socket.onclose = () => {
    state.connected = false;
    state.pendingCommand = null;
    updateChrome();
  };
  socket.onmessage = (event) => {
    const message = parseServerMessage(String(event.data));
    if (!message) {
      toast("unreadable message from server");
      return;
    }
    applyMessage(message);
  };
}

function send(envelope: Envelope, pendingAs: string | null): boolean {
  if (!socket || socket.readyState !== WebSocket.OPEN) {
    toast("not connected");
    updateChrome();
    return false;
  }
  if (state.pendingCommand !== null) {
    return false;
  }
  state.pendingCommand = pendingAs;
  socket.send(JSON.stringify(envelope));
  updateChrome();
  return true;
}

// every command's reply batch ends with a fixed message type
const TERMINAL: Record<string, ServerMessage["type"]> = {
  "open": "state",
  "get-original": "instability",
  "refactor-directed": "instability",
  "refactor-undirected": "instability",
  "fast-greedy": "measures",
  "cluster-graph": "graph",
  "instability": "instability",
  "edit": "graph",
};

function settle(messageType: ServerMessage["type"]): void {
  if (state.pendingCommand !== null &&
      (messageType === "error" || TERMINAL[state.pendingCommand] === messageType)) {
    state.pendingCommand = null;
  }
}

// ---------------------------------------------------------------------------
// message handling
// ---------------------------------------------------------------------------

function applyMessage(message: ServerMessage): void {
  switch (message.type) {
    case "state": {
      setGraph(message.payload.graph);
      state.packages = message.payload.packages;
      applyMembership(message.payload.membership, message.payload.packages);
      byId("measures").textContent = measuresText(message.payload.modularity);
      state.lastInstability = message.payload.instability;
      state.lastSuggestions = null;
      break;
    }
    case "graph": {
      setGraph(message.payload);
      state.membership = null;
      renderGraph();
      break;
    }
    case "membership": {
      applyMembership(message.payload.membership, message.payload.packages);
      break;
    }
    case "measures": {
      byId("measures").textContent = measuresText(message.payload.modularity);
      break;
    }
    case "suggestions": {
      state.lastSuggestions = message.payload.movements;
      openModal("suggestions");
      break;
    }
    case "instability": {
      state.lastInstability = message.payload.packages;
      if (state.modal === "instabilities") {
        renderModal();
      }
      break;
    }
    case "error": {
      toast(`${message.code}: ${message.message ?? "request failed"}`);
      break;
    }
  }
  settle(message.type);
  updateChrome();
}

function setGraph(graph: GraphPayload): void {
  state.graph = graph;
  state.selected = null;
  state.positions = initialPositions(graph.nodes.length, WIDTH, HEIGHT);
  for (let i = 0; i < graph.nodes.length; i++) {
    if (graph.nodes[i].locked) {
      state.positions[i].pinned = true;
    }
  }
  relax(state.positions, graph.edges.map((e) => [e.source, e.target]), {
    width: WIDTH,
    height: HEIGHT,
  });
  renderGraph();
}

function applyMembership(membership: unknown, packages: string[] | null): void {
  const count = state.graph ? state.graph.nodes.length : 0;
  if (!membershipFits(membership, count)) {
    toast("membership does not fit the rendered graph");
    return;
  }
  state.membership = membership;
  if (packages) {
    state.packages = packages;
  }
  const view = membershipView(membership, packages);
  const circles = document.querySelectorAll<SVGCircleElement>("#canvas circle.node");
  circles.forEach((circle, index) => {
    circle.setAttribute("fill", view.nodeColors[index] ?? "#aaa");
  });
  const legend = byId("legend");
  legend.replaceChildren();
  for (const entry of view.legend) {
    const item = document.createElement("span");
    item.className = "legend-entry";
    const swatch = document.createElement("i");
    swatch.style.backgroundColor = entry.color;
    item.append(swatch, document.createTextNode(entry.label));
    legend.append(item);
  }
}

// ---------------------------------------------------------------------------
// rendering
// ---------------------------------------------------------------------------

function renderGraph(): void {
  const canvas = byId<HTMLElement>("canvas");
  canvas.replaceChildren();
  if (!state.graph) {
    return;
  }
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);

  const defs = document.createElementNS(SVG_NS, "defs");
  defs.innerHTML =
    `<marker id="arrow" viewBox="0 0 10 10" refX="18" refY="5" ` +
    `markerWidth="6" markerHeight="6" orient="auto-start-reverse">` +
    `<path d="M 0 0 L 10 5 L 0 10 z" fill="#8a8f98"/></marker>`;
  svg.append(defs);

  for (const edge of state.graph.edges) {
    const line = document.createElementNS(SVG_NS, "line");
    line.classList.add("edge");
    line.dataset.source = String(edge.source);
    line.dataset.target = String(edge.target);
    if (state.graph.directed) {
      line.setAttribute("marker-end", "url(#arrow)");
    }
    svg.append(line);
  }

  const colors = state.membership
    ? membershipView(state.membership, state.packages).nodeColors
    : null;
  state.graph.nodes.forEach((node, index) => {
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.classList.add("node");
    circle.dataset.index = String(index);
    circle.dataset.label = node.label;
    circle.setAttribute("r", "11");
    circle.setAttribute("fill", colors ? colors[index] : "#aaa");
    circle.addEventListener("pointerdown", (event) => beginDrag(index, event));
    circle.addEventListener("click", () => selectNode(index));
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = node.label;
    circle.append(title);
    svg.append(circle);
  });

  canvas.append(svg);
  positionElements();
}

function positionElements(): void {
  const svg = document.querySelector("#canvas svg");
  if (!svg || !state.graph) {
    return;
  }
  svg.querySelectorAll<SVGLineElement>("line.edge").forEach((line) => {
    const s = state.positions[Number(line.dataset.source)];
    const t = state.positions[Number(line.dataset.target)];
    line.setAttribute("x1", String(s.x));
    line.setAttribute("y1", String(s.y));
    line.setAttribute("x2", String(t.x));
    line.setAttribute("y2", String(t.y));
  });
  svg.querySelectorAll<SVGCircleElement>("circle.node").forEach((circle) => {
    const p = state.positions[Number(circle.dataset.index)];
    circle.setAttribute("cx", String(p.x));
    circle.setAttribute("cy", String(p.y));
    circle.classList.toggle("pinned", p.pinned);
    circle.classList.toggle("selected", Number(circle.dataset.index) === state.selected);
  });
}

function beginDrag(index: number, event: PointerEvent): void {
  const svg = document.querySelector<SVGSVGElement>("#canvas svg");
  if (!svg) {
    return;
  }
  event.preventDefault();
  const rect = svg.getBoundingClientRect();
  const move = (ev: PointerEvent) => {
    state.positions[index].x = ((ev.clientX - rect.left) / rect.width) * WIDTH;
    state.positions[index].y = ((ev.clientY - rect.top) / rect.height) * HEIGHT;
    state.positions[index].pinned = true; // dragging pins for better viewing
    positionElements();
  };
  const up = () => {
    window.removeEventListener("pointermove", move);
    window.removeEventListener("pointerup", up);
  };
  window.addEventListener("pointermove", move);
  window.addEventListener("pointerup", up);
}

function selectNode(index: number): void {
  state.selected = index;
  updateChrome();
  positionElements();
}

// ---------------------------------------------------------------------------
// chrome: buttons, modal, status
// ---------------------------------------------------------------------------

function toast(text: string): void {
  const banner = byId("toast");
  banner.textContent = text;
  banner.classList.add("visible");
  window.setTimeout(() => banner.classList.remove("visible"), 4000);
}

function openModal(kind: ModalKind): void {
  state.modal = kind;
  renderModal();
}

function renderModal(): void {
  const modal = byId("modal");
  const body = byId("modal-body");
  const title = byId("modal-title");
  if (state.modal === "none") {
    modal.classList.remove("visible");
    return;
  }
  modal.classList.add("visible");
  const lines =
    state.modal === "suggestions"
      ? suggestionLines(state.lastSuggestions)
      : instabilityLines(state.lastInstability ?? []);
  title.textContent = state.modal === "suggestions" ? "Movement suggestions" : "Instabilities";
  const list = document.createElement("ol");
  for (const line of lines) {
    const item = document.createElement("li");
    item.textContent = line.replace(/^\d+\. /, "");
    list.append(item);
  }
  body.replaceChildren(list);
}

function updateChrome(): void {
  byId("status").textContent = connectionText(state.connected);
  byId("status").classList.toggle("offline", !state.connected);
  const busy = state.pendingCommand !== null;
  document.querySelectorAll<HTMLButtonElement>("button[data-command], #open-btn, .edit-controls button")
    .forEach((button) => {
      button.disabled = busy || !state.connected;
    });
  const selected = state.selected !== null && state.graph
    ? state.graph.nodes[state.selected]
    : null;
  byId("selected").textContent = selected ? selected.label : "";
  const lock = byId<HTMLInputElement>("lock-toggle");
  lock.disabled = !selected || busy || !state.connected;
  lock.checked = Boolean(selected?.locked);
}

// ---------------------------------------------------------------------------
// wiring
// ---------------------------------------------------------------------------

function wireButtons(): void {
  document.querySelectorAll<HTMLButtonElement>("button[data-command]").forEach((button) => {
    button.addEventListener("click", () => {
      const name = button.dataset.command as CommandName;
      if (name === ("suggestions" as string)) {
        return;
      }
      send(commandEnvelope(name), name);
    });
  });

  byId("suggestions-btn").addEventListener("click", () => openModal("suggestions"));
  byId("instability-btn").addEventListener("click", () => {
    openModal("instabilities");
    send(commandEnvelope("instability"), "instability");
  });
  byId("modal-close").addEventListener("click", () => openModal("none"));

  byId("open-btn").addEventListener("click", () => {
    const text = byId<HTMLTextAreaElement>("graph-input").value;
    let graph: GraphPayload;
    try {
      graph = JSON.parse(text) as GraphPayload;
    } catch {
      toast("graph input is not valid JSON");
      return;
    }
    send(openEnvelope(graph), "open");
  });

  byId("add-node-btn").addEventListener("click", () => {
    const label = byId<HTMLInputElement>("node-label").value.trim();
    if (label) {
      send(editEnvelope({ op: "add-node", label }), "edit");
    }
  });
  byId("remove-node-btn").addEventListener("click", () => {
    if (state.selected !== null) {
      send(editEnvelope({ op: "remove-node", index: state.selected }), "edit");
    }
  });
  byId("add-edge-btn").addEventListener("click", () => {
    const source = Number(byId<HTMLInputElement>("edge-source").value);
    const target = Number(byId<HTMLInputElement>("edge-target").value);
    if (Number.isInteger(source) && Number.isInteger(target)) {
      send(editEnvelope({ op: "add-edge", source, target }), "edit");
    }
  });
  byId("remove-edge-btn").addEventListener("click", () => {
    const source = Number(byId<HTMLInputElement>("edge-source").value);
    const target = Number(byId<HTMLInputElement>("edge-target").value);
    if (Number.isInteger(source) && Number.isInteger(target)) {
      send(editEnvelope({ op: "remove-edge", source, target }), "edit");
    }
  });
  byId<HTMLInputElement>("lock-toggle").addEventListener("change", (event) => {
    if (state.selected !== null) {
      const locked = (event.target as HTMLInputElement).checked;
      send(editEnvelope({ op: "set-locked", index: state.selected, locked }), "edit");
    }
  });
}

export function start(): void {
  wireButtons();
  updateChrome();
  connect();
}

if (typeof document !== "undefined" && document.getElementById("canvas")) {
  start();
}
