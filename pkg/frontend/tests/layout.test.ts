import { describe, expect, it } from "vitest";

import { initialPositions, relax } from "../src/layout.js";

describe("force layout", () => {
  it("is deterministic for identical input", () => {
    const edges: Array<[number, number]> = [[0, 1], [1, 2], [2, 0], [2, 3]];
    const a = initialPositions(4, 800, 600);
    const b = initialPositions(4, 800, 600);
    relax(a, edges, { width: 800, height: 600 });
    relax(b, edges, { width: 800, height: 600 });
    expect(a).toEqual(b);
  });

  it("keeps pinned nodes exactly where they are", () => {
    const nodes = initialPositions(3, 800, 600);
    nodes[0].pinned = true;
    const fixed = { x: nodes[0].x, y: nodes[0].y };
    relax(nodes, [[0, 1], [1, 2]], { width: 800, height: 600 });
    expect(nodes[0].x).toBe(fixed.x);
    expect(nodes[0].y).toBe(fixed.y);
  });

  it("keeps every node inside the viewport", () => {
    const nodes = initialPositions(12, 400, 300);
    const edges: Array<[number, number]> = [];
    for (let i = 0; i < 11; i++) {
      edges.push([i, i + 1]);
    }
    relax(nodes, edges, { width: 400, height: 300 });
    for (const node of nodes) {
      expect(node.x).toBeGreaterThanOrEqual(20);
      expect(node.x).toBeLessThanOrEqual(380);
      expect(node.y).toBeGreaterThanOrEqual(20);
      expect(node.y).toBeLessThanOrEqual(280);
    }
  });

  it("pulls connected nodes closer than the initial ring", () => {
    const nodes = initialPositions(8, 800, 600);
    const before = Math.hypot(nodes[0].x - nodes[4].x, nodes[0].y - nodes[4].y);
    relax(nodes, [[0, 4]], { width: 800, height: 600, iterations: 200 });
    const after = Math.hypot(nodes[0].x - nodes[4].x, nodes[0].y - nodes[4].y);
    expect(after).toBeLessThan(before);
  });
});
