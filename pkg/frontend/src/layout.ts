/**
 * Small force-directed layout: spring edges, pairwise repulsion, center
 * gravity. Pinned nodes keep their coordinates; everything else relaxes
 * around them. The simulation is deterministic (seeded initial ring, fixed
 * iteration count) so a re-render of identical state is visually identical.
 */

export interface LayoutNode {
  x: number;
  y: number;
  pinned: boolean;
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
  springLength?: number;
  repulsion?: number;
}

export function initialPositions(count: number, width: number, height: number): LayoutNode[] {
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) * 0.35;
  const nodes: LayoutNode[] = [];
  for (let i = 0; i < count; i++) {
    const angle = (2 * Math.PI * i) / Math.max(count, 1);
    nodes.push({ x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle), pinned: false });
  }
  return nodes;
}

export function relax(
  nodes: LayoutNode[],
  edges: Array<[number, number]>,
  options: LayoutOptions,
): void {
  const { width, height } = options;
  const iterations = options.iterations ?? 120;
  const springLength = options.springLength ?? Math.min(width, height) / 5;
  const repulsion = options.repulsion ?? springLength * springLength;
  const cx = width / 2;
  const cy = height / 2;

  for (let round = 0; round < iterations; round++) {
    const cooling = 1 - round / iterations;
    const fx = new Array(nodes.length).fill(0);
    const fy = new Array(nodes.length).fill(0);

    for (let i = 0; i < nodes.length; i++) {
      for (let j = i + 1; j < nodes.length; j++) {
        let dx = nodes[i].x - nodes[j].x;
        let dy = nodes[i].y - nodes[j].y;
        let dist2 = dx * dx + dy * dy;
        if (dist2 < 1e-6) {
          // deterministic nudge for coincident nodes
          dx = 0.1 * (i - j);
          dy = 0.05;
          dist2 = dx * dx + dy * dy;
        }
        const push = repulsion / dist2;
        const dist = Math.sqrt(dist2);
        fx[i] += (dx / dist) * push;
        fy[i] += (dy / dist) * push;
        fx[j] -= (dx / dist) * push;
        fy[j] -= (dy / dist) * push;
      }
    }

    for (const [a, b] of edges) {
      const dx = nodes[b].x - nodes[a].x;
      const dy = nodes[b].y - nodes[a].y;
      const dist = Math.max(Math.sqrt(dx * dx + dy * dy), 1e-3);
      const pull = (dist - springLength) * 0.05;
      fx[a] += (dx / dist) * pull;
      fy[a] += (dy / dist) * pull;
      fx[b] -= (dx / dist) * pull;
      fy[b] -= (dy / dist) * pull;
    }

    for (let i = 0; i < nodes.length; i++) {
      if (nodes[i].pinned) {
        continue;
      }
      fx[i] += (cx - nodes[i].x) * 0.01;
      fy[i] += (cy - nodes[i].y) * 0.01;
      const limit = 12 * cooling;
      const size = Math.sqrt(fx[i] * fx[i] + fy[i] * fy[i]);
      const scale = size > limit ? limit / size : 1;
      nodes[i].x += fx[i] * scale;
      nodes[i].y += fy[i] * scale;
      nodes[i].x = Math.min(Math.max(nodes[i].x, 20), width - 20);
      nodes[i].y = Math.min(Math.max(nodes[i].y, 20), height - 20);
    }
  }
}
