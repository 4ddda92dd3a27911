/** Layered drawing for a lattice diagram.
 *
 * Nodes are assigned to layers by longest path above the bottom
 * element, then ordered within each layer by a few barycenter sweeps.
 * Coordinates come back normalized to the unit square with the top
 * element at y = 0.
 */

import type { LatticeDoc } from "./api.js";

export interface PlacedNode {
  id: number;
  x: number;
  y: number;
  layer: number;
}

export interface Drawing {
  nodes: PlacedNode[];
  edges: [number, number][];
  layerCount: number;
}

export function layeredLayout(doc: LatticeDoc): Drawing {
  const n = doc.nodes.length;
  if (n === 0) return { nodes: [], edges: [], layerCount: 0 };

  const ids = doc.nodes.map((node) => node.id);
  const pos = new Map<number, number>(ids.map((id, i) => [id, i]));
  const up: number[][] = ids.map(() => []);
  const down: number[][] = ids.map(() => []);
  for (const [lo, hi] of doc.edges) {
    const a = pos.get(lo);
    const b = pos.get(hi);
    if (a === undefined || b === undefined) continue;
    up[a]!.push(b);
    down[b]!.push(a);
  }

  // Longest path from the sources, i.e. from the bottom element.
  const layer = new Array<number>(n).fill(0);
  const indegree = down.map((lows) => lows.length);
  const queue: number[] = [];
  for (let i = 0; i < n; i++) if (indegree[i] === 0) queue.push(i);
  let head = 0;
  while (head < queue.length) {
    const v = queue[head++]!;
    for (const w of up[v]!) {
      layer[w] = Math.max(layer[w]!, layer[v]! + 1);
      if (--indegree[w]! === 0) queue.push(w);
    }
  }

  const layerCount = Math.max(...layer) + 1;
  const rows: number[][] = Array.from({ length: layerCount }, () => []);
  for (let i = 0; i < n; i++) rows[layer[i]!]!.push(i);

  // Barycenter ordering: order each row by the mean position of its
  // neighbors in the row just swept, alternating direction twice.
  const order = new Array<number>(n).fill(0);
  const reindex = (row: number[]) =>
    row.forEach((v, i) => {
      order[v] = i;
    });
  rows.forEach(reindex);
  const sortRow = (row: number[], neighbors: number[][]) => {
    const key = (v: number) => {
      const ns = neighbors[v]!;
      if (ns.length === 0) return order[v]!;
      return ns.reduce((acc, w) => acc + order[w]!, 0) / ns.length;
    };
    row.sort((a, b) => key(a) - key(b) || a - b);
    reindex(row);
  };
  for (let sweep = 0; sweep < 2; sweep++) {
    for (let l = 1; l < layerCount; l++) sortRow(rows[l]!, down);
    for (let l = layerCount - 2; l >= 0; l--) sortRow(rows[l]!, up);
  }

  const nodes: PlacedNode[] = [];
  for (let l = 0; l < layerCount; l++) {
    const row = rows[l]!;
    row.forEach((v, i) => {
      nodes.push({
        id: ids[v]!,
        x: (i + 1) / (row.length + 1),
        y: layerCount === 1 ? 0.5 : 1 - l / (layerCount - 1),
        layer: l,
      });
    });
  }
  nodes.sort((a, b) => a.id - b.id);
  return { nodes, edges: doc.edges, layerCount };
}
