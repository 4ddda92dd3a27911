import { describe, expect, it } from "vitest";

import type { LatticeDoc } from "../src/api.js";
import { layeredLayout } from "../src/layout.js";

function doc(nodeCount: number, edges: [number, number][]): LatticeDoc {
  return {
    name: "t",
    nodes: Array.from({ length: nodeCount }, (_, i) => ({
      id: i, extent: [], intent: [], objects: [], attributes: [],
    })),
    edges,
  };
}

describe("layeredLayout", () => {
  it("places a single node mid-canvas", () => {
    const drawing = layeredLayout(doc(1, []));
    expect(drawing.layerCount).toBe(1);
    expect(drawing.nodes).toEqual([{ id: 0, x: 0.5, y: 0.5, layer: 0 }]);
  });

  it("handles the empty diagram", () => {
    expect(layeredLayout(doc(0, []))).toEqual({
      nodes: [], edges: [], layerCount: 0,
    });
  });

  it("stacks a chain bottom-up", () => {
    const drawing = layeredLayout(doc(3, [[0, 1], [1, 2]]));
    expect(drawing.layerCount).toBe(3);
    const byId = new Map(drawing.nodes.map((n) => [n.id, n]));
    expect(byId.get(0)!.layer).toBe(0);
    expect(byId.get(2)!.layer).toBe(2);
    expect(byId.get(0)!.y).toBeGreaterThan(byId.get(1)!.y);
    expect(byId.get(1)!.y).toBeGreaterThan(byId.get(2)!.y);
  });

  it("keeps every cover edge pointing strictly upward", () => {
    // diamond with two middle layers
    const edges: [number, number][] = [
      [0, 1], [0, 2], [1, 3], [2, 4], [1, 4], [3, 5], [4, 5],
    ];
    const drawing = layeredLayout(doc(6, edges));
    const byId = new Map(drawing.nodes.map((n) => [n.id, n]));
    for (const [lo, hi] of edges) {
      expect(byId.get(hi)!.layer).toBeGreaterThan(byId.get(lo)!.layer);
    }
  });

  it("normalizes coordinates into the unit square", () => {
    const drawing = layeredLayout(doc(6, [
      [0, 1], [0, 2], [0, 3], [1, 4], [2, 4], [3, 5], [4, 5],
    ]));
    for (const node of drawing.nodes) {
      expect(node.x).toBeGreaterThan(0);
      expect(node.x).toBeLessThan(1);
      expect(node.y).toBeGreaterThanOrEqual(0);
      expect(node.y).toBeLessThanOrEqual(1);
    }
  });

  it("gives nodes in one layer distinct horizontal slots", () => {
    const drawing = layeredLayout(doc(5, [[0, 1], [0, 2], [0, 3], [0, 4]]));
    const top = drawing.nodes.filter((n) => n.layer === 1);
    const xs = new Set(top.map((n) => n.x));
    expect(xs.size).toBe(top.length);
  });

  it("is deterministic", () => {
    const edges: [number, number][] = [
      [0, 1], [0, 2], [1, 3], [2, 3], [0, 4], [4, 3],
    ];
    const a = layeredLayout(doc(5, edges));
    const b = layeredLayout(doc(5, edges));
    expect(a).toEqual(b);
  });
});
