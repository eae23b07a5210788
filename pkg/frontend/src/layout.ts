/** Breadth-first layered placement: columns by distance from the initial
 * state, rows spread evenly inside each column.  Good enough for the
 * double-digit supervisors this explorer targets. */
import type { Graph } from "./dot.js";

export interface Point {
  x: number;
  y: number;
}

export interface Layout {
  positions: Map<string, Point>;
  width: number;
  height: number;
}

const COLUMN_GAP = 150;
const ROW_GAP = 90;
const MARGIN = 60;

export function layoutGraph(graph: Graph): Layout {
  const adjacency = new Map<string, string[]>();
  for (const edge of graph.edges) {
    const out = adjacency.get(edge.from) ?? [];
    out.push(edge.to);
    adjacency.set(edge.from, out);
  }
  const layerOf = new Map<string, number>();
  const start = graph.initial ?? graph.nodes[0]?.id;
  if (start !== undefined) {
    layerOf.set(start, 0);
    const queue = [start];
    while (queue.length > 0) {
      const node = queue.shift() as string;
      const layer = layerOf.get(node) as number;
      for (const next of (adjacency.get(node) ?? []).slice().sort()) {
        if (!layerOf.has(next)) {
          layerOf.set(next, layer + 1);
          queue.push(next);
        }
      }
    }
  }
  let spare = 0;
  for (const node of graph.nodes) {
    if (!layerOf.has(node.id)) {
      layerOf.set(node.id, ++spare);
    }
  }
  const columns = new Map<number, string[]>();
  for (const node of graph.nodes) {
    const layer = layerOf.get(node.id) as number;
    const column = columns.get(layer) ?? [];
    column.push(node.id);
    columns.set(layer, column);
  }
  const tallest = Math.max(1, ...[...columns.values()].map((c) => c.length));
  const positions = new Map<string, Point>();
  for (const [layer, ids] of columns) {
    ids.sort();
    const offset = ((tallest - ids.length) * ROW_GAP) / 2;
    ids.forEach((id, row) => {
      positions.set(id, {
        x: MARGIN + layer * COLUMN_GAP,
        y: MARGIN + offset + row * ROW_GAP,
      });
    });
  }
  const layers = Math.max(1, columns.size);
  return {
    positions,
    width: 2 * MARGIN + (layers - 1) * COLUMN_GAP,
    height: 2 * MARGIN + (tallest - 1) * ROW_GAP,
  };
}
