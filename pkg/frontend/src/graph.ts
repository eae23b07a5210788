/** SVG rendering of the supervisor graph.  The current state is highlighted,
 * forcing states are green, marked states double-ringed, uncontrollable
 * edges dashed and forcible labels underlined, matching the DOT styling. */
import type { Graph } from "./dot.js";
import { layoutGraph } from "./layout.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const RADIUS = 24;

function svgEl<K extends keyof SVGElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = doc.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, value);
  }
  return el;
}

export function renderGraph(svg: SVGSVGElement, graph: Graph, currentState: string | null): void {
  const doc = svg.ownerDocument;
  while (svg.firstChild) {
    svg.removeChild(svg.firstChild);
  }
  const { positions, width, height } = layoutGraph(graph);
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);

  const defs = svgEl(doc, "defs", {});
  const marker = svgEl(doc, "marker", {
    id: "arrow",
    viewBox: "0 0 10 10",
    refX: "9",
    refY: "5",
    markerWidth: "7",
    markerHeight: "7",
    orient: "auto-start-reverse",
  });
  marker.appendChild(svgEl(doc, "path", { d: "M 0 0 L 10 5 L 0 10 z", fill: "#555" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  for (const edge of graph.edges) {
    const from = positions.get(edge.from);
    const to = positions.get(edge.to);
    if (!from || !to) {
      continue;
    }
    let path: string;
    let labelPoint: { x: number; y: number };
    if (edge.from === edge.to) {
      path = `M ${from.x - 10} ${from.y - RADIUS + 4} C ${from.x - 40} ${from.y - RADIUS - 45}, ${
        from.x + 40
      } ${from.y - RADIUS - 45}, ${from.x + 10} ${from.y - RADIUS + 4}`;
      labelPoint = { x: from.x, y: from.y - RADIUS - 38 };
    } else {
      const dx = to.x - from.x;
      const dy = to.y - from.y;
      const len = Math.hypot(dx, dy) || 1;
      const sx = from.x + (dx / len) * RADIUS;
      const sy = from.y + (dy / len) * RADIUS;
      const tx = to.x - (dx / len) * (RADIUS + 4);
      const ty = to.y - (dy / len) * (RADIUS + 4);
      const mx = (sx + tx) / 2 - dy / len * 14;
      const my = (sy + ty) / 2 + dx / len * 14;
      path = `M ${sx} ${sy} Q ${mx} ${my} ${tx} ${ty}`;
      labelPoint = { x: mx, y: my - 4 };
    }
    const attrs: Record<string, string> = {
      d: path,
      fill: "none",
      stroke: "#555",
      "marker-end": "url(#arrow)",
    };
    if (edge.uncontrollable) {
      attrs["stroke-dasharray"] = "5 4";
    }
    svg.appendChild(svgEl(doc, "path", attrs));
    const label = svgEl(doc, "text", {
      x: String(labelPoint.x),
      y: String(labelPoint.y),
      "text-anchor": "middle",
      class: edge.forcible ? "edge-label forcible" : "edge-label",
    });
    label.textContent = edge.label;
    svg.appendChild(label);
  }

  for (const node of graph.nodes) {
    const at = positions.get(node.id);
    if (!at) {
      continue;
    }
    const group = svgEl(doc, "g", { "data-state": node.id });
    const isCurrent = currentState !== null ? node.id === currentState : node.current;
    group.appendChild(
      svgEl(doc, "circle", {
        cx: String(at.x),
        cy: String(at.y),
        r: String(RADIUS),
        fill: node.forcing ? "#a7e8a7" : "#f4f6fb",
        stroke: isCurrent ? "#1450c8" : "#333",
        "stroke-width": isCurrent ? "4" : "1.5",
        class: isCurrent ? "node current" : "node",
      }),
    );
    if (node.marked) {
      group.appendChild(
        svgEl(doc, "circle", {
          cx: String(at.x),
          cy: String(at.y),
          r: String(RADIUS - 5),
          fill: "none",
          stroke: isCurrent ? "#1450c8" : "#333",
          "stroke-width": "1.5",
        }),
      );
    }
    const text = svgEl(doc, "text", {
      x: String(at.x),
      y: String(at.y + 4),
      "text-anchor": "middle",
      class: "node-label",
    });
    text.textContent = node.id;
    group.appendChild(text);
    svg.appendChild(group);
  }
}
