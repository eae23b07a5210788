/** Parser for the server's DOT output.
 *
 * The format is line-based and canonical: one node or edge per line, fixed
 * attribute order, state names quoted.  Marked states arrive as double
 * circles, forcing states filled, the current state with a widened pen;
 * uncontrollable edges are dashed and forcible labels underlined. */

export interface GraphNode {
  id: string;
  marked: boolean;
  forcing: boolean;
  current: boolean;
}

export interface GraphEdge {
  from: string;
  to: string;
  label: string;
  uncontrollable: boolean;
  forcible: boolean;
}

export interface Graph {
  nodes: GraphNode[];
  edges: GraphEdge[];
  initial: string | null;
}

const EDGE = /^\s*"(.+?)"\s*->\s*"(.+?)"\s*\[(.*)\];$/;
const INIT_EDGE = /^\s*__init__\s*->\s*"(.+?)";$/;
const NODE = /^\s*"(.+?)"(?:\s*\[(.*)\])?;$/;

export function parseDot(text: string): Graph {
  const nodes: GraphNode[] = [];
  const edges: GraphEdge[] = [];
  let initial: string | null = null;
  for (const line of text.split("\n")) {
    const init = INIT_EDGE.exec(line);
    if (init) {
      initial = init[1] ?? null;
      continue;
    }
    const edge = EDGE.exec(line);
    if (edge) {
      const attrs = edge[3] ?? "";
      const plain = /label="([^"]*)"/.exec(attrs);
      const underlined = /label=<<u>(.*?)<\/u>>/.exec(attrs);
      edges.push({
        from: edge[1] ?? "",
        to: edge[2] ?? "",
        label: underlined?.[1] ?? plain?.[1] ?? "",
        uncontrollable: attrs.includes("style=dashed"),
        forcible: underlined !== null,
      });
      continue;
    }
    const node = NODE.exec(line);
    if (node && node[1] !== undefined && !line.includes("->")) {
      const attrs = node[2] ?? "";
      nodes.push({
        id: node[1],
        marked: attrs.includes("doublecircle"),
        forcing: attrs.includes("fillcolor=palegreen"),
        current: attrs.includes("penwidth=3"),
      });
    }
  }
  return { nodes, edges, initial };
}
