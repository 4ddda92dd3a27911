"""Concept lattice graphs and their DOT and JSON renderings."""

from __future__ import annotations

from dataclasses import dataclass

from .bits import is_subset
from .context import FormalContext


@dataclass(frozen=True)
class LatticeNode:
    index: int
    extent: tuple[str, ...]
    intent: tuple[str, ...]
    objects_introduced: tuple[str, ...]
    attributes_introduced: tuple[str, ...]


@dataclass(frozen=True)
class LatticeGraph:
    """Concept lattice as nodes plus upward cover edges.

    Nodes follow the lectic order of their extents; each edge (a, b)
    says node b's extent covers node a's.  Objects and attributes are
    attached to the single node that introduces them, the usual reduced
    labeling.
    """

    name: str
    nodes: tuple[LatticeNode, ...]
    edges: tuple[tuple[int, int], ...]

    def to_doc(self) -> dict:
        return {
            "type": "lattice",
            "version": 1,
            "name": self.name,
            "nodes": [{
                "id": n.index,
                "extent": list(n.extent),
                "intent": list(n.intent),
                "objects": list(n.objects_introduced),
                "attributes": list(n.attributes_introduced),
            } for n in self.nodes],
            "edges": [list(e) for e in self.edges],
        }


def lattice_graph(ctx: FormalContext) -> LatticeGraph:
    extents = ctx._extent_masks()
    index = {m: i for i, m in enumerate(extents)}
    n = len(extents)

    by_size = sorted(range(n), key=lambda i: extents[i].bit_count())
    edges = []
    for a_pos, i in enumerate(by_size):
        a = extents[i]
        for j in by_size[a_pos + 1:]:
            b = extents[j]
            if a == b or not is_subset(a, b):
                continue
            if any(extents[k] != a and extents[k] != b
                   and is_subset(a, extents[k]) and is_subset(extents[k], b)
                   for k in by_size):
                continue
            edges.append((i, j))

    intro_objects: dict[int, list[str]] = {i: [] for i in range(n)}
    for gi, g in enumerate(ctx.objects):
        node = index[ctx._closure(1 << gi)]
        intro_objects[node].append(g)
    intro_attrs: dict[int, list[str]] = {i: [] for i in range(n)}
    for mj, m in enumerate(ctx.attributes):
        node = index[ctx._cols[mj]]
        intro_attrs[node].append(m)

    nodes = []
    for i, mask in enumerate(extents):
        extent = tuple(g for gi, g in enumerate(ctx.objects) if (mask >> gi) & 1)
        imask = ctx._derive_objects(mask)
        intent = tuple(m for mj, m in enumerate(ctx.attributes) if (imask >> mj) & 1)
        nodes.append(LatticeNode(
            index=i, extent=extent, intent=intent,
            objects_introduced=tuple(intro_objects[i]),
            attributes_introduced=tuple(intro_attrs[i])))
    return LatticeGraph(name=ctx.name, nodes=tuple(nodes), edges=tuple(edges))


def lattice_to_dot(graph: LatticeGraph) -> str:
    """Render the lattice as a DOT digraph, lower concepts below."""
    out = ["digraph lattice {"]
    out.append('  rankdir="BT";')
    out.append('  node [shape=circle, width=0.15, fixedsize=true, '
               'label="", style=filled, fillcolor=black];')
    for node in graph.nodes:
        above = ", ".join(node.attributes_introduced)
        below = ", ".join(node.objects_introduced)
        label_parts = []
        if above:
            label_parts.append(above)
        if below:
            label_parts.append(below)
        xlabel = "\\n".join(label_parts)
        attrs = f'xlabel="{_dot_escape(xlabel)}"' if xlabel else ""
        out.append(f"  n{node.index} [{attrs}];")
    for lo, hi in graph.edges:
        out.append(f"  n{lo} -> n{hi} [arrowhead=none];")
    out.append("}")
    return "\n".join(out) + "\n"


def _dot_escape(text: str) -> str:
    return text.replace('"', '\\"')
