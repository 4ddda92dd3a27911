"""Matplotlib renderings: layered order diagrams and progress figures.

Figures are written straight to files; the Agg backend is forced so the
functions work in headless runs.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .export import LatticeGraph, lattice_graph
from .context import FormalContext
from .families import ClosureFamily, render_object_set
from .ideal import IdealLattice


def _layer_layout(n: int, edges: list[tuple[int, int]],
                  size_of) -> tuple[dict[int, int], dict[int, float]]:
    """Longest-path ranks from the bottom plus barycenter x positions."""
    below: dict[int, list[int]] = {i: [] for i in range(n)}
    above: dict[int, list[int]] = {i: [] for i in range(n)}
    for lo, hi in edges:
        below[hi].append(lo)
        above[lo].append(hi)

    rank: dict[int, int] = {}
    order = sorted(range(n), key=size_of)
    for i in order:
        rank[i] = max((rank[j] + 1 for j in below[i]), default=0)

    layers: dict[int, list[int]] = {}
    for i, r in rank.items():
        layers.setdefault(r, []).append(i)
    x: dict[int, float] = {}
    for r in sorted(layers):
        layer = sorted(layers[r])
        for k, i in enumerate(layer):
            x[i] = k - (len(layer) - 1) / 2
    for _ in range(4):
        for r in sorted(layers):
            layer = layers[r]
            keyed = []
            for i in layer:
                neighbors = below[i] + above[i]
                if neighbors:
                    keyed.append((sum(x[j] for j in neighbors) / len(neighbors), i))
                else:
                    keyed.append((x[i], i))
            keyed.sort()
            width = len(layer)
            for k, (_, i) in enumerate(keyed):
                x[i] = k - (width - 1) / 2
    return rank, x


def _draw_layered(n: int, edges: list[tuple[int, int]], size_of,
                  label_above, label_below, path: str | Path,
                  title: str = "") -> None:
    rank, x = _layer_layout(n, edges, size_of)
    height = max(rank.values(), default=0) + 1
    width = max((len([i for i in rank if rank[i] == r]) for r in set(rank.values())),
                default=1)
    fig, ax = plt.subplots(figsize=(max(5.0, width * 1.4),
                                    max(3.5, height * 1.1)))
    for lo, hi in edges:
        ax.plot([x[lo], x[hi]], [rank[lo], rank[hi]],
                color="0.55", linewidth=0.9, zorder=1)
    for i in range(n):
        ax.scatter([x[i]], [rank[i]], s=55, color="#1f4e79", zorder=2)
        above = label_above(i)
        below = label_below(i)
        if above:
            ax.annotate(above, (x[i], rank[i]), xytext=(0, 7),
                        textcoords="offset points", ha="center", fontsize=8)
        if below:
            ax.annotate(below, (x[i], rank[i]), xytext=(0, -14),
                        textcoords="offset points", ha="center", fontsize=8,
                        color="0.25")
    ax.set_axis_off()
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_lattice(source: FormalContext | LatticeGraph,
                   path: str | Path, title: str = "") -> None:
    """Draw the concept lattice of a context as a layered diagram."""
    graph = source if isinstance(source, LatticeGraph) else lattice_graph(source)
    sizes = {n.index: len(n.extent) for n in graph.nodes}
    above = {n.index: ", ".join(n.attributes_introduced) for n in graph.nodes}
    below = {n.index: ", ".join(n.objects_introduced) for n in graph.nodes}
    _draw_layered(len(graph.nodes), list(graph.edges), lambda i: sizes[i],
                  lambda i: above[i], lambda i: below[i], path,
                  title or graph.name)


def render_ideal(extents: ClosureFamily, path: str | Path,
                 bound: int | None = 16, title: str = "") -> None:
    """Draw the lattice of sub-closure-systems, labeled by family size."""
    lat = IdealLattice(extents, bound)
    elems = lat.elements()
    pos = {f: k for k, f in enumerate(elems)}
    edges = []
    for a in elems:
        for b in elems:
            if a != b and lat.covers(a, b):
                edges.append((pos[a], pos[b]))
    label: dict[int, str] = {}
    for f, k in pos.items():
        if f.bit_count() <= 2:
            fam = lat.family(f)
            members = [m for m in fam.member_masks if m != fam.full_mask]
            label[k] = (render_object_set(members[0], fam.order)
                        if members else "{G}")
        else:
            label[k] = str(f.bit_count())
    _draw_layered(len(elems), edges, lambda k: bin(elems[k]).count("1"),
                  lambda k: "", lambda k: label[k], path,
                  title or "coarsening lattice")


def render_growth(counts: list[int], path: str | Path, title: str = "") -> None:
    """Line chart of reflected extent counts over exploration steps."""
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.plot(range(len(counts)), counts, marker="o", markersize=3,
            color="#1f4e79")
    ax.set_xlabel("answered queries")
    ax.set_ylabel("reflected extents")
    ax.grid(True, linewidth=0.3, alpha=0.6)
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
