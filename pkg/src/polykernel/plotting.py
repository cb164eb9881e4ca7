"""DOT and SVG export of vertex graphs and crust reconstructions."""
from __future__ import annotations

import zlib
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402

from .lp import OrientedGraph  # noqa: E402
from .props import Graph  # noqa: E402
from .rational import format_rational  # noqa: E402


def graph_to_dot(graph: Graph | OrientedGraph, levels=None, name: str = "G") -> str:
    """DOT source.  Node ids are vertex indices; ``levels`` become labels."""
    directed = isinstance(graph, OrientedGraph)
    n = len(levels) if levels is not None else graph.n_nodes
    lines = [f"{'digraph' if directed else 'graph'} {name} {{"]
    for v in range(n):
        label = f"{v}" if levels is None else f"{v}: {format_rational(levels[v])}"
        lines.append(f'  {v} [label="{label}"];')
    arrow = "->" if directed else "--"
    pairs = graph.arcs + graph.flat if directed else graph.edges
    for u, v in pairs:
        extra = " [dir=none]" if directed and (u, v) in graph.flat else ""
        lines.append(f"  {u} {arrow} {v}{extra};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _layout(nodes, edges, seed_text: str):
    g = nx.Graph()
    g.add_nodes_from(nodes)
    g.add_edges_from(edges)
    return nx.spring_layout(g, seed=zlib.crc32(seed_text.encode()))


def graph_to_svg(path, graph: Graph | OrientedGraph, levels=None, seed_text: str = "") -> None:
    """Render with a spring layout seeded from ``seed_text`` (the file name)."""
    directed = isinstance(graph, OrientedGraph)
    n = len(levels) if levels is not None else graph.n_nodes
    pairs = list(graph.arcs + graph.flat) if directed else list(graph.edges)
    pos = _layout(range(n), pairs, seed_text or str(path))
    fig, ax = plt.subplots(figsize=(5, 5))
    for u, v in pairs:
        (x0, y0), (x1, y1) = pos[u], pos[v]
        if directed and (u, v) in graph.arcs:
            ax.annotate("", xy=(x1, y1), xytext=(x0, y0),
                        arrowprops=dict(arrowstyle="-|>", color="0.3", shrinkA=9, shrinkB=9))
        else:
            ax.plot([x0, x1], [y0, y1], color="0.3", lw=1, zorder=1)
    xs = [pos[v][0] for v in range(n)]
    ys = [pos[v][1] for v in range(n)]
    style = dict(s=320, edgecolors="black", zorder=2)
    if levels is not None:
        ordered = sorted(set(levels))
        ax.scatter(xs, ys, c=[ordered.index(levels[v]) for v in range(n)], cmap="viridis", **style)
    else:
        ax.scatter(xs, ys, c="white", **style)
    for v in range(n):
        ax.text(pos[v][0], pos[v][1], str(v), ha="center", va="center", fontsize=8, zorder=3,
                color="red" if levels is not None else "black")
    ax.set_axis_off()
    fig.savefig(path, format="svg")
    plt.close(fig)


def crust_to_svg(path, points, edges) -> None:
    """Sample points plus reconstructed edges, equal aspect."""
    xy = [(float(Fraction(p[0])), float(Fraction(p[1]))) for p in points]
    fig, ax = plt.subplots(figsize=(5, 5))
    for u, v in edges:
        ax.plot([xy[u][0], xy[v][0]], [xy[u][1], xy[v][1]], color="tab:blue", lw=1.5)
    ax.scatter([x for x, _ in xy], [y for _, y in xy], s=14, color="black", zorder=2)
    ax.set_aspect("equal")
    ax.set_axis_off()
    fig.savefig(path, format="svg")
    plt.close(fig)
