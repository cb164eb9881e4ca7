"""Combinatorial equivalence of incidence structures.

The vertex-facet incidences are read as a bipartite graph whose vertex nodes
come before its facet nodes.  Canonical labeling uses individualization and
refinement: an ordered partition is refined until every node's multiset of
neighbour cells agrees with its cell mates, then the first smallest
non-singleton cell is split, for every choice of node.  Every leaf of that
search tree is a relabeling; the lexicographically least relabeled graph is
the canonical form, and the leaves that reproduce it are in bijection with
the automorphisms.

Only side-preserving maps are considered: vertices go to vertices and facets
to facets.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence


@dataclass(frozen=True)
class IsoCertificate:
    vertex_map: tuple
    facet_map: tuple


@dataclass
class SearchStats:
    leaves: int = 0
    nodes: int = 0
    max_level: int = 0
    refinements: int = 0


@dataclass
class _Search:
    facets: tuple
    n_vertices: int
    adj: list = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)

    def __post_init__(self):
        nv = self.n_vertices
        self.adj = [[] for _ in range(nv + len(self.facets))]
        for j, f in enumerate(self.facets):
            for v in f:
                self.adj[v].append(nv + j)
                self.adj[nv + j].append(v)

    def refine(self, cells):
        while True:
            self.stats.refinements += 1
            cell_of = {}
            for ci, cell in enumerate(cells):
                for v in cell:
                    cell_of[v] = ci
            out = []
            changed = False
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                groups: dict[tuple, list] = {}
                for v in cell:
                    sig = tuple(sorted(cell_of[u] for u in self.adj[v]))
                    groups.setdefault(sig, []).append(v)
                if len(groups) > 1:
                    changed = True
                out.extend(tuple(groups[s]) for s in sorted(groups))
            cells = out
            if not changed:
                return cells

    def encode(self, cells):
        pos = [0] * len(self.adj)
        for ci, cell in enumerate(cells):
            pos[cell[0]] = ci
        nv = self.n_vertices
        enc = tuple(sorted(tuple(sorted(pos[v] for v in f)) + (pos[nv + j],) for j, f in enumerate(self.facets)))
        return enc, pos

    def leaves(self, cells, level=0):
        self.stats.nodes += 1
        self.stats.max_level = max(self.stats.max_level, level)
        cells = self.refine(cells)
        if all(len(c) == 1 for c in cells):
            self.stats.leaves += 1
            yield self.encode(cells)
            return
        size = min(len(c) for c in cells if len(c) > 1)
        i = next(k for k, c in enumerate(cells) if len(c) == size)
        target = cells[i]
        for v in sorted(target):
            rest = tuple(u for u in target if u != v)
            yield from self.leaves(cells[:i] + [(v,), rest] + cells[i + 1:], level + 1)

    def run(self):
        nv = self.n_vertices
        init = [tuple(range(nv)), tuple(range(nv, len(self.adj)))]
        init = [c for c in init if c]
        best = None
        best_pos = None
        count = 0
        for enc, pos in self.leaves(init):
            if best is None or enc < best:
                best, best_pos, count = enc, pos, 1
            elif enc == best:
                count += 1
        return best, best_pos, count


def _normalize(inc: Sequence[Sequence[int]], n_vertices: int | None):
    facets = tuple(tuple(sorted(set(f))) for f in inc)
    used = max((max(f) for f in facets if f), default=-1) + 1
    nv = used if n_vertices is None else n_vertices
    if nv < used:
        raise ValueError("vertex index out of range")
    return facets, nv


def _analyse(inc, n_vertices=None):
    facets, nv = _normalize(inc, n_vertices)
    s = _Search(facets, nv)
    best, pos, count = s.run()
    return s, best, pos, count


def canonical_form(inc: Sequence[Sequence[int]], n_vertices: int | None = None) -> bytes:
    """Byte string equal for two incidence matrices iff they are isomorphic."""
    s, best, _, _ = _analyse(inc, n_vertices)
    return repr((s.n_vertices, len(s.facets), best)).encode()


def automorphism_order(inc: Sequence[Sequence[int]], n_vertices: int | None = None) -> int:
    """Order of the group of incidence-preserving vertex/facet permutations."""
    return _analyse(inc, n_vertices)[3]


def verify_certificate(a, b, cert: IsoCertificate) -> bool:
    fa = [frozenset(f) for f in a]
    fb = [frozenset(f) for f in b]
    if sorted(cert.facet_map) != list(range(len(fb))) or len(fa) != len(fb):
        return False
    if len(set(cert.vertex_map)) != len(cert.vertex_map):
        return False
    for i, f in enumerate(fa):
        if frozenset(cert.vertex_map[v] for v in f) != fb[cert.facet_map[i]]:
            return False
    return True


def find_isomorphism(a, b, n_vertices_a=None, n_vertices_b=None, stats: list | None = None):
    """A verified :class:`IsoCertificate` mapping ``a`` onto ``b``, or ``None``."""
    fa, nva = _normalize(a, n_vertices_a)
    fb, nvb = _normalize(b, n_vertices_b)
    if nva != nvb or len(fa) != len(fb):
        return None
    sa, best_a, pos_a, _ = _analyse(fa, nva)
    sb, best_b, pos_b, _ = _analyse(fb, nvb)
    if stats is not None:
        stats.extend([sa.stats, sb.stats])
    if best_a != best_b:
        return None
    node_at_b = {p: node for node, p in enumerate(pos_b)}
    vmap = tuple(node_at_b[pos_a[v]] for v in range(nva))
    fmap = tuple(node_at_b[pos_a[nva + j]] - nvb for j in range(len(fa)))
    cert = IsoCertificate(vmap, fmap)
    if not verify_certificate(fa, fb, cert):
        raise AssertionError("isomorphism certificate failed verification")
    return cert
