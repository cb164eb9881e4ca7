"""Derived combinatorial and metric properties of polytopes.

Incidence matrices are sequences of ascending vertex-index tuples, one per
facet.  Generators (vertices, rays) are homogeneous rows.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import iso
from .hull import canonical_affine_hull
from .rational import determinant, gauss_reduce, kernel_basis, rank, transpose


class PreconditionViolation(ValueError):
    """A computation was asked for on an object that does not satisfy its guard."""


def normalize_incidence(inc: Sequence[Sequence[int]]) -> tuple:
    return tuple(tuple(sorted(set(int(i) for i in f))) for f in inc)


def vertex_count(inc, n_vertices=None) -> int:
    used = max((max(f) for f in inc if f), default=-1) + 1
    return used if n_vertices is None else max(n_vertices, used)


@dataclass(frozen=True)
class Graph:
    n_nodes: int
    edges: frozenset  # of (u, v) with u < v

    @classmethod
    def from_pairs(cls, n, pairs):
        es = set()
        for u, v in pairs:
            if u == v:
                raise ValueError("graph loop")
            es.add((min(u, v), max(u, v)))
        return cls(n, frozenset(es))

    def adjacency(self) -> list[list[int]]:
        adj = [[] for _ in range(self.n_nodes)]
        for u, v in sorted(self.edges):
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency()]

    def _distances(self, src, adj):
        dist = [-1] * self.n_nodes
        dist[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def is_connected(self) -> bool:
        if self.n_nodes == 0:
            return True
        return min(self._distances(0, self.adjacency())) >= 0

    def diameter(self) -> int | None:
        """Longest shortest path; ``None`` for a disconnected graph."""
        adj = self.adjacency()
        best = 0
        for s in range(self.n_nodes):
            d = self._distances(s, adj)
            if min(d) < 0:
                return None
            best = max(best, max(d))
        return best

    def regularity(self) -> int | None:
        degs = set(self.degrees())
        return degs.pop() if len(degs) == 1 else None


@dataclass(frozen=True)
class FaceLattice:
    """Faces as vertex sets with their ranks (``-1`` for the empty face).

    ``hasse`` holds covering pairs ``(lower_id, upper_id)``.
    """

    faces: tuple
    ranks: tuple
    hasse: tuple
    top: int
    bottom: int

    @property
    def dim(self) -> int:
        return self.ranks[self.top]

    def faces_of_rank(self, k: int) -> list[frozenset]:
        return [f for f, r in zip(self.faces, self.ranks) if r == k]

    def covered_by(self, node: int) -> list[int]:
        return [lo for lo, up in self.hasse if up == node]

    def covering(self, node: int) -> list[int]:
        return [up for lo, up in self.hasse if lo == node]


def _maximal(sets):
    out = []
    for s in sorted(set(sets), key=lambda x: (-len(x), sorted(x))):
        if not any(s <= t for t in out):
            out.append(s)
    return out


def face_lattice(inc: Sequence[Sequence[int]], n_vertices: int | None = None) -> FaceLattice:
    """All faces by top-down closure.

    The faces covered by a face ``H`` are the inclusion-maximal sets among
    ``H & F`` over facets ``F`` not containing ``H``.  Levels are produced
    breadth first, so a face's rank follows from its level.
    """
    facets = [frozenset(f) for f in normalize_incidence(inc)]
    n = vertex_count(inc, n_vertices)
    top = frozenset(range(n))
    ids = {top: 0}
    levels = [[top]]
    hasse = []
    while True:
        nxt = []
        for h in levels[-1]:
            children = _maximal(h & f for f in facets if not h <= f)
            if not children and h:
                # a single point: its only proper face is the empty one
                children = [frozenset()]
            for c in children:
                if c not in ids:
                    ids[c] = len(ids)
                    nxt.append(c)
                hasse.append((ids[c], ids[h]))
        if not nxt:
            break
        levels.append(nxt)
    depth = len(levels)
    rank = {}
    for lvl, faces in enumerate(levels):
        for f in faces:
            rank[f] = depth - 2 - lvl
    faces = sorted(ids, key=ids.get)
    return FaceLattice(
        faces=tuple(faces),
        ranks=tuple(rank[f] for f in faces),
        hasse=tuple(hasse),
        top=0,
        bottom=ids[frozenset()] if frozenset() in ids else 0,
    )


def combinatorial_dim(inc: Sequence[Sequence[int]], n_vertices: int | None = None) -> int:
    """Dimension read off from the length of a maximal chain of faces."""
    return face_lattice(inc, n_vertices).dim


def affine_hull_dim(generators: Sequence[Sequence]) -> tuple[int, tuple]:
    """Dimension and equations of the affine hull of homogeneous generators."""
    if not generators:
        return -1, ()
    m = [tuple(Fraction(x) for x in g) for g in generators]
    rk = gauss_reduce(m)[0]
    eqs = canonical_affine_hull(kernel_basis(m))
    return rk - 1, eqs


def incidences(generators: Sequence[Sequence], facets: Sequence[Sequence]) -> tuple:
    """For every facet the ascending indices of generators on its hyperplane."""
    gens = [tuple(Fraction(x) for x in g) for g in generators]
    out = []
    for f in facets:
        f = tuple(Fraction(x) for x in f)
        out.append(tuple(i for i, g in enumerate(gens) if sum(a * b for a, b in zip(f, g)) == 0))
    return tuple(out)


def f_vector(lattice: FaceLattice) -> tuple:
    # a single point counts itself as its one vertex
    if lattice.dim == 0:
        return (1,)
    return tuple(len(lattice.faces_of_rank(k)) for k in range(lattice.dim))


def h_from_f(f: Sequence[int], d: int) -> tuple:
    ff = (1,) + tuple(f)
    return tuple(
        sum((-1) ** (k - i) * math.comb(d - i, k - i) * ff[i] for i in range(k + 1))
        for k in range(d + 1)
    )


def f_h_vector(lattice: FaceLattice):
    """``(f, h)`` with ``h`` ``None`` unless every facet is a simplex."""
    f = f_vector(lattice)
    d = lattice.dim
    simplicial = all(len(F) == d for F in lattice.faces_of_rank(d - 1))
    return f, (h_from_f(f, d) if simplicial and d >= 1 else None)


def graphs(inc: Sequence[Sequence[int]], dim: int | None = None, lattice: FaceLattice | None = None):
    """Vertex-edge graph and dual (facet-ridge) graph."""
    inc = normalize_incidence(inc)
    lat = lattice or face_lattice(inc)
    d = lat.dim if dim is None else dim
    n = len(lat.faces[lat.top])
    vg = Graph.from_pairs(n, [tuple(sorted(f)) for f in lat.faces_of_rank(1) if len(f) == 2])
    facet_ids = {frozenset(f): i for i, f in enumerate(inc)}
    pairs = []
    for node, r in enumerate(lat.ranks):
        if r != d - 2:
            continue
        ups = [facet_ids[lat.faces[u]] for u in lat.covering(node) if lat.faces[u] in facet_ids]
        if len(ups) == 2:
            pairs.append(tuple(ups))
    dg = Graph.from_pairs(len(inc), pairs)
    return vg, dg


@lru_cache(maxsize=None)
def _cube_form(k: int) -> bytes:
    return iso.canonical_form(cube_incidence(k))


def cube_incidence(k: int) -> tuple:
    """Facets of the combinatorial k-cube on vertices ``0..2^k-1`` (bit vectors)."""
    out = []
    for axis in range(k):
        for bit in (0, 1):
            out.append(tuple(v for v in range(2 ** k) if (v >> axis) & 1 == bit))
    return tuple(out)


def is_cubical(lattice: FaceLattice) -> bool:
    """Every facet combinatorially a (dim-1)-cube."""
    d = lattice.dim
    k = d - 1
    if k <= 1:
        return True
    for node, r in enumerate(lattice.ranks):
        if r != d - 1:
            continue
        verts = sorted(lattice.faces[node])
        ridges = [lattice.faces[c] for c in lattice.covered_by(node)]
        if len(verts) != 2 ** k or len(ridges) != 2 * k:
            return False
        relabel = {v: i for i, v in enumerate(verts)}
        sub = [tuple(sorted(relabel[v] for v in rdg)) for rdg in ridges]
        if iso.canonical_form(sub, len(verts)) != _cube_form(k):
            return False
    return True


def is_simple(inc: Sequence[Sequence[int]], dim: int) -> bool:
    """Every vertex lies in exactly ``dim`` facets."""
    inc = normalize_incidence(inc)
    per_vertex = [0] * vertex_count(inc)
    for f in inc:
        for v in f:
            per_vertex[v] += 1
    return all(c == dim for c in per_vertex)


def is_simplicial(inc: Sequence[Sequence[int]], dim: int) -> bool:
    """Every facet has exactly ``dim`` vertices."""
    return all(len(f) == dim for f in normalize_incidence(inc))


def flags(inc: Sequence[Sequence[int]], dim: int, rays_present: bool = False, lattice: FaceLattice | None = None):
    """``(simple, simplicial, cubical, bounded)``."""
    lat = lattice or face_lattice(inc)
    return is_simple(inc, dim), is_simplicial(inc, dim), is_cubical(lat), not rays_present


def volume(vertices: Sequence[Sequence], triangulation: Sequence[Sequence[int]]) -> Fraction:
    """Sum of simplex volumes of a triangulation, in the ambient space.

    A polytope that is not full-dimensional has volume 0.
    """
    verts = [tuple(Fraction(x) for x in v) for v in vertices]
    if any(v[0] == 0 for v in verts):
        raise PreconditionViolation("volume of an unbounded polyhedron")
    verts = [tuple(x / v[0] for x in v[1:]) for v in verts]
    if not verts:
        return Fraction(0)
    d = len(verts[0])
    base = verts[0]
    if rank([tuple(a - b for a, b in zip(v, base)) for v in verts]) < d:
        return Fraction(0)
    total = Fraction(0)
    for s in triangulation:
        if len(s) != d + 1:
            raise ValueError(f"simplex {tuple(s)} does not have {d + 1} vertices")
        v0 = verts[s[0]]
        total += abs(determinant([[a - b for a, b in zip(verts[i], v0)] for i in s[1:]]))
    return total / math.factorial(d)


def gale_transform(vertices: Sequence[Sequence]) -> tuple:
    """Gale vectors: rows of the transpose of a kernel basis of the vertex columns."""
    verts = [tuple(Fraction(x) for x in v) for v in vertices]
    k = kernel_basis(transpose(verts), cols=len(verts))
    if not k:
        return tuple(() for _ in verts)
    return transpose(k)
