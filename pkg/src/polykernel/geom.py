"""Delaunay cells via the paraboloid lift, Voronoi vertices, and the crust.

Point clouds are plain coordinate rows (no homogenizing coordinate).  All
predicates are exact, so cospherical points give non-simplicial cells.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .hull import facets_from_generators
from .rational import gauss_reduce


class DegenerateInput(ValueError):
    pass


def _cloud(points):
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("point cloud rows must be pairwise distinct")
    if pts and any(len(p) != len(pts[0]) for p in pts):
        raise ValueError("point cloud rows have different lengths")
    return pts


def _lift(pts):
    """Facets of the lifted polytope as ``(tight index set, is_lower)``."""
    d = len(pts[0])
    if len(pts) < d + 1:
        raise DegenerateInput(f"need at least {d + 1} points in dimension {d}")
    base = pts[0]
    if gauss_reduce([[a - b for a, b in zip(p, base)] for p in pts])[0] < d:
        raise DegenerateInput("points are affinely dependent")
    lifted = [(Fraction(1),) + p + (sum(x * x for x in p),) for p in pts]
    facets, hull_eqs = facets_from_generators(lifted)
    if hull_eqs:
        # every point on one sphere: a single cell, the lifted polytope itself
        everything = frozenset(range(len(pts)))
        return [(everything, True)] + [
            (frozenset(i for i, q in enumerate(lifted) if sum(a * b for a, b in zip(f, q)) == 0), False)
            for f in facets
        ]
    out = []
    for f in facets:
        tight = frozenset(i for i, q in enumerate(lifted) if sum(a * b for a, b in zip(f, q)) == 0)
        out.append((tight, f[-1] > 0))
    return out


def delaunay(points: Sequence[Sequence]) -> list[tuple]:
    """Delaunay cells: lower facets of the lifted point set."""
    pts = _cloud(points)
    return [tuple(sorted(t)) for t, lower in _lift(pts) if lower]


def delaunay_edges(points: Sequence[Sequence]) -> list[tuple]:
    """Edges of the Delaunay subdivision (cell diagonals excluded)."""
    pts = _cloud(points)
    facets = _lift(pts)
    lower = [t for t, lo in facets if lo]
    edges = set()
    for cell in lower:
        for u, v in combinations(sorted(cell), 2):
            if (u, v) in edges:
                continue
            common = None
            for t, _ in facets:
                if u in t and v in t:
                    common = t if common is None else common & t
            if common == {u, v}:
                edges.add((u, v))
    return sorted(edges)


def circumcenter(points: Sequence[Sequence]) -> tuple | None:
    """Point equidistant from all rows, solving the bisector equations.

    ``None`` if the points do not determine a unique center.
    """
    pts = [tuple(Fraction(x) for x in p) for p in points]
    p0 = pts[0]
    d = len(p0)
    aug = [
        [2 * (a - b) for a, b in zip(p, p0)] + [sum(x * x for x in p) - sum(x * x for x in p0)]
        for p in pts[1:]
    ]
    if not aug:
        return None
    rk, rref, pivots = gauss_reduce(aug)
    if d in pivots or rk != d:
        return None
    return tuple(rref[i][d] for i in range(d))


def voronoi_vertices(points: Sequence[Sequence]) -> tuple:
    """Circumcenters of the full-dimensional Delaunay cells, in cell order."""
    pts = _cloud(points)
    out = []
    for cell in delaunay(pts):
        c = circumcenter([pts[i] for i in cell])
        if c is not None and c not in out:
            out.append(c)
    return tuple(out)


def crust(points: Sequence[Sequence]) -> list[tuple]:
    """Curve reconstruction: Delaunay edges of S that survive adding the Voronoi vertices of S."""
    pts = _cloud(points)
    if len(pts) < 3:
        raise ValueError("crust needs at least 3 points")
    if len(pts[0]) != 2:
        raise ValueError("crust works on planar point sets")
    n = len(pts)
    combined = pts + list(voronoi_vertices(pts))
    return [(u, v) for u, v in delaunay_edges(combined) if u < n and v < n]
