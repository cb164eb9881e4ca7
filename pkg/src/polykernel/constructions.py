"""Polytope generators: cube, simplex, random sphere points, wedge."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .engine import PolytopeObject
from .hull import facets_from_generators
from .props import normalize_incidence, vertex_count

ONE = Fraction(1)


class InvalidParameter(ValueError):
    pass


def _points(rows, name):
    return PolytopeObject(name, {"POINTS": tuple(tuple(Fraction(x) for x in r) for r in rows)})


def make_cube(d: int, zero_one: bool = True) -> PolytopeObject:
    """Cube with coordinates in {0,1}^d or {-1,1}^d, first coordinate varying slowest."""
    if d < 1:
        raise InvalidParameter("cube dimension must be at least 1")
    lo = 0 if zero_one else -1
    return _points(((1,) + c for c in itertools.product((lo, 1), repeat=d)), f"cube{d}")


def make_simplex(d: int) -> PolytopeObject:
    if d < 0:
        raise InvalidParameter("simplex dimension must be non-negative")
    rows = [(1,) + (0,) * d] + [(1,) + tuple(int(i == j) for j in range(d)) for i in range(d)]
    return _points(rows, f"simplex{d}")


def sphere_point(u) -> tuple:
    """Inverse stereographic projection of ``u`` onto the unit sphere."""
    s = sum(x * x for x in u)
    return tuple(2 * x / (s + 1) for x in u) + ((s - 1) / (s + 1),)


def rand_sphere(d: int, n: int, seed: int, resolution: int = 1000) -> PolytopeObject:
    """``n`` distinct exact rational points on the unit sphere in R^d.

    Parameters ``u`` are drawn from the grid ``{k/r}`` with ``|k| <= 2r`` using
    :class:`random.Random` seeded with ``seed``.
    """
    if d < 2:
        raise InvalidParameter("rand_sphere needs d >= 2")
    if n < d + 1:
        raise InvalidParameter(f"rand_sphere needs at least {d + 1} points")
    rng = random.Random(seed)
    seen: set = set()
    pts = []
    while len(pts) < n:
        u = tuple(Fraction(rng.randint(-2 * resolution, 2 * resolution), resolution) for _ in range(d - 1))
        p = sphere_point(u)
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return _points(((ONE,) + p for p in pts), f"rand_sphere{d}_{n}")


def wedge_incidence(inc, facet_index: int, n_vertices: int | None = None) -> tuple:
    """Combinatorial wedge over facet ``facet_index``.

    Vertices off the facet get two copies: ``i`` (upper) and ``n + k`` (lower)
    where ``k`` counts off-facet vertices in ascending order.
    """
    inc = normalize_incidence(inc)
    if not 0 <= facet_index < len(inc):
        raise InvalidParameter(f"facet index {facet_index} out of range 0..{len(inc) - 1}")
    n = vertex_count(inc, n_vertices)
    f = set(inc[facet_index])
    others = [v for v in range(n) if v not in f]
    lower = {v: n + k for k, v in enumerate(others)}
    out = [tuple(sorted(f | {lower[v] for v in others})), tuple(sorted(f | set(others)))]
    for j, g in enumerate(inc):
        if j == facet_index:
            continue
        rest = [v for v in g if v not in f]
        out.append(tuple(sorted((set(g) & f) | set(rest) | {lower[v] for v in rest})))
    return tuple(out)


def wedge(p: PolytopeObject, facet_index: int, combinatorial_only: bool = False) -> PolytopeObject:
    """Wedge of ``p`` over one of its facets.

    Combinatorial mode reads VERTICES_IN_FACETS.  Geometric mode reads
    VERTICES or POINTS plus FACETS (computed if absent) and returns
    ``{(x, t) : x in P, 0 <= t <= slack_F(x)}`` as POINTS.
    """
    if combinatorial_only:
        if "VERTICES_IN_FACETS" not in p:
            raise InvalidParameter("combinatorial wedge needs VERTICES_IN_FACETS")
        inc = wedge_incidence(p["VERTICES_IN_FACETS"], facet_index, p.get("N_VERTICES"))
        return PolytopeObject(f"wedge_{p.name}", {"VERTICES_IN_FACETS": inc})
    gens = p.get("VERTICES") or p.get("POINTS")
    if not gens:
        raise InvalidParameter("geometric wedge needs VERTICES or POINTS")
    if any(g[0] == 0 for g in gens):
        raise InvalidParameter("wedge of an unbounded polyhedron")
    facets = p.get("FACETS") or facets_from_generators(gens)[0]
    if not 0 <= facet_index < len(facets):
        raise InvalidParameter(f"facet index {facet_index} out of range 0..{len(facets) - 1}")
    a = facets[facet_index]
    pts = [tuple(x / g[0] for x in g) for g in gens]
    rows = [q + (Fraction(0),) for q in pts]
    for q in pts:
        s = sum(c * x for c, x in zip(a, q))
        if s:
            rows.append(q + (s,))
    return PolytopeObject(f"wedge_{p.name}", {"POINTS": tuple(rows)})
