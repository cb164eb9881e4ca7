"""Convex hulls in homogeneous coordinates.

Two native algorithms live here:

* :func:`double_description` computes the extreme rays and lineality space of
  a cone ``{y : A y >= 0, E y = 0}``.  Applied to the rows of a homogenized
  inequality system it yields vertices and rays; applied to homogenized
  generators it yields facets (cone duality), see :func:`facets_from_generators`.
* :func:`beneath_beyond` inserts affine points one at a time and returns the
  facets together with a placing triangulation.

Inequalities are rows ``(a0, a1, ..., ad)`` meaning ``a0 + a1 x1 + ... >= 0``.
Generators are rows with a leading 1 (points) or 0 (rays).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .rational import (
    DimensionMismatch,
    canonical_equation,
    gauss_reduce,
    kernel_basis,
    primitive_integer_row,
    solve_unique,
)


class UnsupportedInput(ValueError):
    pass


def _idot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _check_width(rows, width=None, what="rows"):
    for r in rows:
        if width is None:
            width = len(r)
        elif len(r) != width:
            raise DimensionMismatch(f"{what} have different lengths")
    return width


@dataclass(frozen=True)
class ConeDescription:
    """Extreme rays and lineality basis of a polyhedral cone.

    ``tight[i]`` lists the indices of the input inequalities that vanish on
    ``generators[i]``.
    """

    generators: tuple
    lineality: tuple
    tight: tuple = field(default=(), compare=False)


def homogenize_h(inequalities: Sequence[Sequence], equations: Sequence[Sequence] = (),
                 ambient_dim: int | None = None):
    """Turn an affine H-description into the inequalities/equations of its cone.

    The row ``(1, 0, ..., 0)`` (``y0 >= 0``) is appended to the inequalities.
    Returns ``(ineq_matrix, eq_matrix)`` with Fraction entries.  With no rows
    at all, ``ambient_dim`` fixes the width.
    """
    width = _check_width(list(inequalities) + list(equations),
                         None if ambient_dim is None else ambient_dim + 1, what="inequality rows")
    if width is None:
        raise DimensionMismatch("cannot infer the ambient dimension from no rows")
    ineqs = [tuple(Fraction(x) for x in r) for r in inequalities]
    ineqs.append(tuple(Fraction(int(i == 0)) for i in range(width)))
    eqs = [tuple(Fraction(x) for x in r) for r in equations]
    return tuple(ineqs), tuple(eqs)


def _project_lineality(a, l, al, lin, rays):
    new_lin = []
    for l2 in lin:
        c = _idot(a, l2)
        v = [al * x - c * y for x, y in zip(l2, l)] if c else list(l2)
        new_lin.append(primitive_integer_row(v))
    new_rays = []
    for r, z in rays:
        c = _idot(a, r)
        v = [al * x - c * y for x, y in zip(r, l)] if c else list(r)
        new_rays.append((primitive_integer_row(v), z))
    return new_lin, new_rays


def _adjacent(zp, zq, others):
    common = zp & zq
    for zr in others:
        if zr is not zp and zr is not zq and common <= zr:
            return False
    return True


def _combine_pairs(a, k, pos, neg, all_z):
    out = []
    for p, zp, ap in pos:
        for q, zq, aq in neg:
            if not _adjacent(zp, zq, all_z):
                continue
            v = [ap * x - aq * y for x, y in zip(q, p)]
            z = zp & zq
            out.append((primitive_integer_row(v), z if k is None else z | {k}))
    return out


def double_description(
    inequalities: Sequence[Sequence],
    equations: Sequence[Sequence] = (),
    order: str = "input",
) -> ConeDescription:
    """Extreme rays and lineality of ``{y : A y >= 0, E y = 0}``.

    Rows are inserted in file order (``order="input"``) or sorted
    lexicographically (``order="lex"``).  Two rays are combined only if they
    are adjacent by the combinatorial test: no third ray's zero set contains
    the intersection of their zero sets.  Output rows are primitive integer
    vectors as Fractions.
    """
    width = _check_width(list(inequalities) + list(equations))
    if width is None:
        raise DimensionMismatch("double description needs at least one row")
    ineq_rows = [primitive_integer_row(r) for r in inequalities]
    eq_rows = [primitive_integer_row(r) for r in equations]
    seq = list(range(len(ineq_rows)))
    if order == "lex":
        seq.sort(key=lambda i: ineq_rows[i])
    elif order != "input":
        raise ValueError(f"unknown insertion order {order!r}")

    lin = [tuple(int(i == j) for j in range(width)) for i in range(width)]
    rays: list[tuple[tuple, frozenset]] = []
    processed: set[int] = set()

    for e in eq_rows:
        if not any(e):
            continue
        j = next((i for i, l in enumerate(lin) if _idot(e, l)), None)
        if j is not None:
            l = lin.pop(j)
            el = _idot(e, l)
            if el < 0:
                l, el = tuple(-x for x in l), -el
            lin, rays = _project_lineality(e, l, el, lin, rays)
            continue
        vals = [_idot(e, r) for r, _ in rays]
        pos = [(r, z, v) for (r, z), v in zip(rays, vals) if v > 0]
        neg = [(r, z, v) for (r, z), v in zip(rays, vals) if v < 0]
        zero = [(r, z) for (r, z), v in zip(rays, vals) if v == 0]
        all_z = [z for _, z in rays]
        rays = zero + _combine_pairs(e, None, pos, neg, all_z)

    for k in seq:
        a = ineq_rows[k]
        if not any(a):
            continue
        j = next((i for i, l in enumerate(lin) if _idot(a, l)), None)
        if j is not None:
            l = lin.pop(j)
            al = _idot(a, l)
            if al < 0:
                l, al = tuple(-x for x in l), -al
            lin, rays = _project_lineality(a, l, al, lin, rays)
            rays = [(r, z | {k}) for r, z in rays]
            rays.append((l, frozenset(processed)))
        else:
            vals = [_idot(a, r) for r, _ in rays]
            pos = [(r, z, v) for (r, z), v in zip(rays, vals) if v > 0]
            neg = [(r, z, v) for (r, z), v in zip(rays, vals) if v < 0]
            zero = [(r, z | {k}) for (r, z), v in zip(rays, vals) if v == 0]
            all_z = [z for _, z in rays]
            rays = [(r, z) for r, z, _ in pos] + zero + _combine_pairs(a, k, pos, neg, all_z)
        processed.add(k)

    def fr(row):
        return tuple(Fraction(x) for x in row)

    return ConeDescription(
        generators=tuple(fr(r) for r, _ in rays),
        lineality=tuple(fr(l) for l in lin),
        tight=tuple(tuple(sorted(z)) for _, z in rays),
    )


def dehomogenize(cone: ConeDescription):
    """Split cone generators into affine vertices and rays.

    Returns ``(vertices, rays, pointed, feasible)``.  Vertices are rescaled
    to leading coordinate 1, rays keep leading coordinate 0.
    """
    verts, rays = [], []
    for g in cone.generators:
        if g[0] > 0:
            verts.append(tuple(x / g[0] for x in g))
        elif g[0] == 0:
            rays.append(tuple(g))
        else:
            raise ValueError("generator with negative leading coordinate")
    feasible = bool(verts)
    pointed = not cone.lineality
    if not feasible:
        rays = []
    return tuple(verts), tuple(rays), pointed, feasible


def canonical_affine_hull(equations: Sequence[Sequence]) -> tuple:
    """Unique basis for a space of equations: RREF rows, primitive, sign-fixed."""
    if not equations:
        return ()
    rk, rref, _ = gauss_reduce(equations)
    return tuple(tuple(Fraction(x) for x in canonical_equation(r)) for r in rref[:rk])


def canonical_facet(a: Sequence, equations: Sequence[Sequence] = ()) -> tuple:
    """Representative of a facet inequality modulo the affine hull.

    The linear part is made orthogonal to the linear parts of the equations,
    then the row is scaled (positively) to coprime integers.
    """
    a = [Fraction(x) for x in a]
    if equations:
        lin = [[Fraction(x) for x in e[1:]] for e in equations]
        gram = [[sum(x * y for x, y in zip(u, v)) for v in lin] for u in lin]
        rhs = [-sum(x * y for x, y in zip(u, a[1:])) for u in lin]
        mu = solve_unique(gram, rhs)
        if mu is None:
            raise ValueError("affine hull equations have dependent linear parts")
        for m, e in zip(mu, equations):
            if m:
                a = [x + m * Fraction(y) for x, y in zip(a, e)]
    return tuple(Fraction(x) for x in primitive_integer_row(a))


def facets_from_generators(generators: Sequence[Sequence], order: str = "input"):
    """Facets and affine hull of the polyhedron spanned by homogeneous generators.

    Returns ``(facets, affine_hull)``.  For bounded input the trivial
    inequality ``1 >= 0`` is not a facet and is dropped; with rays present it
    is kept as the face at infinity.
    """
    if not generators:
        raise ValueError("no generators")
    cone = double_description(generators, order=order)
    eqs = canonical_affine_hull(cone.lineality)
    bounded = all(g[0] != 0 for g in generators)
    facets = []
    seen = set()
    for r in cone.generators:
        f = canonical_facet(r, eqs)
        if bounded and not any(f[1:]):
            continue
        if f not in seen:
            seen.add(f)
            facets.append(f)
    return tuple(facets), eqs


def generators_from_inequalities(inequalities, equations=(), order="input"):
    """Vertices, rays, lineality, pointedness and feasibility of an H-polyhedron."""
    ineqs, eqs = homogenize_h(inequalities, equations)
    cone = double_description(ineqs, eqs, order=order)
    verts, rays, pointed, feasible = dehomogenize(cone)
    lineality = tuple(l for l in cone.lineality) if feasible else ()
    return verts, rays, lineality, pointed, feasible


def dedupe_points(points: Sequence[Sequence]):
    """Drop repeated rows.  Returns ``(unique_rows, first_index_of_each)``."""
    seen = {}
    for i, p in enumerate(points):
        key = tuple(Fraction(x) for x in p)
        if key[0] != 0:
            key = tuple(x / key[0] for x in key)
        seen.setdefault(key, i)
    idx = sorted(seen.values())
    return [tuple(Fraction(x) for x in points[i]) for i in idx], idx


@dataclass
class BeneathBeyondResult:
    facets: tuple
    affine_hull: tuple
    triangulation: tuple
    vertices: tuple  # indices of input points that are vertices
    essentially_generic: bool


class _Placer:
    def __init__(self, pts):
        self.pts = pts  # primitive integer rows
        self.used: list[int] = []
        self.eqs: list[tuple] = []
        self.dim = -1
        self.facets: list[tuple] = []
        self.simplices: list[frozenset] = []
        self.generic = True

    def _affine_eqs(self, idx):
        return [primitive_integer_row(k) for k in kernel_basis([self.pts[i] for i in idx])]

    def _hyperplane(self, idx, eqs, ref):
        rows = [self.pts[i] for i in idx] + list(eqs)
        ker = kernel_basis(rows, cols=len(self.pts[0]))
        if len(ker) != 1:
            raise ArithmeticError("hyperplane through placed points is not unique")
        a = primitive_integer_row(ker[0])
        for i in ref:
            s = _idot(a, self.pts[i])
            if s:
                return a if s > 0 else tuple(-x for x in a)
        raise ArithmeticError("no reference point off the hyperplane")

    def _tight(self, a):
        return [i for i in self.used if _idot(a, self.pts[i]) == 0]

    def place(self, j):
        p = self.pts[j]
        if self.dim == -1:
            self.used = [j]
            self.dim = 0
            self.simplices = [frozenset([j])]
            self.eqs = self._affine_eqs([j])
            return
        if any(_idot(e, p) for e in self.eqs):
            self._lift(j)
            return
        vals = [_idot(a, p) for a in self.facets]
        if any(v == 0 for v in vals):
            self.generic = False
        visible = [a for a, v in zip(self.facets, vals) if v < 0]
        if not visible:
            return
        hidden = [a for a, v in zip(self.facets, vals) if v >= 0]
        d = self.dim
        vis_faces, hid_faces = set(), set()
        new_simplices = []
        for s in self.simplices:
            for a in visible:
                t = frozenset(i for i in s if _idot(a, self.pts[i]) == 0)
                if len(t) == d:
                    vis_faces.add(t)
                    new_simplices.append(t | {j})
            for a in hidden:
                t = frozenset(i for i in s if _idot(a, self.pts[i]) == 0)
                if len(t) == d:
                    hid_faces.add(t)
        hid_ridges = {t - {i} for t in hid_faces for i in t}
        horizon = {t - {i} for t in vis_faces for i in t} & hid_ridges
        self.used.append(j)
        facets = list(hidden)
        known = set(facets)
        for tau in sorted(horizon, key=sorted):
            a = self._hyperplane(sorted(tau) + [j], self.eqs, self.used)
            a = self._canon(a)
            if a not in known:
                known.add(a)
                facets.append(a)
        self.facets = facets
        self.simplices.extend(new_simplices)

    def _lift(self, j):
        old_used = list(self.used)
        new_eqs = self._affine_eqs(old_used + [j])
        facets = [self._hyperplane(old_used, new_eqs, [j])]
        if self.dim == 0:
            facets.append(self._hyperplane([j], new_eqs, old_used))
        for a in self.facets:
            facets.append(self._hyperplane(self._tight(a) + [j], new_eqs, old_used))
        self.used.append(j)
        self.eqs = new_eqs
        self.dim += 1
        self.facets = [self._canon(a) for a in facets]
        self.simplices = [s | {j} for s in self.simplices]

    def _canon(self, a):
        return primitive_integer_row(canonical_facet(a, self.eqs))


def beneath_beyond(points: Sequence[Sequence]) -> BeneathBeyondResult:
    """Incremental hull of affine points with a placing triangulation.

    Points are placed in input order after removing duplicates.  A point
    beyond some facets is coned to the boundary simplices it sees; a point in
    the current hull is skipped.  Triangulation and vertex indices refer to
    the input rows.
    """
    if not points:
        raise ValueError("beneath_beyond needs at least one point")
    _check_width(points, what="points")
    if any(Fraction(p[0]) == 0 for p in points):
        raise UnsupportedInput("beneath_beyond accepts affine points only (leading 1); use double_description for rays")
    if any(Fraction(p[0]) < 0 for p in points):
        raise UnsupportedInput("negative homogenizing coordinate")
    uniq, orig = dedupe_points(points)
    placer = _Placer([primitive_integer_row(p) for p in uniq])
    for j in range(len(uniq)):
        placer.place(j)
    if len(uniq) < len(points):
        placer.generic = False

    eqs = canonical_affine_hull(placer.eqs)
    facets = tuple(canonical_facet(a, eqs) for a in placer.facets)
    # A placed point is a vertex iff the facets through it meet only in it.
    vertices = []
    if placer.dim == 0:
        vertices = [placer.used[0]]
    else:
        tight_sets = [set(placer._tight(primitive_integer_row(a))) for a in facets]
        for i in range(len(uniq)):
            common = set(range(len(uniq)))
            on_any = False
            for ts in tight_sets:
                if i in ts:
                    common &= ts
                    on_any = True
            if on_any and common == {i}:
                vertices.append(i)
    tri = tuple(tuple(sorted(orig[i] for i in s)) for s in placer.simplices)
    return BeneathBeyondResult(
        facets=facets,
        affine_hull=eqs,
        triangulation=tri,
        vertices=tuple(orig[i] for i in vertices),
        essentially_generic=placer.generic,
    )


def select_vertices(points: Sequence[Sequence], facets: Sequence[Sequence], affine_hull=()):
    """Indices of the rows of ``points`` that are vertices (or extreme rays).

    A generator is extreme iff the facets containing it meet, among the
    given rows, only in it (after removing duplicates).
    """
    uniq, orig = dedupe_points(points)
    tight = [
        {i for i, p in enumerate(uniq) if sum(Fraction(a) * x for a, x in zip(f, p)) == 0}
        for f in facets
    ]
    out = []
    for i in range(len(uniq)):
        common = set(range(len(uniq)))
        for ts in tight:
            if i in ts:
                common &= ts
        if not facets:
            if len(uniq) == 1:
                out.append(orig[i])
            continue
        if common == {i}:
            out.append(orig[i])
    return tuple(out)
