"""Brute-force reference implementations used only by the tests.

They rely on sympy for linear algebra so they share no code with the
library under test.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import sympy


def _frac(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def primitive(row):
    """Positive scaling of a rational row to coprime integers."""
    row = [Fraction(x) for x in row]
    den = 1
    for x in row:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    return tuple(Fraction(v // g) for v in ints) if g else tuple(Fraction(0) for _ in ints)


def subset_facets(points):
    """Facets of conv(points) by enumerating (dim)-subsets of points.

    ``points`` are distinct homogeneous rows with leading 1.  Returns a dict
    mapping each facet's tight index set to one defining row in the linear
    span of the points.
    """
    p = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in points])
    r = p.rank()
    if r <= 1:
        return {}
    basis = p.rowspace()
    bt = sympy.Matrix.hstack(*[b.T for b in basis])  # columns span the row space
    out = {}
    for s in itertools.combinations(range(len(points)), r - 1):
        sub = p.extract(list(s), list(range(p.cols)))
        if sub.rank() != r - 1:
            continue
        ns = (sub * bt).nullspace()
        if len(ns) != 1:
            continue
        a = bt * ns[0]
        vals = list(p * a)
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            a, vals = -a, [-v for v in vals]
        else:
            continue
        tight = frozenset(i for i, v in enumerate(vals) if v == 0)
        out.setdefault(tight, primitive(_frac(x) for x in a))
    return out


def subset_vertices_of_points(points):
    """Indices of the extreme points, via the oracle facets."""
    facets = subset_facets(points)
    if not facets:
        return {0} if len(points) == 1 else set()
    out = set()
    for i in range(len(points)):
        common = set(range(len(points)))
        for t in facets:
            if i in t:
                common &= t
        if common == {i}:
            out.add(i)
    return out


def subset_vertices_of_inequalities(ineqs):
    """Vertices of ``{x : b + a.x >= 0}`` by solving all d-subsets of rows."""
    d = len(ineqs[0]) - 1
    rows = [[sympy.Rational(x.numerator, x.denominator) for x in r] for r in ineqs]
    out = set()
    for s in itertools.combinations(range(len(rows)), d):
        a = sympy.Matrix([rows[i][1:] for i in s])
        b = sympy.Matrix([-rows[i][0] for i in s])
        if a.rank() != d:
            continue
        x = a.LUsolve(b)
        if all(r[0] + sum(c * xi for c, xi in zip(r[1:], x)) >= 0 for r in rows):
            out.add((Fraction(1),) + tuple(_frac(v) for v in x))
    return out


def subset_rays_of_inequalities(ineqs):
    """Extreme rays of the recession cone ``{y : a.y >= 0}`` as primitive rows."""
    d = len(ineqs[0]) - 1
    lin = [[sympy.Rational(x.numerator, x.denominator) for x in r[1:]] for r in ineqs]
    out = set()
    for s in itertools.combinations(range(len(lin)), d - 1):
        a = sympy.Matrix([lin[i] for i in s]) if s else sympy.zeros(0, d)
        if s and a.rank() != d - 1:
            continue
        ns = a.nullspace() if s else [sympy.eye(d)[:, 0]] if d == 1 else []
        if len(ns) != 1:
            continue
        for y in (ns[0], -ns[0]):
            if all(sum(c * yi for c, yi in zip(r, y)) >= 0 for r in lin):
                out.add(primitive((0,) + tuple(_frac(v) for v in y)))
    return out


def rank_by_minors(m):
    """Largest k with a nonzero k x k minor."""
    rows, cols = len(m), len(m[0]) if m else 0
    for k in range(min(rows, cols), 0, -1):
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                if laplace_det([[m[i][j] for j in ci] for i in ri]) != 0:
                    return k
    return 0


def laplace_det(m):
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(m[0][0])
    return sum(
        (-1) ** j * Fraction(m[0][j]) * laplace_det([row[:j] + row[j + 1:] for row in m[1:]])
        for j in range(n)
    )


def minor_gcd_invariants(m):
    """Invariant factors from gcds of k x k minors: d_k = g_k / g_{k-1}."""
    rows, cols = len(m), len(m[0]) if m else 0
    g = [1]
    for k in range(1, min(rows, cols) + 1):
        acc = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                acc = math.gcd(acc, abs(int(laplace_det([[m[i][j] for j in ci] for i in ri]))))
        if acc == 0:
            break
        g.append(acc)
    return [g[k] // g[k - 1] for k in range(1, len(g))]


def brute_automorphisms(inc, n_vertices):
    """Vertex permutations mapping the facet set onto itself."""
    facets = {frozenset(f) for f in inc}
    return sum(
        1
        for perm in itertools.permutations(range(n_vertices))
        if {frozenset(perm[v] for v in f) for f in facets} == facets
    )


def brute_face_count(inc, n_vertices):
    """All intersections of facet subsets (the empty subset gives the polytope)."""
    facets = [frozenset(f) for f in inc]
    faces = {frozenset(range(n_vertices))}
    for k in range(1, len(facets) + 1):
        for sub in itertools.combinations(facets, k):
            faces.add(frozenset.intersection(*sub))
    faces.add(frozenset())
    return len(faces)


def in_circle_empty(points, cell):
    """No point lies strictly inside the circumsphere of ``cell``."""
    d = len(points[0])
    p0 = points[cell[0]]
    a = sympy.Matrix([[2 * (sympy.Rational(str(x)) - sympy.Rational(str(y))) for x, y in zip(points[i], p0)]
                      for i in cell[1:]])
    b = sympy.Matrix([sum(sympy.Rational(str(x)) ** 2 for x in points[i]) - sum(sympy.Rational(str(x)) ** 2 for x in p0)
                      for i in cell[1:]])
    sol, params = a.gauss_jordan_solve(b)
    c = sol.subs({t: 0 for t in params})
    r2 = sum((sympy.Rational(str(x)) - c[j]) ** 2 for j, x in enumerate(p0))
    for i, q in enumerate(points):
        if i in cell:
            continue
        if sum((sympy.Rational(str(x)) - c[j]) ** 2 for j, x in enumerate(q)) < r2:
            return False
    assert len(c) == d
    return True


def random_point_instance(rng, d=None, n=None):
    d = d or rng.randint(1, 3)
    n = n or rng.randint(1, 8)
    return [(Fraction(1),) + tuple(Fraction(rng.randint(-3, 3)) for _ in range(d)) for _ in range(n)]


def random_inequality_instance(rng, d=None, n=None):
    d = d or rng.randint(1, 3)
    n = n or rng.randint(1, 8)
    return [tuple(Fraction(rng.randint(-3, 3)) for _ in range(d + 1)) for _ in range(n)]


def distinct(points):
    seen, out = set(), []
    for p in points:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def check_points_instance(points):
    """Compare both hull algorithms with the subset oracle; returns a list of problems."""
    from polykernel.hull import beneath_beyond, facets_from_generators, select_vertices

    pts = distinct(points)
    oracle = subset_facets(pts)
    overts = subset_vertices_of_points(pts)
    problems = []
    dd_facets, eqs = facets_from_generators(pts)
    bb = beneath_beyond(pts)

    def tight_sets(rows):
        return {frozenset(i for i, p in enumerate(pts) if sum(a * x for a, x in zip(f, p)) == 0) for f in rows}

    for name, rows in (("dd", dd_facets), ("bb", bb.facets)):
        if any(sum(a * x for a, x in zip(f, p)) < 0 for f in rows for p in pts):
            problems.append(f"{name}: facet violated")
        if tight_sets(rows) != set(oracle) or len(rows) != len(oracle):
            problems.append(f"{name}: facet tight sets differ")
        if not eqs and set(rows) != set(oracle.values()):
            problems.append(f"{name}: facet rows differ")
    if set(dd_facets) != set(bb.facets) or set(eqs) != set(bb.affine_hull):
        problems.append("dd and bb disagree")
    if set(bb.vertices) != overts:
        problems.append("bb vertices differ")
    if set(select_vertices(pts, dd_facets)) != overts:
        problems.append("dd vertices differ")
    return problems


def check_inequality_instance(ineqs):
    from polykernel.hull import generators_from_inequalities

    verts, rays, lin, pointed, feasible = generators_from_inequalities(ineqs)
    problems = []
    ov = subset_vertices_of_inequalities(ineqs)
    if lin:
        if ov:
            problems.append("oracle found vertices of a non-pointed polyhedron")
        return problems
    if set(verts) != ov:
        problems.append("vertices differ")
    if feasible != bool(ov):
        problems.append("feasibility differs")
    if feasible and {primitive(r) for r in rays} != subset_rays_of_inequalities(ineqs):
        problems.append("rays differ")
    return problems


def random_rule_base(rng, n_props=None, n_rules=None):
    """A random rule base over integer-valued properties P0.. with a start set and targets."""
    from polykernel.engine import Rule, RuleBase

    n_props = n_props or rng.randint(3, 12)
    n_rules = n_rules or rng.randint(1, 10)
    names = [f"P{i}" for i in range(n_props)]
    schema = {n: "integer" for n in names}
    rb = RuleBase(schema)
    for j in range(n_rules):
        outs = rng.sample(names, rng.randint(1, min(2, n_props)))
        rest = [n for n in names if n not in outs]
        groups = []
        for _ in range(rng.randint(0, 2)):
            if rest:
                groups.append(tuple(rng.sample(rest, rng.randint(1, min(2, len(rest))))))
        body = (lambda outs: lambda p: {o: 1 for o in outs})(outs)
        rb.register_rule(Rule(tuple(outs), tuple(groups), body, rng.randint(1, 9), f"r{j}"))
    start = set(rng.sample(names, rng.randint(1, min(3, n_props))))
    targets = rng.sample([n for n in names if n not in start] or names, 1)
    return rb, start, targets


def exhaustive_min_weight(rules, start, targets):
    """Minimum total weight over all rule subsets whose closure yields the targets."""
    best = None
    for k in range(len(rules) + 1):
        for sub in itertools.combinations(rules, k):
            have = set(start)
            grew = True
            while grew:
                grew = False
                for r in sub:
                    if r.applicable(have) and not set(r.outputs) <= have:
                        have.update(r.outputs)
                        grew = True
            if set(targets) <= have:
                w = sum(r.weight for r in sub)
                best = w if best is None else min(best, w)
    return best
