"""Exact two-phase simplex method with Bland's pivoting rule.

The feasible region is ``{x : a0 + a.x >= 0 for each inequality,
e0 + e.x = 0 for each equation}`` and objectives are rows ``(c0, c1, ...)``
evaluating to ``c0 + c.x``.  Free variables are split as ``x = u - w``; the
optimal basic solution is afterwards walked along the optimal face until it
is a vertex of the original polyhedron.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .props import Graph
from .rational import DimensionMismatch, kernel_basis

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LPResult:
    status: str
    optimal_value: Fraction | None = None
    optimal_vertex: tuple | None = None  # homogeneous, leading 1
    pivots: int = 0


def _rows(m):
    return [tuple(Fraction(x) for x in r) for r in m]


class _Tableau:
    def __init__(self, a, b):
        self.rows = [list(r) + [bi] for r, bi in zip(a, b)]
        self.basis: list[int] = []
        self.pivots = 0

    def pivot(self, r, c):
        row = self.rows[r]
        p = row[c]
        if p != 1:
            row = [x / p for x in row]
            self.rows[r] = row
        for i, other in enumerate(self.rows):
            if i != r and other[c] != 0:
                f = other[c]
                self.rows[i] = [x - f * y for x, y in zip(other, row)]
        self.basis[r] = c
        self.pivots += 1

    def run(self, cost, allowed):
        """Minimize ``cost`` over columns in ``allowed``; Bland's rule.

        Returns ``True`` when optimal, ``False`` when unbounded.
        """
        allowed = sorted(allowed)
        while True:
            enter = None
            for j in allowed:
                rc = cost[j] - sum(cost[bi] * row[j] for bi, row in zip(self.basis, self.rows) if cost[bi])
                if rc < 0:
                    enter = j
                    break
            if enter is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                if row[enter] > 0:
                    ratio = row[-1] / row[enter]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], enter)


def _value(obj, x):
    return obj[0] + sum(c * xi for c, xi in zip(obj[1:], x))


def _purify(x, ineqs, eqs, obj):
    """Move an optimal point inside the optimal face until it is a vertex."""
    d = len(x)
    while True:
        active = [a[1:] for a in ineqs if _value(a, x) == 0] + [e[1:] for e in eqs]
        ker = kernel_basis(active, cols=d) if active else kernel_basis([], cols=d)
        if not ker:
            return x
        y = ker[0]
        if sum(c * yi for c, yi in zip(obj[1:], y)) != 0:
            raise ArithmeticError("optimal face is not orthogonal to the objective")
        moved = False
        for direction in (y, tuple(-t for t in y)):
            step = None
            for a in ineqs:
                slope = sum(ai * yi for ai, yi in zip(a[1:], direction))
                if slope < 0:
                    t = _value(a, x) / -slope
                    if step is None or t < step:
                        step = t
            if step is not None:
                x = tuple(xi + step * yi for xi, yi in zip(x, direction))
                moved = True
                break
        if not moved:
            return x  # a line lies in the optimal face: no vertex exists


def simplex_optimize(
    inequalities: Sequence[Sequence],
    equations: Sequence[Sequence],
    objective: Sequence,
    sense: str = "max",
) -> LPResult:
    """Optimize a linear objective over an H-polyhedron with exact arithmetic."""
    if sense not in ("max", "min"):
        raise ValueError("sense must be 'max' or 'min'")
    ineqs, eqs = _rows(inequalities), _rows(equations)
    obj = tuple(Fraction(c) for c in objective)
    d = len(obj) - 1
    if any(len(r) != d + 1 for r in ineqs + eqs):
        raise DimensionMismatch("objective and constraint lengths differ")

    # standard form columns: u (d), w (d), slacks (len(ineqs)), artificials (m)
    m = len(ineqs) + len(eqs)
    ns = len(ineqs)
    n_struct = 2 * d + ns
    a_rows, b = [], []
    for i, r in enumerate(ineqs):
        row = list(r[1:]) + [-v for v in r[1:]] + [Fraction(-1) if k == i else Fraction(0) for k in range(ns)]
        a_rows.append(row)
        b.append(-r[0])
    for r in eqs:
        a_rows.append(list(r[1:]) + [-v for v in r[1:]] + [Fraction(0)] * ns)
        b.append(-r[0])
    for i in range(m):
        if b[i] < 0:
            a_rows[i] = [-v for v in a_rows[i]]
            b[i] = -b[i]
        a_rows[i] += [Fraction(int(k == i)) for k in range(m)]

    tab = _Tableau(a_rows, b)
    tab.basis = [n_struct + i for i in range(m)]
    phase1 = [Fraction(0)] * n_struct + [Fraction(1)] * m
    tab.run(phase1, range(n_struct + m))
    if sum(row[-1] for row, bi in zip(tab.rows, tab.basis) if bi >= n_struct) != 0:
        return LPResult(INFEASIBLE, pivots=tab.pivots)

    # drive zero-level artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= n_struct:
            col = next((j for j in range(n_struct) if tab.rows[i][j] != 0), None)
            if col is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, col)
        i += 1

    sign = Fraction(-1) if sense == "max" else Fraction(1)
    cost = [sign * c for c in obj[1:]] + [-sign * c for c in obj[1:]] + [Fraction(0)] * (ns + m)
    if not tab.run(cost, range(n_struct)):
        return LPResult(UNBOUNDED, pivots=tab.pivots)

    sol = [Fraction(0)] * (n_struct + m)
    for bi, row in zip(tab.basis, tab.rows):
        sol[bi] = row[-1]
    x = tuple(sol[j] - sol[d + j] for j in range(d))
    x = _purify(x, ineqs, eqs, obj)
    return LPResult(OPTIMAL, _value(obj, x), (Fraction(1),) + x, tab.pivots)


@dataclass(frozen=True)
class OrientedGraph:
    arcs: tuple  # (u, v) with obj(v) > obj(u)
    flat: tuple  # edges with equal endpoint values
    values: tuple

    def sinks(self):
        out = {u for u, _ in self.arcs}
        return [v for v in range(len(self.values)) if v not in out]

    def sources(self):
        inn = {v for _, v in self.arcs}
        return [v for v in range(len(self.values)) if v not in inn]


def orient_graph(graph: Graph, vertices: Sequence[Sequence], objective: Sequence) -> OrientedGraph:
    """Direct every edge towards the larger objective value."""
    obj = tuple(Fraction(c) for c in objective)
    vals = []
    for v in vertices:
        v = tuple(Fraction(x) for x in v)
        vals.append(sum(c * x for c, x in zip(obj, v)) / v[0] if v[0] else sum(c * x for c, x in zip(obj[1:], v[1:])))
    arcs, flat = [], []
    for u, v in sorted(graph.edges):
        if vals[u] < vals[v]:
            arcs.append((u, v))
        elif vals[v] < vals[u]:
            arcs.append((v, u))
        else:
            flat.append((u, v))
    return OrientedGraph(tuple(arcs), tuple(flat), tuple(vals))
