"""Finite simplicial complexes and integral (co)homology."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex stored by its facets (inclusion-maximal faces)."""

    facets: tuple
    n_vertices: int

    def __init__(self, facets: Iterable[Iterable[int]], n_vertices: int | None = None):
        fs = tuple(sorted({tuple(sorted(set(f))) for f in facets}))
        sets = [frozenset(f) for f in fs]
        for a in sets:
            for b in sets:
                if a < b:
                    raise ValueError(f"face {sorted(a)} is contained in facet {sorted(b)}")
        used = max((max(f) for f in fs if f), default=-1) + 1
        if n_vertices is not None and n_vertices < used:
            raise ValueError("vertex index out of range")
        object.__setattr__(self, "facets", fs)
        object.__setattr__(self, "n_vertices", used if n_vertices is None else n_vertices)

    @classmethod
    def from_faces(cls, faces: Iterable[Iterable[int]], n_vertices: int | None = None):
        """Build from any generating faces, keeping only the maximal ones."""
        sets = sorted({frozenset(f) for f in faces}, key=len, reverse=True)
        keep = []
        for s in sets:
            if not any(s <= t for t in keep):
                keep.append(s)
        return cls(keep, n_vertices)

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def faces(self, k: int) -> list[tuple]:
        """All k-dimensional faces, ascending tuples in lexicographic order."""
        out = set()
        for f in self.facets:
            if len(f) >= k + 1:
                out.update(combinations(f, k + 1))
        return sorted(out)

    def cone(self, apex: int | None = None) -> "SimplicialComplex":
        a = self.n_vertices if apex is None else apex
        return SimplicialComplex([f + (a,) for f in self.facets], max(self.n_vertices, a + 1))


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple = ()

    def __str__(self):
        parts = []
        if self.betti:
            parts.append(f"Z^{self.betti}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def boundary_matrix(k: int, complex: SimplicialComplex) -> list[list[int]]:
    """Matrix of the k-th boundary map, rows (k-1)-faces, columns k-faces.

    ``d[v0..vk] = sum_i (-1)^i [v0..^vi..vk]`` with ascending vertex order.
    For ``k = 0`` the matrix has no rows.
    """
    if not 0 <= k <= complex.dim:
        raise ValueError(f"boundary index {k} out of range 0..{complex.dim}")
    cols = complex.faces(k)
    if k == 0:
        return []
    rows = complex.faces(k - 1)
    index = {f: i for i, f in enumerate(rows)}
    m = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        for i in range(len(s)):
            m[index[s[:i] + s[i + 1:]]][j] = -1 if i % 2 else 1
    return m


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Nonzero invariant factors ``d1 | d2 | ...`` and the rank.

    The pivot is always an entry of least absolute value; rows and columns
    are reduced by integer quotients until the pivot divides its row, its
    column and the remaining block.
    """
    a = [[int(x) for x in row] for row in m]
    nr = len(a)
    nc = len(a[0]) if a else 0
    diag = []
    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (best is None or abs(a[i][j]) < best[0]):
                    best = (abs(a[i][j]), i, j)
        if best is None:
            break
        _, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            smaller = None
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t] and smaller is None:
                        smaller = ("r", i)
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j] and smaller is None:
                        smaller = ("c", j)
            if smaller is not None:
                kind, idx = smaller
                if kind == "r":
                    a[t], a[idx] = a[idx], a[t]
                else:
                    for row in a:
                        row[t], row[idx] = row[idx], row[t]
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        diag.append(abs(a[t][t]))
        t += 1
    return diag, len(diag)


def _ranks_and_torsion(mats):
    out = []
    for m in mats:
        if not m or not m[0]:
            out.append((0, []))
        else:
            d, r = smith_normal_form(m)
            out.append((r, [x for x in d if x > 1]))
    return out


def homology(complex: SimplicialComplex, reduced: bool = False) -> list[HomologyGroup]:
    """Integral homology groups ``H_0 .. H_dim``."""
    dim = complex.dim
    if dim < 0:
        return []
    counts = [len(complex.faces(k)) for k in range(dim + 1)]
    snf = _ranks_and_torsion([boundary_matrix(k, complex) for k in range(dim + 1)])
    groups = []
    for k in range(dim + 1):
        rk_k = snf[k][0]
        rk_next, tors = snf[k + 1] if k < dim else (0, [])
        betti = counts[k] - rk_k - rk_next
        if reduced and k == 0:
            betti -= 1
        groups.append(HomologyGroup(betti, tuple(tors)))
    return groups


def cohomology(complex: SimplicialComplex, reduced: bool = False) -> list[HomologyGroup]:
    """Integral cohomology via the transposed boundary maps."""
    dim = complex.dim
    if dim < 0:
        return []
    counts = [len(complex.faces(k)) for k in range(dim + 1)]
    cob = []
    for k in range(dim + 1):
        # coboundary C^k -> C^{k+1} is the transpose of the (k+1)-th boundary
        if k < dim:
            b = boundary_matrix(k + 1, complex)
            cob.append([list(col) for col in zip(*b)] if b else [])
        else:
            cob.append([])
    snf = _ranks_and_torsion(cob)
    groups = []
    for k in range(dim + 1):
        rk_out = snf[k][0]
        rk_in, tors = snf[k - 1] if k > 0 else (0, [])
        betti = counts[k] - rk_out - rk_in
        if reduced and k == 0:
            betti -= 1
        groups.append(HomologyGroup(betti, tuple(tors)))
    return groups


def euler_characteristic(complex: SimplicialComplex) -> int:
    return sum((-1) ** k * len(complex.faces(k)) for k in range(complex.dim + 1))


def format_homology(groups: Sequence[HomologyGroup], prefix: str = "H") -> list[str]:
    return [f"{prefix}{k}: {g}" for k, g in enumerate(groups)]
