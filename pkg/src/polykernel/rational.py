"""Exact rational scalars, vectors and matrices.

Scalars are :class:`fractions.Fraction`, which already keeps every value in
lowest terms with a positive denominator.  Vectors are tuples of Fractions and
matrices are tuples of such row tuples, so every value is immutable and
hashable.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
QVector = tuple
QMatrix = tuple


class DimensionMismatch(ValueError):
    """Raised when matrix/vector shapes do not fit an operation."""


def parse_rational(token: str) -> Fraction:
    """Parse ``-5``, ``47/48`` and friends.  Decimal notation is rejected."""
    tok = token.strip()
    num, sep, den = tok.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational number: {token!r}") from None
    if sep and (d <= 0 or den.strip().startswith(("+", "-"))):
        raise ValueError(f"denominator must be a positive integer: {token!r}")
    return Fraction(n, d)


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def to_vector(entries: Iterable) -> tuple:
    return tuple(Fraction(e) for e in entries)


def to_matrix(rows: Iterable[Iterable]) -> tuple:
    m = tuple(to_vector(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise DimensionMismatch("ragged matrix rows")
    return m


def n_cols(m: Sequence[Sequence], default: int = 0) -> int:
    return len(m[0]) if m else default


def transpose(m: Sequence[Sequence], cols: int | None = None) -> tuple:
    if not m:
        return tuple(() for _ in range(cols or 0))
    return tuple(zip(*m))


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths differ: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def primitive_integer_row(row: Sequence) -> tuple:
    """Scale a rational row by a positive factor to coprime integers.

    The zero row is returned as zeros.  Direction (sign) is preserved.
    """
    fr = [Fraction(x) for x in row]
    lcm = 1
    for x in fr:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in fr]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


def canonical_equation(row: Sequence) -> tuple:
    """Primitive integer row whose first nonzero entry is positive.

    Only meaningful for equations, where the sign carries no information.
    """
    r = primitive_integer_row(row)
    for v in r:
        if v:
            return r if v > 0 else tuple(-x for x in r)
    return r


def gauss_reduce(m: Sequence[Sequence]) -> tuple[int, tuple, list[int]]:
    """Reduced row echelon form by exact elimination.

    Returns ``(rank, rref, pivot_columns)``; ``rref`` has the same shape as
    ``m`` with the zero rows at the bottom.  The pivot in each column is the
    first row (from the current position down) with a nonzero entry.
    """
    rows = [list(map(Fraction, r)) for r in m]
    if not rows:
        return 0, (), []
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DimensionMismatch("ragged matrix rows")
    pivots: list[int] = []
    r = 0
    for c in range(width):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return r, tuple(tuple(row) for row in rows), pivots


def rank(m: Sequence[Sequence]) -> int:
    return gauss_reduce(m)[0]


def kernel_basis(m: Sequence[Sequence], cols: int | None = None) -> tuple:
    """Basis of the right null space ``{x : m x = 0}`` as rows.

    ``cols`` gives the column count for a matrix without rows.
    """
    if not m:
        n = cols or 0
        return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    n = len(m[0])
    rk, rref, pivots = gauss_reduce(m)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rref[i][f]
        basis.append(tuple(v))
    return tuple(basis)


def determinant(m: Sequence[Sequence]) -> Fraction:
    rows = [list(map(Fraction, r)) for r in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("determinant of a non-square matrix")
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        piv = rows[c][c]
        det *= piv
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / piv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


def solve_unique(a: Sequence[Sequence], b: Sequence) -> tuple | None:
    """Solve ``a x = b``; ``None`` unless the solution exists and is unique."""
    aug = [tuple(r) + (bi,) for r, bi in zip(a, b)]
    n = len(a[0]) if a else 0
    rk, rref, pivots = gauss_reduce(aug)
    if n in pivots or rk != n:
        return None
    return tuple(rref[i][n] for i in range(n))
