"""The keyword-section ``.poly`` text format.

A file is a sequence of sections separated by blank lines.  Each section is
an uppercase keyword line followed by data lines whose layout depends on the
property's kind:

========== ==========================================================
kind       data lines
========== ==========================================================
matrix     whitespace separated rationals, one row per line
incidence  ``{i j k}`` per line, ascending indices
rational   a single rational token
integer    a single integer token
boolean    ``1`` or ``0``
vector     one line of integers
graph      ``{neighbours}`` per node, one line per node
lattice    ``{vertex set} rank`` per face
========== ==========================================================

Sections with unknown keywords are kept verbatim.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .props import FaceLattice, Graph
from .rational import format_rational, parse_rational

KINDS = ("matrix", "incidence", "triangulation", "rational", "integer", "boolean", "vector", "graph", "lattice")

SCHEMA: dict[str, str] = {
    "POINTS": "matrix",
    "VERTICES": "matrix",
    "INEQUALITIES": "matrix",
    "EQUATIONS": "matrix",
    "FACETS": "matrix",
    "AFFINE_HULL": "matrix",
    "LINEALITY_SPACE": "matrix",
    "LINEAR_OBJECTIVE": "matrix",
    "MAXIMAL_VERTEX": "matrix",
    "MINIMAL_VERTEX": "matrix",
    "GALE_TRANSFORM": "matrix",
    "VERTICES_IN_FACETS": "incidence",
    "FACETS_OF_COMPLEX": "incidence",
    "EDGES": "incidence",
    "TRIANGULATION": "triangulation",
    "VOLUME": "rational",
    "MAXIMAL_VALUE": "rational",
    "MINIMAL_VALUE": "rational",
    "DIM": "integer",
    "N_FACETS": "integer",
    "N_VERTICES": "integer",
    "DIAMETER": "integer",
    "N_AUTOMORPHISMS": "integer",
    "EULER_CHARACTERISTIC": "integer",
    "SIMPLE": "boolean",
    "SIMPLICIAL": "boolean",
    "CUBICAL": "boolean",
    "BOUNDED": "boolean",
    "FEASIBLE": "boolean",
    "POINTED": "boolean",
    "ESSENTIALLY_GENERIC": "boolean",
    "CONNECTED": "boolean",
    "F_VECTOR": "vector",
    "H_VECTOR": "vector",
    "GRAPH": "graph",
    "DUAL_GRAPH": "graph",
    "FACE_LATTICE": "lattice",
}

KEYWORD = re.compile(r"^[A-Z][A-Z0-9_]*$")
_SET = re.compile(r"^\{([^{}]*)\}(.*)$")


class ParseError(ValueError):
    def __init__(self, msg, line=None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


class IntegrityError(ValueError):
    """A value does not fit the kind registered for its property."""


def register_property(name: str, kind: str, schema: dict | None = None):
    schema = SCHEMA if schema is None else schema
    if not KEYWORD.match(name):
        raise ValueError(f"property names are uppercase tokens: {name!r}")
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if name in schema and schema[name] != kind:
        raise ValueError(f"{name} already registered as {schema[name]}")
    schema[name] = kind


@dataclass
class Section:
    keyword: str
    lines: list  # raw data lines (without trailing newline)
    lineno: int  # line number of the keyword

    @property
    def text(self) -> str:
        return "\n".join([self.keyword] + self.lines)


def split_sections(text: str) -> list[Section]:
    sections: list[Section] = []
    cur = None
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line.strip():
            cur = None
            continue
        if cur is None:
            kw = line.strip()
            if not KEYWORD.match(kw):
                raise ParseError(f"expected a section keyword, got {line.strip()!r}", no)
            cur = Section(kw, [], no)
            sections.append(cur)
        else:
            cur.lines.append(line)
    return sections


def _parse_set(line, no):
    m = _SET.match(line.strip())
    if not m:
        raise ParseError(f"expected '{{i j ...}}', got {line.strip()!r}", no)
    try:
        idx = tuple(int(t) for t in m.group(1).split())
    except ValueError:
        raise ParseError(f"non-integer index in {line.strip()!r}", no) from None
    return idx, m.group(2).strip()


def _single(sec: Section):
    if len(sec.lines) != 1 or len(sec.lines[0].split()) != 1:
        raise ParseError(f"{sec.keyword} expects a single token line", sec.lineno)
    return sec.lines[0].strip(), sec.lineno + 1


def parse_value(kind: str, sec: Section):
    """Decode the data lines of a section into a typed value."""
    if kind == "matrix":
        rows = []
        for off, line in enumerate(sec.lines, start=1):
            try:
                rows.append(tuple(parse_rational(t) for t in line.split()))
            except ValueError as e:
                raise ParseError(str(e), sec.lineno + off) from None
            if len(rows[-1]) != len(rows[0]):
                raise ParseError("matrix rows have different lengths", sec.lineno + off)
        return tuple(rows)
    if kind in ("incidence", "triangulation"):
        out = []
        for off, line in enumerate(sec.lines, start=1):
            idx, rest = _parse_set(line, sec.lineno + off)
            if rest:
                raise ParseError(f"trailing data {rest!r}", sec.lineno + off)
            out.append(idx)
        return tuple(out)
    if kind == "graph":
        adj = []
        for off, line in enumerate(sec.lines, start=1):
            idx, rest = _parse_set(line, sec.lineno + off)
            if rest:
                raise ParseError(f"trailing data {rest!r}", sec.lineno + off)
            adj.append(idx)
        pairs = [(u, v) for u, nb in enumerate(adj) for v in nb]
        try:
            g = Graph.from_pairs(len(adj), pairs)
        except ValueError as e:
            raise ParseError(str(e), sec.lineno) from None
        if sorted(pairs) != sorted(p for e in g.edges for p in (e, e[::-1])):
            raise ParseError("graph adjacency is not symmetric", sec.lineno)
        return g
    if kind == "lattice":
        faces, ranks = [], []
        for off, line in enumerate(sec.lines, start=1):
            idx, rest = _parse_set(line, sec.lineno + off)
            try:
                ranks.append(int(rest))
            except ValueError:
                raise ParseError(f"expected a face rank after the set, got {rest!r}", sec.lineno + off) from None
            faces.append(frozenset(idx))
        return lattice_from_faces(faces, ranks)
    if kind == "vector":
        if len(sec.lines) > 1:
            raise ParseError(f"{sec.keyword} expects one line", sec.lineno)
        try:
            return tuple(int(t) for t in (sec.lines[0].split() if sec.lines else ()))
        except ValueError:
            raise ParseError("expected integers", sec.lineno + 1) from None
    tok, no = _single(sec)
    if kind == "rational":
        try:
            return parse_rational(tok)
        except ValueError as e:
            raise ParseError(str(e), no) from None
    if kind == "integer":
        try:
            return int(tok)
        except ValueError:
            raise ParseError(f"expected an integer, got {tok!r}", no) from None
    if kind == "boolean":
        if tok not in ("0", "1"):
            raise ParseError(f"boolean values are 1 or 0, got {tok!r}", no)
        return tok == "1"
    raise ValueError(f"unknown kind {kind!r}")


def lattice_from_faces(faces, ranks) -> FaceLattice:
    if not faces:
        raise ValueError("empty lattice")
    by_rank: dict[int, list[int]] = {}
    for i, r in enumerate(ranks):
        by_rank.setdefault(r, []).append(i)
    hasse = []
    for i, r in enumerate(ranks):
        for j in by_rank.get(r + 1, ()):
            if faces[i] < faces[j]:
                hasse.append((i, j))
    top = max(range(len(ranks)), key=lambda i: (ranks[i], -i))
    bottom = min(range(len(ranks)), key=lambda i: (ranks[i], i))
    return FaceLattice(tuple(faces), tuple(ranks), tuple(hasse), top, bottom)


def _fmt_set(s):
    return "{" + " ".join(str(i) for i in sorted(s)) + "}"


def format_value(kind: str, value) -> list[str]:
    """Data lines for a typed value."""
    if kind == "matrix":
        return [" ".join(format_rational(x) for x in row) for row in value]
    if kind in ("incidence", "triangulation"):
        return [_fmt_set(row) for row in value]
    if kind == "graph":
        return [_fmt_set(nb) for nb in value.adjacency()]
    if kind == "lattice":
        return [f"{_fmt_set(f)} {r}" for f, r in zip(value.faces, value.ranks)]
    if kind == "vector":
        return [" ".join(str(x) for x in value)]
    if kind == "rational":
        return [format_rational(value)]
    if kind == "integer":
        return [str(value)]
    if kind == "boolean":
        return ["1" if value else "0"]
    raise ValueError(f"unknown kind {kind!r}")


def check_kind(kind: str, value):
    """Raise :class:`IntegrityError` unless ``value`` is a valid ``kind`` value."""

    def fail(msg):
        raise IntegrityError(msg)

    if kind == "matrix":
        if not isinstance(value, tuple) or not all(isinstance(r, tuple) for r in value):
            fail("matrix must be a tuple of row tuples")
        if any(not isinstance(x, Fraction) for r in value for x in r):
            fail("matrix entries must be Fractions")
        if value and any(len(r) != len(value[0]) for r in value):
            fail("ragged matrix")
    elif kind in ("incidence", "triangulation"):
        if not isinstance(value, tuple):
            fail("incidence list must be a tuple")
        for row in value:
            if not isinstance(row, tuple) or any(type(i) is not int or i < 0 for i in row):
                fail("incidence rows are tuples of non-negative ints")
            if list(row) != sorted(set(row)):
                fail(f"incidence row {row} not strictly ascending")
        if kind == "incidence" and len(set(value)) != len(value):
            fail("duplicate incidence rows")
    elif kind == "rational":
        if not isinstance(value, Fraction):
            fail("expected a Fraction")
    elif kind == "integer":
        if type(value) is not int:
            fail("expected an int")
    elif kind == "boolean":
        if not isinstance(value, bool):
            fail("expected a bool")
    elif kind == "vector":
        if not isinstance(value, tuple) or any(type(x) is not int for x in value):
            fail("expected a tuple of ints")
    elif kind == "graph":
        if not isinstance(value, Graph):
            fail("expected a Graph")
        if any(not 0 <= u < v < value.n_nodes for u, v in value.edges):
            fail("graph edge out of range")
    elif kind == "lattice":
        if not isinstance(value, FaceLattice):
            fail("expected a FaceLattice")
    else:
        fail(f"unknown kind {kind!r}")
