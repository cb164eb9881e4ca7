"""Command-line front end.

``polykernel [-v|-vv] FILE PROP...`` requests properties; the first argument
may instead name a subcommand (cube, rand_sphere, wedge, check_iso, crust,
homology, export_graph).
"""
from __future__ import annotations

import argparse
import contextlib
import fcntl
import os
import sys

from . import iso
from .constructions import InvalidParameter, make_cube, rand_sphere, wedge
from .engine import PolytopeObject, SchemaError, Unsatisfiable
from .geom import DegenerateInput, crust
from .lp import orient_graph
from .polyfile import ParseError, format_value
from .rules import default_rules
from .topaz import SimplicialComplex, euler_characteristic, format_homology, homology

PROG = "polykernel"


class UsageError(Exception):
    pass


def _split_verbosity(argv):
    level, rest = 0, []
    for a in argv:
        if a == "-v":
            level += 1
        elif a == "-vv":
            level += 2
        else:
            rest.append(a)
    return min(level, 2), rest


@contextlib.contextmanager
def open_object(path, write=True):
    """Load ``path`` under an advisory lock; write back new properties on exit."""
    mode = "r+" if write else "r"
    try:
        fh = open(path, mode)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    with fh:
        fcntl.flock(fh, fcntl.LOCK_EX if write else fcntl.LOCK_SH)
        obj = PolytopeObject.from_text(fh.read(), name=str(path))
        try:
            yield obj
        finally:
            # committed results are valid even if a later step failed
            if write and obj.dirty:
                fh.seek(0)
                fh.truncate()
                fh.write(obj.to_text())
                obj.dirty.clear()


def _write_new(path, obj):
    with open(path, "w") as fh:
        fcntl.flock(fh, fcntl.LOCK_EX)
        fh.write(obj.to_text())


def _trace(msg):
    print(f"{PROG}: {msg}", file=sys.stderr)


def _request(obj, props, verbosity):
    return default_rules().request(obj, props, trace=_trace, verbosity=verbosity)


def cmd_request(args, verbosity):
    if len(args) < 2:
        raise UsageError(f"usage: {PROG} [-v|-vv] FILE PROPERTY...")
    path, props = args[0], args[1:]
    with open_object(path) as obj:
        _request(obj, props, verbosity)
        out = [obj.section_text(p) for p in props]
    sys.stdout.write("".join(b + "\n\n" for b in out))
    return 0


def cmd_cube(args, verbosity):
    p = argparse.ArgumentParser(prog=f"{PROG} cube")
    p.add_argument("out")
    p.add_argument("d", type=int)
    p.add_argument("zero_one", type=int, choices=(0, 1), nargs="?", default=0,
                   help="0 for 0/1 coordinates, 1 for +-1 coordinates")
    ns = _parse(p, args)
    _write_new(ns.out, make_cube(ns.d, zero_one=ns.zero_one == 0))
    return 0


def cmd_rand_sphere(args, verbosity):
    p = argparse.ArgumentParser(prog=f"{PROG} rand_sphere")
    p.add_argument("out")
    p.add_argument("d", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--seed", type=int, default=0)
    ns = _parse(p, args)
    _write_new(ns.out, rand_sphere(ns.d, ns.n, ns.seed))
    return 0


def cmd_wedge(args, verbosity):
    noc = "-noc" in args
    args = [a for a in args if a != "-noc"]
    p = argparse.ArgumentParser(prog=f"{PROG} wedge")
    p.add_argument("out")
    p.add_argument("input")
    p.add_argument("facet", type=int)
    ns = _parse(p, args)
    with open_object(ns.input) as obj:
        if noc:
            _request(obj, ["VERTICES_IN_FACETS"], verbosity)
        elif "FACETS" not in obj:
            _request(obj, ["FACETS"], verbosity)
        w = wedge(obj, ns.facet, combinatorial_only=noc)
    _write_new(ns.out, w)
    return 0


def cmd_check_iso(args, verbosity):
    p = argparse.ArgumentParser(prog=f"{PROG} check_iso")
    p.add_argument("first")
    p.add_argument("second")
    ns = _parse(p, args)
    incs = []
    for path in (ns.first, ns.second):
        with open_object(path) as obj:
            _request(obj, ["VERTICES_IN_FACETS"], verbosity)
            n = obj.get("N_VERTICES") or (len(obj["VERTICES"]) if "VERTICES" in obj else None)
            incs.append((obj["VERTICES_IN_FACETS"], n))
    stats = []
    cert = iso.find_isomorphism(incs[0][0], incs[1][0], incs[0][1], incs[1][1], stats=stats)
    if verbosity:
        for path, s in zip((ns.first, ns.second), stats):
            _trace(f"{os.path.basename(path)}: {s.leaves} leaves, {s.nodes} nodes, "
                   f"max level {s.max_level}, {s.refinements} refinements")
        if cert is not None:
            _trace("vertex map " + " ".join(f"{i}->{j}" for i, j in enumerate(cert.vertex_map)))
            _trace("facet map " + " ".join(f"{i}->{j}" for i, j in enumerate(cert.facet_map)))
    print(f"check_iso\n{1 if cert is not None else 0}\n")
    return 0


def cmd_crust(args, verbosity):
    p = argparse.ArgumentParser(prog=f"{PROG} crust")
    p.add_argument("file")
    p.add_argument("--svg")
    ns = _parse(p, args)
    with open_object(ns.file) as obj:
        if "POINTS" not in obj:
            raise UsageError("crust reads a POINTS section")
        pts = obj["POINTS"]
        if pts and len(pts[0]) == 3:
            if any(r[0] == 0 for r in pts):
                raise UsageError("crust points must not be rays")
            pts = tuple((r[1] / r[0], r[2] / r[0]) for r in pts)
        edges = tuple(crust(pts))
        if "EDGES" not in obj:
            obj.set("EDGES", edges)
        text = "\n".join(["EDGES"] + format_value("incidence", edges))
    if ns.svg:
        from .plotting import crust_to_svg

        crust_to_svg(ns.svg, pts, edges)
    print(text + "\n")
    return 0


def cmd_homology(args, verbosity):
    p = argparse.ArgumentParser(prog=f"{PROG} homology")
    p.add_argument("file")
    p.add_argument("--reduced", action="store_true")
    ns = _parse(p, args)
    with open_object(ns.file, write=False) as obj:
        if "FACETS_OF_COMPLEX" not in obj:
            raise UsageError("homology reads a FACETS_OF_COMPLEX section")
        c = SimplicialComplex(obj["FACETS_OF_COMPLEX"])
    for line in format_homology(homology(c, reduced=ns.reduced)):
        print(line)
    print(f"EULER_CHARACTERISTIC: {euler_characteristic(c)}")
    return 0


def cmd_export_graph(args, verbosity):
    from .plotting import graph_to_dot, graph_to_svg

    p = argparse.ArgumentParser(prog=f"{PROG} export_graph")
    p.add_argument("file")
    p.add_argument("--directed", action="store_true", help="orient edges by LINEAR_OBJECTIVE")
    p.add_argument("--format", choices=("dot", "svg"), default="dot")
    p.add_argument("-o", "--output")
    ns = _parse(p, args)
    if ns.format == "svg" and not ns.output:
        raise UsageError("svg export needs -o PATH")
    with open_object(ns.file) as obj:
        if ns.directed and "LINEAR_OBJECTIVE" not in obj:
            raise UsageError("directed export needs LINEAR_OBJECTIVE")
        _request(obj, ["GRAPH", "VERTICES"], verbosity)
        graph, levels = obj["GRAPH"], None
        if ns.directed:
            graph = orient_graph(graph, obj["VERTICES"], obj["LINEAR_OBJECTIVE"][0])
            levels = graph.values
    if ns.format == "dot":
        text = graph_to_dot(graph, levels)
        if ns.output:
            with open(ns.output, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        graph_to_svg(ns.output, graph, levels, seed_text=os.path.basename(ns.file))
    return 0


COMMANDS = {
    "cube": cmd_cube,
    "rand_sphere": cmd_rand_sphere,
    "wedge": cmd_wedge,
    "check_iso": cmd_check_iso,
    "crust": cmd_crust,
    "homology": cmd_homology,
    "export_graph": cmd_export_graph,
}


def _parse(parser, args):
    try:
        return parser.parse_args(args)
    except SystemExit as e:
        if e.code:
            raise UsageError(parser.format_usage().strip()) from None
        raise


def main(argv=None) -> int:
    verbosity, args = _split_verbosity(sys.argv[1:] if argv is None else argv)
    if not args or args[0] in ("-h", "--help"):
        print(f"usage: {PROG} [-v|-vv] FILE PROPERTY...\n       {PROG} {{{','.join(COMMANDS)}}} ...")
        return 0 if args else 2
    handler = COMMANDS.get(args[0])
    try:
        if handler is None:
            return cmd_request(args, verbosity)
        return handler(args[1:], verbosity)
    except UsageError as e:
        print(f"{PROG}: {e}", file=sys.stderr)
        return 2
    except ParseError as e:
        print(f"{PROG}: parse error: {e}", file=sys.stderr)
        return 1
    except (Unsatisfiable, SchemaError, InvalidParameter, DegenerateInput, ValueError) as e:
        print(f"{PROG}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
