"""The default polytope rule base.

Weights: native algorithms 10, cheap derivations 1.  Registration order is
the tie-breaker, so it is part of the behaviour (``BOUNDED`` comes before the
triangulating hull).
"""
from __future__ import annotations

from . import hull, iso, lp, props
from .engine import RuleBase, RuleFailure
from .topaz import SimplicialComplex, euler_characteristic

NATIVE = 10
CHEAP = 1


def _equations(p):
    return p.get("EQUATIONS") or p.get("AFFINE_HULL") or ()


def _halfspaces(p):
    return p["INEQUALITIES"] if "INEQUALITIES" in p else p["FACETS"]


def _generators(p):
    return p["VERTICES"] if "VERTICES" in p else p["POINTS"]


def _has_rays(p):
    return any(g[0] == 0 for g in _generators(p)) or bool(p.get("LINEALITY_SPACE"))


def _lp(p, sense):
    res = lp.simplex_optimize(_halfspaces(p), _equations(p), p["LINEAR_OBJECTIVE"][0], sense)
    if res.status != lp.OPTIMAL:
        raise RuleFailure(f"linear program is {res.status}")
    return res.optimal_value, (res.optimal_vertex,)


def _lp_enum(p, sense):
    obj = p["LINEAR_OBJECTIVE"][0]
    verts = p["VERTICES"]
    if not verts:
        raise RuleFailure("linear program is infeasible")
    vals = [sum(c * x for c, x in zip(obj, v)) for v in verts]
    best = max(vals) if sense == "max" else min(vals)
    return best, (verts[vals.index(best)],)


def _n_known(p):
    # incidences alone cannot count vertices lying on no facet (a point)
    if "N_VERTICES" in p:
        return p["N_VERTICES"]
    return len(p["VERTICES"]) if "VERTICES" in p else None


def default_rules() -> RuleBase:
    rb = RuleBase()

    @rb.rule(["VERTICES", "POINTED", "FEASIBLE", "LINEALITY_SPACE"], ["FACETS | INEQUALITIES"],
             NATIVE, "cdd.convex_hull.dual")
    def _dual(p):
        verts, rays, lin, pointed, feasible = hull.generators_from_inequalities(_halfspaces(p), _equations(p))
        return {"VERTICES": tuple(verts) + tuple(rays), "POINTED": pointed, "FEASIBLE": feasible,
                "LINEALITY_SPACE": tuple(lin)}

    @rb.rule(["BOUNDED"], ["VERTICES | POINTS"], CHEAP)
    def _bounded(p):
        return {"BOUNDED": not _has_rays(p)}

    @rb.rule(["FACETS", "AFFINE_HULL", "VERTICES_IN_FACETS", "DUAL_GRAPH", "TRIANGULATION", "ESSENTIALLY_GENERIC"],
             ["VERTICES"], NATIVE, "beneath_beyond.convex_hull.primal, default.triangulation")
    def _beneath_beyond(p):
        verts = p["VERTICES"]
        res = hull.beneath_beyond(verts)
        if len(res.vertices) != len(verts):
            raise RuleFailure("VERTICES contains points that are not vertices")
        inc = props.incidences(verts, res.facets)
        _, dual = props.graphs(inc)
        return {"FACETS": res.facets, "AFFINE_HULL": res.affine_hull, "VERTICES_IN_FACETS": inc,
                "DUAL_GRAPH": dual, "TRIANGULATION": res.triangulation,
                "ESSENTIALLY_GENERIC": res.essentially_generic}

    @rb.rule(["VOLUME"], ["VERTICES", "TRIANGULATION"], CHEAP, "default.volume", [("BOUNDED", True)])
    def _volume(p):
        return {"VOLUME": props.volume(p["VERTICES"], p["TRIANGULATION"])}

    @rb.rule(["FACETS", "AFFINE_HULL"], ["VERTICES | POINTS"], NATIVE, "cdd.convex_hull.primal")
    def _primal(p):
        gens = _generators(p)
        if not gens:
            raise RuleFailure("no generators")
        facets, eqs = hull.facets_from_generators(gens)
        return {"FACETS": facets, "AFFINE_HULL": eqs}

    @rb.rule(["VERTICES"], ["POINTS", "FACETS"], CHEAP, "default.vertices")
    def _vertices(p):
        pts = p["POINTS"]
        idx = hull.select_vertices(pts, p["FACETS"])
        out = []
        for i in idx:
            g = pts[i]
            out.append(tuple(x / g[0] for x in g) if g[0] else g)
        return {"VERTICES": tuple(out)}

    @rb.rule(["VERTICES_IN_FACETS"], ["VERTICES", "FACETS"], CHEAP, "default.incidences")
    def _incidences(p):
        return {"VERTICES_IN_FACETS": props.incidences(p["VERTICES"], p["FACETS"])}

    @rb.rule(["DIM", "AFFINE_HULL"], ["VERTICES | POINTS"], CHEAP, "default.affine_hull")
    def _affine(p):
        d, eqs = props.affine_hull_dim(_generators(p))
        return {"DIM": d, "AFFINE_HULL": eqs}

    @rb.rule(["N_FACETS"], ["FACETS | VERTICES_IN_FACETS"], CHEAP)
    def _n_facets(p):
        return {"N_FACETS": len(p["FACETS"] if "FACETS" in p else p["VERTICES_IN_FACETS"])}

    @rb.rule(["N_VERTICES"], ["VERTICES | VERTICES_IN_FACETS"], CHEAP)
    def _n_vertices(p):
        if "VERTICES" in p:
            return {"N_VERTICES": len(p["VERTICES"])}
        return {"N_VERTICES": props.vertex_count(p["VERTICES_IN_FACETS"])}

    @rb.rule(["FACE_LATTICE"], ["VERTICES_IN_FACETS"], NATIVE, "default.face_lattice")
    def _face_lattice(p):
        return {"FACE_LATTICE": props.face_lattice(p["VERTICES_IN_FACETS"], _n_known(p))}

    @rb.rule(["DIM"], ["FACE_LATTICE"], CHEAP, "default.combinatorial_dim")
    def _comb_dim(p):
        return {"DIM": p["FACE_LATTICE"].dim}

    @rb.rule(["F_VECTOR"], ["FACE_LATTICE"], CHEAP)
    def _f_vector(p):
        lat = p["FACE_LATTICE"]
        return {"F_VECTOR": props.f_vector(lat)}

    @rb.rule(["H_VECTOR"], ["F_VECTOR", "DIM"], CHEAP, preconditions=[("SIMPLICIAL", True)])
    def _h_vector(p):
        return {"H_VECTOR": props.h_from_f(p["F_VECTOR"], p["DIM"])}

    @rb.rule(["SIMPLE"], ["VERTICES_IN_FACETS", "DIM"], CHEAP)
    def _simple(p):
        return {"SIMPLE": props.is_simple(p["VERTICES_IN_FACETS"], p["DIM"])}

    @rb.rule(["SIMPLICIAL"], ["VERTICES_IN_FACETS", "DIM"], CHEAP)
    def _simplicial(p):
        return {"SIMPLICIAL": props.is_simplicial(p["VERTICES_IN_FACETS"], p["DIM"])}

    @rb.rule(["CUBICAL"], ["FACE_LATTICE"], NATIVE)
    def _cubical(p):
        return {"CUBICAL": props.is_cubical(p["FACE_LATTICE"])}

    @rb.rule(["GRAPH", "DUAL_GRAPH"], ["FACE_LATTICE", "VERTICES_IN_FACETS"], CHEAP, "default.graph")
    def _graph(p):
        vg, dg = props.graphs(p["VERTICES_IN_FACETS"], lattice=p["FACE_LATTICE"])
        return {"GRAPH": vg, "DUAL_GRAPH": dg}

    @rb.rule(["CONNECTED", "DIAMETER"], ["GRAPH"], CHEAP)
    def _graph_props(p):
        g = p["GRAPH"]
        diam = g.diameter()
        if diam is None:
            raise RuleFailure("graph is disconnected; diameter undefined")
        return {"CONNECTED": g.is_connected(), "DIAMETER": diam}

    @rb.rule(["MAXIMAL_VALUE", "MAXIMAL_VERTEX"], ["LINEAR_OBJECTIVE", "INEQUALITIES | FACETS"], NATIVE, "cdd.lp.max")
    def _lp_max(p):
        v, x = _lp(p, "max")
        return {"MAXIMAL_VALUE": v, "MAXIMAL_VERTEX": x}

    @rb.rule(["MINIMAL_VALUE", "MINIMAL_VERTEX"], ["LINEAR_OBJECTIVE", "INEQUALITIES | FACETS"], NATIVE, "cdd.lp.min")
    def _lp_min(p):
        v, x = _lp(p, "min")
        return {"MINIMAL_VALUE": v, "MINIMAL_VERTEX": x}

    @rb.rule(["MAXIMAL_VALUE", "MAXIMAL_VERTEX"], ["LINEAR_OBJECTIVE", "VERTICES"], CHEAP, "default.lp.max",
             [("BOUNDED", True)])
    def _enum_max(p):
        v, x = _lp_enum(p, "max")
        return {"MAXIMAL_VALUE": v, "MAXIMAL_VERTEX": x}

    @rb.rule(["MINIMAL_VALUE", "MINIMAL_VERTEX"], ["LINEAR_OBJECTIVE", "VERTICES"], CHEAP, "default.lp.min",
             [("BOUNDED", True)])
    def _enum_min(p):
        v, x = _lp_enum(p, "min")
        return {"MINIMAL_VALUE": v, "MINIMAL_VERTEX": x}

    @rb.rule(["GALE_TRANSFORM"], ["VERTICES"], CHEAP, "default.gale", [("BOUNDED", True)])
    def _gale(p):
        return {"GALE_TRANSFORM": props.gale_transform(p["VERTICES"])}

    @rb.rule(["N_AUTOMORPHISMS"], ["VERTICES_IN_FACETS"], NATIVE, "default.automorphisms")
    def _aut(p):
        return {"N_AUTOMORPHISMS": iso.automorphism_order(p["VERTICES_IN_FACETS"], _n_known(p))}

    @rb.rule(["FEASIBLE"], ["VERTICES | POINTS"], CHEAP)
    def _feasible(p):
        return {"FEASIBLE": bool(_generators(p))}

    @rb.rule(["EULER_CHARACTERISTIC"], ["FACETS_OF_COMPLEX"], CHEAP)
    def _euler(p):
        return {"EULER_CHARACTERISTIC": euler_characteristic(SimplicialComplex(p["FACETS_OF_COMPLEX"]))}

    return rb

