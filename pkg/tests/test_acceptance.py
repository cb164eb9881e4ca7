"""End-to-end acceptance criteria.

Each test records one ``ACCEPTANCE n: PASS|FAIL`` line (printed immediately
and again in the terminal summary) before asserting, so a failing criterion
is reported rather than hidden.
"""
import contextlib
import math
import random
import time
from fractions import Fraction

import pytest

from fixture_data import (
    ACCEPTANCE_LINES,
    CUBE_POINTS,
    LINEAR_PROGRAM,
    RP2,
    SHARIR,
    SPHERE2,
    SQUARE_INCIDENCES,
    TORUS7,
    circle_points,
)
from oracles import (
    check_inequality_instance,
    check_points_instance,
    exhaustive_min_weight,
    random_inequality_instance,
    random_point_instance,
    random_rule_base,
)
from polykernel.cli import main
from polykernel.constructions import rand_sphere
from polykernel.engine import PolytopeObject, Rule, RuleBase, Unsatisfiable, load
from polykernel.geom import crust
from polykernel.iso import automorphism_order, find_isomorphism
from polykernel.polyfile import split_sections
from polykernel.rules import default_rules
from polykernel.topaz import HomologyGroup, SimplicialComplex, euler_characteristic, homology

Z = HomologyGroup(1)


@contextlib.contextmanager
def criterion(n, limit=None):
    """Time the block; record PASS only if it finished without error inside ``limit`` seconds."""
    t0 = time.perf_counter()
    status, detail = "FAIL", ""
    try:
        yield
        elapsed = time.perf_counter() - t0
        detail = f"{elapsed:.2f}s"
        if limit is not None and elapsed >= limit:
            detail += f" exceeds {limit}s"
            raise AssertionError(f"criterion {n} took {elapsed:.2f}s, limit {limit}s")
        status = "PASS"
    except Exception as e:
        detail = detail or type(e).__name__
        raise
    finally:
        line = f"ACCEPTANCE {n}: {status} ({detail})"
        ACCEPTANCE_LINES[n] = line
        print(line)


def cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def sections(out):
    return {s.keyword: s.lines for s in split_sections(out)}


def evaluate(row, point):
    return sum(a * x for a, x in zip(row, point))


def test_criterion_1_cube_session(capsys, tmp_path):
    path = tmp_path / "f.poly"
    with criterion(1, limit=1):
        assert cli(capsys, "cube", path, 3, 0)[0] == 0
        code, out, _ = cli(capsys, path, "N_FACETS", "SIMPLE")
        assert code == 0
        assert sections(out) == {"N_FACETS": ["6"], "SIMPLE": ["1"]}


def test_criterion_2_linear_program(capsys, write):
    path = write("lp.poly", LINEAR_PROGRAM)
    with criterion(2, limit=1):
        code, out, _ = cli(capsys, path, "MAXIMAL_VALUE", "MAXIMAL_VERTEX")
        assert code == 0
        got = sections(out)
        assert got["MAXIMAL_VALUE"] == ["5/2"]
        obj = load(path)
        assert obj["MAXIMAL_VALUE"] == Fraction(5, 2)
        (vertex,) = obj["MAXIMAL_VERTEX"]
        assert vertex[0] == 1
        assert all(evaluate(row, vertex) >= 0 for row in obj["INEQUALITIES"])
        assert evaluate(obj["LINEAR_OBJECTIVE"][0], vertex) == Fraction(5, 2)


def test_criterion_3_volume_two_routes(capsys, write):
    with criterion(3, limit=2):
        lp = write("lp.poly", LINEAR_PROGRAM)
        code, out, _ = cli(capsys, lp, "VOLUME")
        assert code == 0 and sections(out)["VOLUME"] == ["47/48"]
        verts = load(lp)["VERTICES"]
        text = "POINTS\n" + "".join(" ".join(str(x) for x in v) + "\n" for v in verts)
        pts = write("pts.poly", text)
        code, out, _ = cli(capsys, pts, "VOLUME")
        assert code == 0 and sections(out)["VOLUME"] == ["47/48"]
        assert load(pts)["VOLUME"] == load(lp)["VOLUME"] == Fraction(47, 48)


def test_criterion_4_square_and_wedge(capsys, write, tmp_path):
    with criterion(4):
        sq = write("square.poly", SQUARE_INCIDENCES)
        code, out, _ = cli(capsys, sq, "DIM")
        assert code == 0 and sections(out) == {"DIM": ["2"]}
        w = tmp_path / "w.poly"
        assert cli(capsys, "wedge", w, sq, 0, "-noc")[0] == 0
        code, out, _ = cli(capsys, w, "SIMPLE", "SIMPLICIAL")
        assert code == 0 and sections(out) == {"SIMPLE": ["1"], "SIMPLICIAL": ["0"]}


def test_criterion_5_isomorphism(capsys, write, tmp_path):
    with criterion(5, limit=5):
        sharir = write("sharir.poly", SHARIR)
        cube = tmp_path / "cube.poly"
        cli(capsys, "cube", cube, 3, 0)
        code, out, _ = cli(capsys, "check_iso", sharir, cube)
        assert code == 0 and out == "check_iso\n1\n\n"

        rb = default_rules()
        a = rb.request(load(sharir), ["VERTICES_IN_FACETS"])["VERTICES_IN_FACETS"]
        b = rb.request(load(cube), ["VERTICES_IN_FACETS"])["VERTICES_IN_FACETS"]
        cert = find_isomorphism(a, b)
        assert cert is not None
        # independent check: vertex map is a bijection carrying every facet onto its image facet
        assert sorted(cert.vertex_map) == list(range(8))
        assert sorted(cert.facet_map) == list(range(len(b)))
        for i, f in enumerate(a):
            assert {cert.vertex_map[v] for v in f} == set(b[cert.facet_map[i]])

        assert automorphism_order(b) == 48
        tet = write("simplex.poly", "POINTS\n1 0 0 0\n1 1 0 0\n1 0 1 0\n1 0 0 1\n")
        code, out, _ = cli(capsys, "check_iso", cube, tet)
        assert code == 0 and out == "check_iso\n0\n\n"


def test_criterion_6_cached_volume(capsys, write):
    path = write("lp.poly", LINEAR_PROGRAM)
    with criterion(6):
        code, first, err = cli(capsys, "-vv", path, "VOLUME")
        assert code == 0 and "applying rule" in err
        stored = path.read_bytes()
        assert load(path)["VOLUME"] == Fraction(47, 48)
        code, second, err = cli(capsys, "-vv", path, "VOLUME")
        assert code == 0
        assert not [line for line in err.splitlines() if "applying rule" in line]
        assert second == first and sections(second)["VOLUME"] == ["47/48"]
        assert path.read_bytes() == stored


def test_criterion_7_hull_oracle():
    rng = random.Random(20240607)
    disagreements = []
    with criterion(7, limit=60):
        for k in range(200):
            if k % 2 == 0:
                inst = random_point_instance(rng)
                problems = check_points_instance(inst)
            else:
                inst = random_inequality_instance(rng)
                problems = check_inequality_instance(inst)
            if problems:
                disagreements.append((inst, problems))
        assert disagreements == []


def test_criterion_8_random_sphere():
    with criterion(8):
        for seed in range(20):
            obj = rand_sphere(3, 20, seed)
            got = default_rules().request(obj, ["SIMPLICIAL", "F_VECTOR"])
            f0, f1, f2 = got["F_VECTOR"]
            assert got["SIMPLICIAL"] is True, seed
            assert f0 - f1 + f2 == 2 and f1 == 3 * f0 - 6, (seed, got["F_VECTOR"])


def test_criterion_9_homology():
    with criterion(9, limit=5):
        fixtures = {
            "sphere": (SPHERE2, [Z, HomologyGroup(0), Z]),
            "rp2": (RP2, [Z, HomologyGroup(0, (2,)), HomologyGroup(0)]),
            "torus": (TORUS7, [Z, HomologyGroup(2), Z]),
        }
        for name, (facets, want) in fixtures.items():
            c = SimplicialComplex(facets)
            h = homology(c)
            assert h == want, name
            assert euler_characteristic(c) == sum((-1) ** k * g.betti for k, g in enumerate(h)), name


def test_criterion_10_crust():
    with criterion(10, limit=2):
        pts = circle_points(12)
        assert all(x * x + y * y == 1 for x, y in pts)
        angles = [math.atan2(y, x) % (2 * math.pi) for x, y in pts]
        assert angles == sorted(angles)
        edges = set(crust(pts))
        assert edges == {tuple(sorted((k, (k + 1) % 12))) for k in range(12)}
        square = [(0, 0), (1, 0), (1, 1), (0, 1)]
        assert set(crust(square)) == {(0, 1), (1, 2), (2, 3), (0, 3)}


def _with_failing(rb, label):
    """Copy of ``rb`` where rule ``label`` commits one output then fails validation."""
    out = RuleBase(rb.schema)
    for r in rb.rules:
        if r.label == label:
            outs = r.outputs
            body = (lambda outs: lambda p: {o: (999 if i == 0 and len(outs) > 1 else "bad")
                                            for i, o in enumerate(outs)})(outs)
            r = Rule(r.outputs, r.inputs, body, r.weight, r.label)
        out.register_rule(r)
    return out


def test_criterion_11_scheduler():
    rng = random.Random(7)
    with criterion(11):
        checked_recovery = checked_failure = 0
        for _ in range(50):
            rb, start, targets = random_rule_base(rng)
            best = exhaustive_min_weight(rb.rules, start, targets)
            if best is None:
                with pytest.raises(Unsatisfiable):
                    rb.schedule(start, targets)
                continue
            chain = rb.schedule(start, targets)
            assert chain.weight == best
            if not len(chain):
                continue
            victim = rng.choice(list(chain)).label
            broken = _with_failing(rb, victim)
            alternative = exhaustive_min_weight([r for r in rb.rules if r.label != victim], start, targets)
            obj = PolytopeObject("r", {n: 0 for n in start}, schema=rb.schema)
            if alternative is None:
                with pytest.raises(Unsatisfiable):
                    broken.request(obj, targets)
                checked_failure += 1
            else:
                assert set(broken.request(obj, targets)) == set(targets)
                checked_recovery += 1
            values = obj.snapshot().values()
            assert 999 not in values and "bad" not in values
        assert checked_recovery and checked_failure

        # a hull rule that crashes is routed around on a real polytope
        rb = default_rules()
        rb.register_rule(Rule(("FACETS", "AFFINE_HULL"), ("VERTICES | POINTS",),
                              lambda p: 1 / 0, 1, "crashing.hull"))
        obj = PolytopeObject.from_text(CUBE_POINTS)
        assert rb.request(obj, ["N_FACETS"]) == {"N_FACETS": 6}
