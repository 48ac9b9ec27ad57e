"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s`.  All comparisons are exact;
there are no numeric tolerances anywhere.
"""

import functools
import random
from pathlib import Path

from latk import pipeline, series
from latk.cones import InputSystem, dualize, preprocess
from latk.inputfile import parse_input
from latk.intlin import dot, primitive, vec_sub
from latk.monoid import class_group, global_reduce, minimal_module_generators
from latk.report import format_report
from latk.series import HilbertSeries, expand, hsop_degrees, hsop_heights, quasipolynomial, renumerate, standard_denominator
from latk.simplex_eval import local_candidates, parallelotope_points, stanley_components
from latk.triangulate import bottom_triangulation, lex_triangulation, roughness

from conftest import random_graded_cone
from oracles import (
    cone_forms,
    cone_points_in_box,
    cone_points_up_to_degree,
    frac_det,
    generates,
    heights_oracle,
    in_cone,
    irreducibles_up_to_degree,
)
from test_triangulation import in_half_open

INPUTS = Path(__file__).parent.parent / "inputs"


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"ACCEPTANCE {number} ({title}): FAIL")
                raise
            print(f"ACCEPTANCE {number} ({title}): PASS")

        return run

    return wrap


@criterion(1, "nonpointed halfplane")
def test_criterion_1_halfplane():
    system = parse_input((INPUTS / "halfplane.in").read_text())
    rep = pipeline.run(system, pipeline.RunConfig())
    assert rep.hilbert_basis == ((0, 1),)
    assert rep.hilbert_degrees == (1,)
    assert rep.extreme_rays == ((0, 1),)
    assert rep.max_subspace in (((1, -2),), ((-1, 2),))
    text = format_report(rep)
    assert (
        "1 Hilbert basis elements of degree 1:\n0 1\n\n"
        "0 further Hilbert basis elements of higher degree:\n\n"
        "1 extreme rays:\n0 1\n\n"
        "1 basis elements of maximal subspace:\n1 -2\n"
    ) in text


@criterion(2, "Fig. 3 polyhedron")
def test_criterion_2_polyhedron():
    system = parse_input((INPUTS / "polyhedron.in").read_text())
    rep = pipeline.run(system, pipeline.RunConfig())
    assert rep.module_generators == ((-1, 0, 1), (0, 1, 1))
    assert rep.recession_basis == ((1, 0, 0),)
    assert rep.series is not None
    assert rep.series.numerator == (1, 1)
    assert rep.series.denominator == ((1, 1),)
    assert rep.series.shift == -1
    assert rep.module_rank == 2
    # both rank methods, exercised directly
    from latk import inhom as inhom_mod
    from latk.cones import pointed_quotient

    hom = inhom_mod.homogenize(system)
    cone = preprocess(hom.system)
    level = tuple(dot(hom.level_form, row) for row in cone.embedding)
    module_work = [cone.from_ambient(v) for v in rep.module_generators]
    rec_work = [cone.from_ambient(v) for v in rep.recession_basis]
    group = inhom_mod.recession_group_basis(rec_work, cone.dim)
    assert inhom_mod.module_rank_residues(module_work, group) == 2
    assert inhom_mod.module_rank_polytope(cone, level, group) == 2


@criterion(3, "simplicial cone presentations and Fig. 5 Hilbert basis")
def test_criterion_3_simplicial():
    system = parse_input((INPUTS / "simplicial.in").read_text())
    goals = frozenset({"hilbert-basis", "hilbert-series", "hsop", "class-group"})
    rep = pipeline.run(system, pipeline.RunConfig(goals=goals))
    assert rep.series.numerator == (1, -1, 1)
    assert rep.series.denominator == ((1, 1), (3, 1))
    assert rep.hsop.numerator == (1, 0, 1, 0, 1)
    assert rep.hsop.denominator == ((3, 2),)
    assert rep.class_group.free_rank == 0 and rep.class_group.divisors == (3,)
    # SNF-derived oracle for the class group: index of the standard map image
    forms = preprocess(parse_input("amb_space 2\ncone 2\n1 2\n2 1\n")).support_forms
    assert abs(int(frac_det(forms))) == 3
    # Hilbert basis of the Fig. 5 cone: outside-G elements exactly (1,1),(1,2)
    fig5 = pipeline.run(
        parse_input((INPUTS / "fig5_module.in").read_text()),
        pipeline.RunConfig(goals=frozenset({"hilbert-basis"})),
    )
    assert set(fig5.hilbert_basis) == {(2, 1), (1, 3), (1, 1), (1, 2)}
    assert set(fig5.hilbert_basis) - {(2, 1), (1, 3)} == {(1, 1), (1, 2)}


@criterion(4, "cone over the unit square")
def test_criterion_4_square_cone():
    system = parse_input((INPUTS / "square_cone.in").read_text())
    goals = frozenset({"hilbert-basis", "hilbert-series", "hsop", "class-group"})
    rep = pipeline.run(system, pipeline.RunConfig(goals=goals))
    assert rep.hsop.heights == (1, 1, 2, 3)
    assert rep.hsop.degrees == (1, 6, 12)
    assert rep.hsop.numerator == (1, 0, 1, 1, 2, 0, 2, 1, 2, 0, 2, 1, 1, 0, 1)
    assert rep.series.numerator == (1, 0, 0, 1, 1, -1, 1, 1, 0, 0, 1)
    assert rep.series.denominator == ((1, 1), (2, 1), (12, 1))
    assert rep.class_group.free_rank == 1 and rep.class_group.divisors == ()


@criterion(5, "Fig. 5 module generators")
def test_criterion_5_module_generators():
    para = parallelotope_points([(2, 1), (1, 3)])
    assert para.points == ((0, 0), (1, 1), (1, 2), (2, 2), (2, 3))
    dd = dualize([(2, 1), (1, 3)], 2)
    mg = minimal_module_generators(para.points, [(2, 1), (1, 3)], dd.support_forms)
    assert set(mg) == {(0, 0), (1, 1), (1, 2), (2, 2), (2, 3)}
    # brute-force verification of the minimality criterion
    forms = cone_forms([(2, 1), (1, 3)], 2)
    for y in para.points:
        for x in ((2, 1), (1, 3)):
            assert not in_cone(forms, vec_sub(y, x))
    # pipeline agrees
    rep = pipeline.run(
        parse_input((INPUTS / "fig5_module.in").read_text()),
        pipeline.RunConfig(goals=frozenset({"module-generators"})),
    )
    assert set(rep.module_generators) == {(0, 0), (1, 1), (1, 2), (2, 2), (2, 3)}
    assert len(rep.module_generators) == 5


def _half_open_tester(rays, excluded):
    """Integer membership test for a half-open simplicial cone: barycentric
    signs via the adjugate (inverse times determinant)."""
    from latk.simplex_eval import _fraction_inverse

    d = len(rays)
    det = int(frac_det(rays))
    inv = _fraction_inverse(rays)
    sign = 1 if det > 0 else -1
    adj = [[int(inv[i][j] * det) * sign for j in range(d)] for i in range(d)]

    def test(p):
        for k in range(d):
            v = sum(p[i] * adj[i][k] for i in range(d))
            if k in excluded:
                if v <= 0:
                    return False
            elif v < 0:
                return False
        return True

    return test


@criterion(6, "property suite, 200 random instances")
def test_criterion_6_property_suite():
    rng = random.Random(20160901)
    for trial in range(200):
        d = 2 if trial % 4 else 3
        if trial % 8 == 5:
            # generators on one affine hyperplane (equality case for (c))
            m = rng.randint(1, 2)
            k = rng.randint(3, 5)
            xs = rng.sample(range(0, 6), k=min(k, 6))
            gens = [(t, t + m) for t in xs]
            grading = (1, 1)
        else:
            gens, grading = random_graded_cone(rng, d, max_rays=6, max_entry=7)
        gens = sorted(set(gens), key=lambda g: (dot(grading, g), g))
        d = len(gens[0])
        cc = preprocess(InputSystem(dim=d, cone_rays=tuple(gens), grading=grading))
        assert cc.pointed and cc.dim == d

        lex = lex_triangulation(gens, d)
        bottom = bottom_triangulation(gens, d)

        # (c) detsum comparison
        assert bottom.detsum <= lex.detsum
        if trial % 8 == 5:
            assert bottom.detsum == lex.detsum

        # evaluate once
        parts = []
        cands = []
        for s in lex.simplices:
            rays = [gens[i] for i in s.ray_indices]
            para = parallelotope_points(rays, s.excluded_facets)
            cands.extend(local_candidates(para))
            parts.extend(series.component_series(c) for c in stanley_components(para, grading))
        hs = series.accumulate(parts)

        # (a) coefficients match brute force to degree 20, three presentations
        counts = {}
        for p in cone_points_up_to_degree(gens, d, grading, 20):
            k = sum(w * x for w, x in zip(grading, p))
            counts[k] = counts.get(k, 0) + 1
        base = expand(hs, 20)
        std_num, std_exps = standard_denominator(hs)
        alt_std = expand(HilbertSeries(std_num, std_exps, 0), 20)
        ext = sorted(
            {primitive(cc.generators[i]) for i in cc.extreme_rays},
            key=lambda r: (dot(grading, r), r),
        )
        incidence = [frozenset(j for j, r in enumerate(ext) if dot(f, r) == 0) for f in cc.support_forms]
        heights = hsop_heights(ext, incidence, d)
        hdegs = hsop_degrees(heights, tuple(dot(grading, r) for r in ext))
        hnum = renumerate(hs, hdegs)
        alt_hsop = expand(HilbertSeries(hnum, hdegs, 0), 20)
        for k in range(21):
            want = counts.get(k, 0)
            assert base[k] == want and alt_std[k] == want and alt_hsop[k] == want

        # (b) Hilbert basis: pairwise irreducible, generates box points
        hb = global_reduce(cands, cc.support_forms, grading)
        oracle_forms = cone_forms(gens, d)
        for x in hb.elements:
            for y in hb.elements:
                if x != y:
                    assert not in_cone(oracle_forms, vec_sub(y, x))
        box = cone_points_in_box(gens, d, 6)
        assert generates(box, list(hb.elements), oracle_forms)

        # (d) half-open partition of box points
        for tri in (lex, bottom):
            testers = [
                _half_open_tester([gens[i] for i in s.ray_indices], s.excluded_facets)
                for s in tri.simplices
            ]
            for p in box:
                assert sum(1 for t in testers if t(p)) == 1

        # (e) heights match the exhaustive face-lattice oracle
        assert heights == heights_oracle(cc.support_forms, ext, d)

        # (f) hsop numerator nonnegative
        assert all(c >= 0 for c in hnum)

        # (g) quasipolynomial matches the expansion in the guaranteed range;
        # every residue class is checked right at the validity boundary
        q = quasipolynomial(hs)
        from math import gcd

        ell = 1
        for r in ext:
            degr = dot(grading, r)
            ell = ell * degr // gcd(ell, degr)
        assert ell % q.period == 0
        # degree of the numerator over (1 - t^ell)^d, without computing it
        s_deg = len(hs.numerator) - 1 + d * ell - sum(hs.denominator)
        lo = max(s_deg - d * ell + 1, 0)
        hi = lo + 2 * q.period + min(3 * q.period, 40)
        coeffs = expand(hs, hi)
        for residue in range(q.period):
            k0 = lo + ((residue - lo) % q.period)
            for k in (k0, k0 + q.period):
                assert q.value(k) == coeffs[k]
        for k in range(lo, min(lo + 3 * q.period, lo + 40) + 1):
            assert q.value(k) == coeffs[k]

        # (h) class group order equals the standard-map index when finite
        cg = class_group(cc.support_forms)
        s_count = len(cc.support_forms)
        if cg.free_rank == 0:
            assert s_count == d
            assert cg.order == abs(int(frac_det(cc.support_forms)))
        else:
            # the forms of a full-dimensional cone have rank d
            assert cg.free_rank == s_count - d


@criterion(7, "scaled bottom-decomposition benchmark")
def test_criterion_7_bottom_benchmark():
    rng = random.Random(20131201)
    grading = (1, 1)
    cases = []
    for _ in range(15):
        # non-coplanar family: a low-degree ray, a mid-degree generator
        # strictly above the chord, and a high-degree ray
        n = rng.randint(5, 12)
        x = rng.randint(1, n - 1)
        gens = [(0, 1), (x, x + 2), (n, n + 1)]
        cases.append((gens, False))
    for _ in range(5):
        # coplanar family: generators on the line y = x + 1
        top = rng.randint(5, 9)
        xs = sorted(rng.sample(range(0, top + 1), k=rng.randint(3, min(5, top))))
        if 0 not in xs:
            xs.insert(0, 0)
        if top not in xs:
            xs.append(top)
        gens = [(t, t + 1) for t in xs]
        cases.append((gens, True))
    assert len(cases) == 20
    for gens, coplanar in cases:
        degs = [dot(grading, g) for g in gens]
        assert roughness(degs) >= 10
        order = sorted(gens, key=lambda g: (dot(grading, g), g))
        lex = lex_triangulation(order, 2)
        bottom = bottom_triangulation(order, 2)
        assert bottom.detsum <= lex.detsum
        if coplanar:
            assert bottom.detsum == lex.detsum
        else:
            assert bottom.detsum < lex.detsum
