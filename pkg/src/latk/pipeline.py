"""Pipeline orchestration: preprocessing, the nonpointed quotient restart,
triangulation, parallel simplex evaluation, reduction and report assembly."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import cones, inhom as inhom_mod, intlin, series as series_mod, simplex_eval, triangulate
from .errors import EmptyLattice, InputError, NonPositiveDegree, NotGraded, NotPositive
from .inputfile import write_input
from .intlin import Matrix, Vector, dot, primitive
from .monoid import ClassGroup, class_group, global_reduce, minimal_module_generators
from .series import HilbertSeries, Quasipolynomial

ALL_GOALS = frozenset(
    {"hilbert-basis", "hilbert-series", "hsop", "class-group", "module-generators", "triangulation"}
)
DEFAULT_GOALS = frozenset({"hilbert-basis", "hilbert-series", "class-group"})


@dataclass(frozen=True)
class RunConfig:
    goals: frozenset[str] = DEFAULT_GOALS
    bottom: bool = False
    verbose: bool = False
    threads: int = 1
    input_path: str = "-"
    output_path: Optional[str] = None
    compute_rank: bool = True  # disabled for nested lattice-point counts

    def __post_init__(self):
        unknown = self.goals - ALL_GOALS
        if unknown:
            raise InputError(f"unknown goals: {sorted(unknown)}")
        if self.threads < 1:
            raise InputError("thread count must be positive")


@dataclass(frozen=True)
class SeriesBlock:
    numerator: tuple[int, ...]
    denominator: tuple[tuple[int, int], ...]  # (exponent, multiplicity), ascending
    shift: int
    show_shift: bool


@dataclass(frozen=True)
class HsopBlock:
    heights: Vector
    degrees: Vector
    numerator: tuple[int, ...]
    denominator: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class TriangulationBlock:
    generators: Matrix  # ambient representatives, in triangulation order
    simplices: tuple[tuple[tuple[int, ...], int, tuple[int, ...]], ...]  # (1-based rays, det, excluded)
    detsum: int


@dataclass
class Report:
    input_echo: str
    goals: tuple[str, ...]
    ambient_dim: int
    working_dim: int
    pointed: bool
    mode: str
    graded: bool
    grading_denominator: int = 1
    empty: bool = False
    empty_reason: str = ""
    hilbert_basis: Optional[Matrix] = None
    hilbert_degrees: Optional[Vector] = None
    extreme_rays: Optional[Matrix] = None
    max_subspace: Matrix = ()
    module_generators: Optional[Matrix] = None
    recession_basis: Optional[Matrix] = None
    module_rank: Optional[int] = None
    series: Optional[SeriesBlock] = None
    hsop: Optional[HsopBlock] = None
    quasipolynomial: Optional[Quasipolynomial] = None
    class_group: Optional[ClassGroup] = None
    triangulation: Optional[TriangulationBlock] = None
    raw_series: Optional[HilbertSeries] = None  # accumulated form, for library use


def _den_pairs(exponents: Sequence[int]) -> tuple[tuple[int, int], ...]:
    pairs: list[tuple[int, int]] = []
    for g in sorted(exponents):
        if pairs and pairs[-1][0] == g:
            pairs[-1] = (g, pairs[-1][1] + 1)
        else:
            pairs.append((g, 1))
    return tuple(pairs)


def _implicit_grading(cone: cones.ComputedCone) -> Optional[Vector]:
    """Unique integral form taking value 1 on all extreme rays, if it exists."""
    reps = [primitive(cone.generators[i]) for i in cone.extreme_rays]
    if not reps or intlin.rank(reps) < cone.dim:
        return None
    sol = intlin.lin_solve(reps, [1] * len(reps))
    if sol is None or any(c.denominator != 1 for c in sol):
        return None
    return tuple(int(c) for c in sol)


def run(system: cones.InputSystem, config: RunConfig) -> Report:
    """Execute the primal pipeline and assemble a deterministic report."""
    goals = set(config.goals)
    if "hsop" in goals:
        goals.add("hilbert-series")
    inhomogeneous = not system.homogeneous
    report = Report(
        input_echo=write_input(system),
        goals=tuple(sorted(config.goals)),
        ambient_dim=system.dim,
        working_dim=0,
        pointed=True,
        mode="inhomogeneous" if inhomogeneous else "homogeneous",
        graded=False,
    )

    if inhomogeneous:
        try:
            hom = inhom_mod.homogenize(system)
        except EmptyLattice as exc:
            report.empty = True
            report.empty_reason = str(exc)
            report.module_generators = ()
            report.recession_basis = ()
            report.module_rank = 0
            return report
        work_system = hom.system
        level_ambient: Optional[Vector] = hom.level_form
    else:
        work_system = system
        level_ambient = None
    report.ambient_dim = work_system.dim

    module_mode = "module-generators" in goals and not inhomogeneous
    if module_mode and (system.inequalities or system.equations or system.congruences or not system.cone_rays):
        raise InputError("module-generators requires pure generator input")

    cone0 = cones.preprocess(work_system)
    report.working_dim = cone0.dim
    report.pointed = cone0.pointed

    # the bold approach: on a nonpointed cone, record the maximal subspace,
    # pass to the pointed quotient and restart the evaluation there
    max_subspace_ambient: Matrix = ()
    cone = cone0
    if not cone0.pointed:
        if module_mode:
            raise NotPositive("module generators require a positive monoid")
        max_subspace_ambient = intlin.lattice_basis([cone0.to_ambient(u) for u in cone0.max_subspace])
        cone = cones.pointed_quotient(cone0)
    report.max_subspace = max_subspace_ambient

    def to_ambient_canon(y: Vector) -> Vector:
        x = cone.to_ambient(y)
        if max_subspace_ambient:
            x = intlin.hnf_reduce(x, max_subspace_ambient)
        return x

    level_work: Optional[Vector] = None
    if level_ambient is not None:
        level_work = tuple(dot(level_ambient, row) for row in cone.embedding)

    grading_work: Optional[Vector] = None
    denom = 1
    if work_system.grading is not None:
        if any(dot(work_system.grading, u) != 0 for u in max_subspace_ambient):
            raise InputError("grading does not vanish on the maximal subspace")
        grading_work = tuple(dot(work_system.grading, row) for row in cone.embedding)
        g = intlin.vec_gcd(grading_work)
        if g == 0 and cone.dim > 0:
            raise InputError("grading vanishes on the cone")
        if g > 1:
            grading_work = tuple(x // g for x in grading_work)
            denom = g
    elif not inhomogeneous:
        grading_work = _implicit_grading(cone)
    graded = grading_work is not None
    report.graded = graded
    report.grading_denominator = denom

    extreme_reps = sorted(
        {primitive(cone.generators[i]) for i in cone.extreme_rays},
        key=lambda r: ((dot(grading_work, r) if graded else 0), r),
    )
    if graded:
        for r in extreme_reps:
            lev = dot(level_work, r) if level_work is not None else 0
            if lev == 0 and dot(grading_work, r) <= 0:
                raise NonPositiveDegree("grading must be positive on the recession cone")

    if cone.dim == 0:
        return _finish_trivial(report, cone, goals, inhomogeneous, graded)

    gens = _order_generators(cone.generators, grading_work)
    use_bottom = config.bottom
    if graded and not use_bottom:
        degs = [dot(grading_work, g) for g in gens]
        if all(d > 0 for d in degs):
            use_bottom = triangulate.roughness(degs) >= triangulate.BOTTOM_ROUGHNESS_THRESHOLD
    if use_bottom:
        tri = triangulate.bottom_triangulation(gens, cone.dim)
    else:
        tri = triangulate.lex_triangulation(gens, cone.dim)

    want_hb = "hilbert-basis" in goals or inhomogeneous
    want_series = "hilbert-series" in goals and graded

    def evaluate(simp: triangulate.SimplicialCone):
        rays = [gens[i] for i in simp.ray_indices]
        para = simplex_eval.parallelotope_points(rays, simp.excluded_facets)
        candidates: Matrix = ()
        components: list[simplex_eval.StanleyComponent] = []
        module_points: Matrix = ()
        if want_hb:
            cands = simplex_eval.local_candidates(para)
            if level_work is not None:
                cands = tuple(c for c in cands if dot(level_work, c) <= 1)
            candidates = cands
        if want_series:
            components = simplex_eval.stanley_components(para, grading_work, level_work)
        if module_mode:
            closed = simplex_eval.parallelotope_points(rays, frozenset())
            module_points = closed.points
        return candidates, components, module_points

    if config.threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            results = list(pool.map(evaluate, tri.simplices))
    else:
        results = [evaluate(s) for s in tri.simplices]

    hb = None
    if want_hb:
        pool_candidates: list[Vector] = []
        for cands, _comps, _mp in results:
            pool_candidates.extend(cands)
        hb = global_reduce(
            pool_candidates,
            cone.support_forms,
            grading_work if (graded and not inhomogeneous) else None,
        )

    if "triangulation" in goals:
        report.triangulation = TriangulationBlock(
            generators=tuple(to_ambient_canon(g) for g in gens),
            simplices=tuple(
                (tuple(i + 1 for i in s.ray_indices), s.determinant, tuple(sorted(s.excluded_facets)))
                for s in tri.simplices
            ),
            detsum=tri.detsum,
        )

    if "class-group" in goals and not inhomogeneous:
        report.class_group = class_group(cone0.support_forms)

    if module_mode:
        points = sorted({p for _c, _comps, mp in results for p in mp})
        mg = minimal_module_generators(points, gens, cone.support_forms)
        report.module_generators = _ambient_sorted(mg, grading_work, to_ambient_canon)

    hs = None
    if want_series:
        all_components: list[simplex_eval.StanleyComponent] = []
        for _c, comps, _mp in results:
            all_components.extend(comps)
        if inhomogeneous:
            all_components = inhom_mod.transform_components(all_components)
        hs = series_mod.normalize_shift(
            series_mod.accumulate(series_mod.component_series(c) for c in all_components)
        )
        report.raw_series = hs

    if inhomogeneous:
        _finish_inhomogeneous(report, cone, goals, hb, hs, level_work, grading_work, to_ambient_canon, config)
    else:
        _finish_homogeneous(
            report, cone, goals, hb, hs, grading_work, extreme_reps, to_ambient_canon, config
        )
    return report


def _order_generators(generators: Matrix, grading: Optional[Vector]) -> list[Vector]:
    gens = []
    seen = set()
    for g in generators:
        if any(g) and g not in seen:
            seen.add(g)
            gens.append(g)
    if grading is not None:
        gens.sort(key=lambda g: (dot(grading, g), g))
    else:
        gens.sort()
    return gens


def _canonical_sort(vectors: Sequence[Vector], grading: Optional[Vector]) -> list[Vector]:
    out = sorted(set(vectors))
    if grading is not None:
        out.sort(key=lambda v: (dot(grading, v), v))
    return out


def _ambient_sorted(vectors: Sequence[Vector], grading: Optional[Vector], to_ambient_canon) -> Matrix:
    """Map working vectors to canonical ambient representatives, sorted by
    (degree when graded, ambient lexicographic)."""
    pairs = sorted(
        ((to_ambient_canon(v), dot(grading, v) if grading is not None else 0) for v in set(vectors)),
        key=lambda t: (t[1], t[0]),
    )
    return tuple(v for v, _d in pairs)


def _finish_trivial(report, cone, goals, inhomogeneous, graded):
    """Working dimension 0: the monoid is {0}."""
    if inhomogeneous:
        # the zero cone has no level-1 point
        report.empty = True
        report.empty_reason = "polyhedron contains no lattice point"
        report.module_generators = ()
        report.recession_basis = ()
        report.module_rank = 0
        return report
    if "hilbert-basis" in goals:
        report.hilbert_basis = ()
        report.hilbert_degrees = () if graded else None
        report.extreme_rays = ()
    if "hilbert-series" in goals:
        report.series = SeriesBlock((1,), (), 0, False)
        report.raw_series = series_mod.ONE_SERIES
    if "class-group" in goals:
        report.class_group = ClassGroup(0, ())
    if "module-generators" in goals:
        report.module_generators = ((0,) * report.ambient_dim,) if report.ambient_dim else ((),)
    return report


def _finish_homogeneous(report, cone, goals, hb, hs, grading_work, extreme_reps, to_ambient_canon, config):
    graded = grading_work is not None
    if hb is not None and "hilbert-basis" in goals:
        pairs = sorted(
            ((to_ambient_canon(v), dot(grading_work, v) if graded else 0) for v in hb.elements),
            key=lambda t: (t[1], t[0]),
        )
        report.hilbert_basis = tuple(v for v, _d in pairs)
        report.hilbert_degrees = tuple(d for _v, d in pairs) if graded else None
    if "hilbert-basis" in goals:
        ray_pairs = sorted(
            ((to_ambient_canon(r), dot(grading_work, r) if graded else 0) for r in extreme_reps),
            key=lambda t: (t[1], t[0]),
        )
        report.extreme_rays = tuple(v for v, _d in ray_pairs)
    if hs is None:
        return
    std_num, std_exps = series_mod.standard_denominator(hs)
    report.series = SeriesBlock(std_num, _den_pairs(std_exps), 0, False)
    report.quasipolynomial = series_mod.quasipolynomial(hs)
    if "hsop" in goals:
        incidence = [
            frozenset(j for j, r in enumerate(extreme_reps) if dot(f, r) == 0)
            for f in cone.support_forms
        ]
        heights = series_mod.hsop_heights(extreme_reps, incidence, cone.dim)
        degrees = tuple(dot(grading_work, r) for r in extreme_reps)
        hdegs = series_mod.hsop_degrees(heights, degrees)
        hnum = series_mod.renumerate(hs, hdegs)
        report.hsop = HsopBlock(heights, hdegs, hnum, _den_pairs(hdegs))
        if config.verbose:
            print("Heights vector:", " ".join(str(h) for h in heights))
            print("Degrees of HSOP:", " ".join(str(g) for g in hdegs))


def _finish_inhomogeneous(report, cone, goals, hb, hs, level_work, grading_work, to_ambient_canon, config):
    assert hb is not None and level_work is not None
    levels = [dot(level_work, e) for e in hb.elements]
    module, recession = inhom_mod.split_levels(hb.elements, levels)
    report.module_generators = _ambient_sorted(module, grading_work, to_ambient_canon)
    report.recession_basis = _ambient_sorted(recession, grading_work, to_ambient_canon)
    if not module:
        report.empty = True
        report.empty_reason = "polyhedron contains no lattice point"
        report.module_rank = 0
        return
    if config.compute_rank:
        group = inhom_mod.recession_group_basis(recession, cone.dim)
        rank_res = inhom_mod.module_rank_residues(module, group)
        rank_poly = inhom_mod.module_rank_polytope(cone, level_work, group)
        assert rank_res == rank_poly, "module rank methods disagree"
        report.module_rank = rank_res
    if hs is not None:
        report.series = SeriesBlock(hs.numerator, _den_pairs(hs.denominator), hs.shift, True)
