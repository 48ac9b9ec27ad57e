"""Inhomogeneous systems: homogenization, level splitting, module rank and
the shifted Hilbert series of lattice points in a polyhedron."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from . import intlin
from .cones import ComputedCone, InputSystem
from .errors import EmptyLattice, EmptyModule, InputError, NonPointedHomogenization
from .intlin import Matrix, Vector, dot
from .simplex_eval import StanleyComponent


@dataclass(frozen=True)
class Homogenized:
    """Homogeneous system describing the cone over the polyhedron, plus the
    dehomogenizing level form in the homogenized ambient space."""

    system: InputSystem
    level_form: Vector
    original_dim: int


def homogenize(system: InputSystem) -> Homogenized:
    """Cone over the polyhedron: append the homogenizing coordinate, fold the
    right-hand sides in, and add the level inequality.

    With an explicit dehomogenization the input is already the cone over the
    polyhedron and passes through unchanged (right-hand sides must be absent).
    Raises EmptyLattice when the affine equation/congruence system has no
    integer solution.
    """
    if system.dehomogenization is not None:
        def zero(v):
            return v is None or not any(v)

        if not (zero(system.ineq_rhs) and zero(system.eq_rhs) and zero(system.cong_rhs)) or system.vertices:
            raise InputError("dehomogenization cannot be combined with inhomogeneous data")
        delta = system.dehomogenization
        hom = InputSystem(
            dim=system.dim,
            inequalities=system.inequalities + (delta,),
            equations=system.equations,
            congruences=system.congruences,
            cong_moduli=system.cong_moduli,
            cone_rays=system.cone_rays,
            grading=system.grading,
        )
        return Homogenized(hom, tuple(delta), system.dim)

    d = system.dim
    if (system.equations and system.eq_rhs and any(system.eq_rhs)) or (
        system.congruences and system.cong_rhs and any(system.cong_rhs)
    ):
        sol = intlin.solve_diophantine(
            eqs=(system.equations, system.eq_rhs or (0,) * len(system.equations)) if system.equations else None,
            congs=(
                system.congruences,
                system.cong_rhs or (0,) * len(system.congruences),
                system.cong_moduli,
            )
            if system.congruences
            else None,
            dim=d,
        )
        if sol is None:
            raise EmptyLattice("equation/congruence system has no integer solution")

    def rhs(v, rows):
        return tuple(v) if v is not None else (0,) * len(rows)

    ineqs = tuple(tuple(row) + (-a,) for row, a in zip(system.inequalities, rhs(system.ineq_rhs, system.inequalities)))
    level = (0,) * d + (1,)
    eqs = tuple(tuple(row) + (-b,) for row, b in zip(system.equations, rhs(system.eq_rhs, system.equations)))
    congs = tuple(tuple(row) + (-c,) for row, c in zip(system.congruences, rhs(system.cong_rhs, system.congruences)))
    rays = tuple(tuple(r) + (0,) for r in system.cone_rays)
    verts = tuple(tuple(v) + (q,) for v, q in zip(system.vertices, system.vertex_denoms))
    has_constraints = bool(system.inequalities or system.equations or system.congruences)
    has_gens = bool(rays or verts)
    hom = InputSystem(
        dim=d + 1,
        inequalities=ineqs + ((level,) if has_constraints or not has_gens else ()),
        equations=eqs,
        congruences=congs,
        cong_moduli=system.cong_moduli,
        cone_rays=rays + verts,
        grading=(tuple(system.grading) + (0,)) if system.grading is not None else None,
    )
    return Homogenized(hom, level, d)


def split_levels(elements: Sequence[Vector], levels: Sequence[int]) -> tuple[Matrix, Matrix]:
    """(module generators, recession Hilbert basis) from the level-filtered
    Hilbert basis of the homogenized cone."""
    module = tuple(e for e, l in zip(elements, levels, strict=True) if l == 1)
    recession = tuple(e for e, l in zip(elements, levels, strict=True) if l == 0)
    if any(l < 0 or l > 1 for l in levels):
        raise NonPointedHomogenization("levels of Hilbert basis elements must be 0 or 1")
    return module, recession


def transform_components(components: Sequence[StanleyComponent]) -> list[StanleyComponent]:
    """Intersect Stanley components of the homogenized cone with the level-1
    hyperplane.

    offset level 1: keep the offset with the level-0 rays; level 0: one
    component per level-1 ray, shifted by it; level > 1: dropped.  Rays of
    level >= 2 have forced coefficient 0 and disappear.
    """
    out = []
    for comp in components:
        if comp.offset_level is None or comp.ray_levels is None:
            raise InputError("components carry no level data")
        if any(l < 0 for l in comp.ray_levels) or comp.offset_level < 0:
            raise NonPointedHomogenization("negative level in a Stanley component")
        free = [i for i, l in enumerate(comp.ray_levels) if l == 0]
        rays0 = tuple(comp.rays[i] for i in free)
        degs0 = tuple(comp.ray_degrees[i] for i in free)
        if comp.offset_level == 1:
            out.append(
                StanleyComponent(
                    offset=comp.offset,
                    rays=rays0,
                    offset_degree=comp.offset_degree,
                    ray_degrees=degs0,
                    offset_level=1,
                    ray_levels=(0,) * len(rays0),
                )
            )
        elif comp.offset_level == 0:
            for i, l in enumerate(comp.ray_levels):
                if l != 1:
                    continue
                off = intlin.vec_add(comp.offset, comp.rays[i])
                out.append(
                    StanleyComponent(
                        offset=off,
                        rays=rays0,
                        offset_degree=comp.offset_degree + comp.ray_degrees[i],
                        ray_degrees=degs0,
                        offset_level=1,
                        ray_levels=(0,) * len(rays0),
                    )
                )
    return out


def module_rank_residues(module_gens: Sequence[Vector], recession_group: Matrix) -> int:
    """Count residue classes of the module generators modulo the group of the
    recession monoid (an HNF lattice basis)."""
    if not module_gens:
        raise EmptyModule("no module generators")
    reps = {intlin.hnf_reduce(g, recession_group) for g in module_gens}
    return len(reps)


def recession_group_basis(recession_elements: Sequence[Vector], dim: int) -> Matrix:
    """Saturated HNF basis of gp(rec(N)) inside the working lattice."""
    if not recession_elements:
        return ()
    perp = intlin.kernel_basis(recession_elements)
    return intlin.kernel_basis(perp) if perp else intlin.identity(dim)


def module_rank_polytope(
    cone: ComputedCone,
    level_form: Vector,
    recession_group: Matrix,
) -> int:
    """Module rank as the lattice-point count of the projection of the
    polyhedron along the recession space (Thm on cross-sections).

    Builds the complement of gp(rec(N)) in the working lattice via the Smith
    normal form, projects the vertices and counts lattice points of the
    resulting polytope with a nested homogeneous run.
    """
    verts = []
    for i in cone.extreme_rays:
        r = intlin.primitive(cone.generators[i])
        lev = dot(level_form, r)
        if lev > 0:
            verts.append((r, lev))
    if not verts:
        raise EmptyModule("polyhedron has no vertices")
    s = len(recession_group)
    d = cone.dim
    if s == 0:
        # recession monoid is trivial: P is a polytope, pi = identity
        return _count_polytope_points([(v, q) for v, q in verts], d)
    if s == d:
        return 1  # projection along everything: pi(P) is a point
    sf = intlin.smith_normal_form(recession_group)
    assert all(x == 1 for x in sf.diag)
    q_cols = list(zip(*sf.V))
    proj_verts = []
    for v, qden in verts:
        c = tuple(Fraction(dot(v, q_cols[j]), qden) for j in range(s, d))
        mult = 1
        for x in c:
            mult = mult * x.denominator // gcd(mult, x.denominator)
        proj_verts.append((tuple(int(x * mult) for x in c), mult))
    return _count_polytope_points(proj_verts, d - s)


def _count_polytope_points(verts: Sequence[tuple[Vector, int]], dim: int) -> int:
    from . import pipeline

    sub = InputSystem(
        dim=dim,
        vertices=tuple(v for v, _q in verts),
        vertex_denoms=tuple(q for _v, q in verts),
    )
    config = pipeline.RunConfig(goals=frozenset({"hilbert-basis"}), compute_rank=False)
    report = pipeline.run(sub, config)
    assert report.module_generators is not None
    return len(report.module_generators)
