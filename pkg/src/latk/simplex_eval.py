"""Per-simplex evaluation: fundamental-parallelotope points, local Hilbert
candidates and Stanley components.

Parallelotope enumeration goes through the Smith normal form of the ray
matrix, which yields exactly det-many residue representatives without any
search; the representatives are then folded into the (exclusion-adjusted)
half-open box by exact rational barycentric coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import intlin
from .errors import NonPositiveRayDegree, SingularSimplex
from .intlin import Matrix, Vector, dot


@dataclass(frozen=True)
class ParallelotopeSet:
    """Lattice points of the exclusion-adjusted fundamental parallelotope."""

    rays: Matrix
    excluded: frozenset[int]
    points: Matrix


@dataclass(frozen=True)
class StanleyComponent:
    """One translated free submonoid u + Z+·v_1 + ... + Z+·v_f.

    offset_level/ray_levels are None in homogeneous mode.
    """

    offset: Vector
    rays: Matrix
    offset_degree: int
    ray_degrees: Vector
    offset_level: Optional[int] = None
    ray_levels: Optional[Vector] = None


def _fraction_inverse(rays: Sequence[Vector]) -> list[list[Fraction]]:
    d = len(rays)
    a = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(d)] for i, row in enumerate(rays)]
    for c in range(d):
        piv = next((i for i in range(c, d) if a[i][c] != 0), None)
        if piv is None:
            raise SingularSimplex("simplex rays are linearly dependent")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(d):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[d:] for row in a]


def barycentric(rays_inv: Sequence[Sequence[Fraction]], x: Sequence[int]) -> tuple[Fraction, ...]:
    """Coordinates a with a·rays = x, given the precomputed inverse."""
    return tuple(sum(Fraction(x[i]) * rays_inv[i][j] for i in range(len(x))) for j in range(len(x)))


def parallelotope_points(rays: Sequence[Sequence[int]], excluded: frozenset[int] = frozenset()) -> ParallelotopeSet:
    """Exactly det-many lattice points, one per residue class of Z^d modulo
    the ray lattice.

    Included facets contribute barycentric range [0,1); excluded ones (0,1],
    i.e. representatives with a_k = 0 are shifted by +v_k.
    """
    rays = intlin.to_matrix(rays)
    d = len(rays)
    dval = abs(intlin.det(rays))
    if dval == 0:
        raise SingularSimplex("simplex rays are linearly dependent")
    sf = intlin.smith_normal_form(rays)
    r = intlin.unimodular_inverse(sf.V)
    inv = _fraction_inverse(rays)
    points = []
    counters = [0] * d
    while True:
        rep = tuple(sum(counters[i] * r[i][j] for i in range(d)) for j in range(d))
        a = barycentric(inv, rep)
        shifts = []
        for k, ak in enumerate(a):
            if k in excluded:
                shifts.append(math.ceil(ak) - 1)  # a_k into (0, 1]
            else:
                shifts.append(math.floor(ak))  # a_k into [0, 1)
        point = tuple(rep[j] - sum(shifts[i] * rays[i][j] for i in range(d)) for j in range(d))
        points.append(point)
        # odometer over residue counters
        for i in range(d):
            counters[i] += 1
            if counters[i] < sf.diag[i]:
                break
            counters[i] = 0
        else:
            break
    assert len(set(points)) == dval, "parallelotope must hold det-many points"
    return ParallelotopeSet(rays, frozenset(excluded), tuple(sorted(points)))


def local_candidates(para: ParallelotopeSet) -> Matrix:
    """Rays plus parallelotope points, with points that reduce inside the
    simplicial monoid removed.

    A point y is dropped when y = y' + (cone element) for another candidate
    y'; the membership test is barycentric nonnegativity, so reducers range
    over the full integral closure of the simplicial monoid.
    """
    inv = _fraction_inverse(para.rays)
    items = list(para.rays) + [p for p in para.points if any(p)]
    items = _dedupe(items)
    degree = {p: sum(barycentric(inv, p)) for p in items}
    rays = set(para.rays)
    kept = []
    for y in items:
        if y in rays:
            kept.append(y)
            continue
        reducible = False
        for x in items:
            if x == y:
                continue
            if degree[x] > degree[y]:
                continue
            diff = intlin.vec_sub(y, x)
            if any(diff) and all(c >= 0 for c in barycentric(inv, diff)):
                reducible = True
                break
        if not reducible:
            kept.append(y)
    return tuple(sorted(kept))


def _dedupe(vectors):
    seen = set()
    out = []
    for v in vectors:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def stanley_components(
    para: ParallelotopeSet,
    grading: Sequence[int],
    level_form: Optional[Sequence[int]] = None,
) -> list[StanleyComponent]:
    """One full-dimensional Stanley component per parallelotope point.

    The series contribution of the simplex is the sum over components of
    t^deg(offset) / prod_i (1 - t^deg(ray_i)).
    """
    ray_degrees = tuple(dot(grading, v) for v in para.rays)
    if level_form is None and any(dg <= 0 for dg in ray_degrees):
        raise NonPositiveRayDegree("simplex ray of nonpositive degree")
    ray_levels = tuple(dot(level_form, v) for v in para.rays) if level_form is not None else None
    out = []
    for u in para.points:
        out.append(
            StanleyComponent(
                offset=u,
                rays=para.rays,
                offset_degree=dot(grading, u),
                ray_degrees=ray_degrees,
                offset_level=dot(level_form, u) if level_form is not None else None,
                ray_levels=ray_levels,
            )
        )
    return out
