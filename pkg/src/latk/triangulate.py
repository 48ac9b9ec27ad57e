"""Placing (lexicographic) triangulations, half-open exclusion sets,
bottom decomposition and the roughness heuristic.

Disjointness of the half-open simplicial cones is realized with an observer
point: a symbolically perturbed point in the interior of the first simplex.
A facet of a simplex is excluded exactly when its hyperplane strictly
separates the simplex from the observer, which makes the union of the
half-open cones a partition of the cone's lattice points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import intlin
from .errors import NonPositiveDegree, NotFullDimensional, NotPointed
from .intlin import Matrix, Vector, dot, kernel_basis, primitive


@dataclass(frozen=True)
class SimplicialCone:
    """d independent generators (as indices into the triangulated list),
    the absolute determinant, and the facets excluded for disjointness.

    excluded_facets holds positions k into ray_indices; the excluded facet is
    the one *opposite* ray k, i.e. points whose k-th barycentric coordinate
    vanishes.
    """

    ray_indices: tuple[int, ...]
    determinant: int
    excluded_facets: frozenset[int]


@dataclass(frozen=True)
class Triangulation:
    simplices: tuple[SimplicialCone, ...]
    detsum: int


def _facet_form(rays: Sequence[Vector], opposite: int) -> Vector:
    """Primitive form vanishing on all rays but `opposite`, positive there."""
    others = [r for k, r in enumerate(rays) if k != opposite]
    ker = kernel_basis(others) if others else intlin.identity(len(rays[0]))
    assert len(ker) == 1
    h = ker[0]
    v = dot(h, rays[opposite])
    assert v != 0
    return h if v > 0 else tuple(-x for x in h)


def _observer_sign(form: Vector, base: Vector) -> int:
    """Sign of the form at base + eps*e1 + eps^2*e2 + ... for tiny eps > 0."""
    v = dot(form, base)
    if v:
        return 1 if v > 0 else -1
    for x in form:
        if x:
            return 1 if x > 0 else -1
    return 0


class _Placing:
    """Incremental hull + triangulation state for one placing run."""

    def __init__(self, gens: Sequence[Vector], dim: int):
        self.gens = [tuple(g) for g in gens]
        self.dim = dim
        self.simplices: list[tuple[int, ...]] = []
        self.forms: list[Vector] = []
        self.processed: list[int] = []

    def run(self) -> list[tuple[int, ...]]:
        d = self.dim
        first: list[int] = []
        rows: list[Vector] = []
        rest: list[int] = []
        for i, g in enumerate(self.gens):
            if len(first) < d and intlin.rank(rows + [g]) == len(rows) + 1:
                first.append(i)
                rows.append(g)
            else:
                rest.append(i)
        if len(first) < d:
            raise NotFullDimensional("generators do not span the working space")
        self.simplices.append(tuple(first))
        self.forms = [_facet_form(rows, k) for k in range(d)]
        self.processed = list(first)
        for i in rest:
            self._insert(i)
        return self.simplices

    def _insert(self, i: int) -> None:
        g = self.gens[i]
        vals = [dot(f, g) for f in self.forms]
        if all(v >= 0 for v in vals):
            self.processed.append(i)
            return
        d = self.dim
        new_simplices = []
        seen = set()
        for f, v in zip(self.forms, vals):
            if v >= 0:
                continue
            wall = {j for j in self.processed if dot(f, self.gens[j]) == 0}
            for simp in self.simplices:
                ridge = tuple(j for j in simp if j in wall)
                if len(ridge) != d - 1:
                    continue
                if intlin.rank([self.gens[j] for j in ridge]) != d - 1:
                    continue
                key = frozenset(ridge)
                if key in seen:
                    continue
                seen.add(key)
                new_simplices.append(ridge + (i,))
        self.simplices.extend(new_simplices)
        # Fourier-Motzkin update of the hull facets
        keep = [f for f, v in zip(self.forms, vals) if v >= 0]
        pos = [(f, v) for f, v in zip(self.forms, vals) if v > 0]
        neg = [(f, v) for f, v in zip(self.forms, vals) if v < 0]
        gen_rows = [self.gens[j] for j in self.processed]
        for fp, vp in pos:
            for fn, vn in neg:
                common = [g2 for g2 in gen_rows if dot(fp, g2) == 0 and dot(fn, g2) == 0]
                if intlin.rank(common) != d - 2:
                    continue
                w = tuple(vp * a - vn * b for a, b in zip(fn, fp))
                if any(w):
                    keep.append(primitive(w))
        self.forms = _dedupe(keep)
        self.processed.append(i)


def _dedupe(vectors):
    seen = set()
    out = []
    for v in vectors:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _check_pointed(gens: Sequence[Vector], dim: int) -> None:
    from .cones import dualize

    dd = dualize(gens, dim)
    if dd.span_equations:
        raise NotFullDimensional("generators do not span the working space")
    kern = kernel_basis(dd.support_forms) if dd.support_forms else intlin.identity(dim)
    if kern:
        raise NotPointed("cone contains a nontrivial linear subspace")


def _assign_exclusions(simplices: Sequence[tuple[int, ...]], gens: Sequence[Vector], detcache=None) -> Triangulation:
    """Half-open refinement with the observer in the first simplex."""
    first = simplices[0]
    observer = tuple(sum(col) for col in zip(*[gens[j] for j in first]))
    out = []
    detsum = 0
    for simp in simplices:
        rays = [gens[j] for j in simp]
        dval = abs(intlin.det(rays))
        assert dval > 0
        excluded = set()
        for k in range(len(simp)):
            h = _facet_form(rays, k)
            if _observer_sign(h, observer) < 0:
                excluded.add(k)
        out.append(SimplicialCone(tuple(simp), dval, frozenset(excluded)))
        detsum += dval
    return Triangulation(tuple(out), detsum)


def lex_triangulation(gens: Sequence[Sequence[int]], dim: int) -> Triangulation:
    """Placing triangulation of cone(gens) in the given generator order.

    The cone must be pointed and full-dimensional; generators interior to the
    hull of the earlier ones contribute no simplex.
    """
    gens = [tuple(g) for g in gens]
    _check_pointed(gens, dim)
    simplices = _Placing(gens, dim).run()
    return _assign_exclusions(simplices, gens)


def bottom_facets(
    gens: Sequence[Sequence[int]], dim: int, z: Optional[Sequence[int]] = None
) -> list[tuple[tuple[int, ...], Vector, int]]:
    """Facets of the bottom B(G): compact facets of conv(G) + cone(G).

    Computed as the facets of conv(G) + R+·z that are visible from the
    origin, via homogenization to dimension dim+1.  Returns triples
    (sorted generator indices on the facet, linear part a, constant c) where
    the facet lies on {x : a·x + c = 0} with c < 0 and a·x + c >= 0 on the
    polyhedron.  z = None means z = 0 (the conv(G) route).
    """
    from .cones import dualize

    gens = [tuple(g) for g in gens]
    _check_pointed(gens, dim)
    hom = [g + (1,) for g in gens]
    if z is not None and any(z):
        hom.append(tuple(z) + (0,))
    dd = dualize(hom, dim + 1)
    facets = []
    if dd.span_equations:
        # all generators on one affine hyperplane: the bottom is conv(G)
        assert len(dd.span_equations) == 1
        eq = dd.span_equations[0]
        a, c = eq[:dim], eq[dim]
        if c > 0:
            a, c = tuple(-x for x in a), -c
        assert c < 0
        facets.append((tuple(range(len(gens))), a, c))
        return facets
    for f in dd.support_forms:
        a, c = f[:dim], f[dim]
        if c >= 0:
            continue  # not visible from 0
        members = tuple(i for i, g in enumerate(gens) if dot(a, g) + c == 0)
        facets.append((members, a, c))
    facets.sort(key=lambda t: t[0])
    return facets


def bottom_triangulation(gens: Sequence[Sequence[int]], dim: int, z: Optional[Sequence[int]] = None) -> Triangulation:
    """Patch the placing triangulations of the bottom facet cones.

    Every bottom facet is triangulated with only its own generators, in the
    global generator order, so neighbouring facet cones agree on shared
    faces.  By default z is the first generator ("blows the roof off").
    """
    gens = [tuple(g) for g in gens]
    if z is None:
        z = gens[0] if gens else None
    facets = bottom_facets(gens, dim, z)
    simplices: list[tuple[int, ...]] = []
    seen = set()
    for members, _a, _c in facets:
        sub = [gens[i] for i in members]
        local = _Placing(sub, dim).run()
        for simp in local:
            global_ix = tuple(members[k] for k in simp)
            key = frozenset(global_ix)
            if key not in seen:
                seen.add(key)
                simplices.append(global_ix)
    return _assign_exclusions(simplices, gens)


def roughness(degrees: Sequence[int]) -> Fraction:
    """Ratio of the largest to the smallest generator degree."""
    if not degrees:
        return Fraction(1)
    if min(degrees) <= 0:
        raise NonPositiveDegree("roughness needs positive generator degrees")
    return Fraction(max(degrees), min(degrees))


BOTTOM_ROUGHNESS_THRESHOLD = Fraction(10)
