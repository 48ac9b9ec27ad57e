"""Cone geometry: dualization, preprocessing into working coordinates,
pointedness and the pointed quotient.

Working convention: after preprocess() the cone is full-dimensional in its
working lattice Z^d', and the embedding matrix maps working rows back to the
ambient lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

from . import intlin
from .errors import AlreadyPointed, InputError
from .intlin import Matrix, Vector, dot, kernel_basis, primitive, to_matrix


@dataclass(frozen=True)
class InputSystem:
    """A linear diophantine system of inequalities, equations and congruences,
    optionally with generators (cone rays, polyhedron vertices).

    Right-hand sides default to zero.  Congruence rows carry their modulus
    separately; vertices carry a positive denominator.
    """

    dim: int
    inequalities: Matrix = ()
    ineq_rhs: Optional[Vector] = None
    equations: Matrix = ()
    eq_rhs: Optional[Vector] = None
    congruences: Matrix = ()
    cong_rhs: Optional[Vector] = None
    cong_moduli: Vector = ()
    cone_rays: Matrix = ()
    vertices: Matrix = ()
    vertex_denoms: Vector = ()
    grading: Optional[Vector] = None
    dehomogenization: Optional[Vector] = None

    def __post_init__(self):
        if self.dim < 0:
            raise InputError("ambient dimension must be nonnegative")
        for name in ("inequalities", "equations", "congruences", "cone_rays", "vertices"):
            for row in getattr(self, name):
                if len(row) != self.dim:
                    raise InputError(f"{name} row has {len(row)} entries, expected {self.dim}")
        for v in (self.grading, self.dehomogenization):
            if v is not None and len(v) != self.dim:
                raise InputError("linear form length does not match ambient dimension")
        if len(self.cong_moduli) != len(self.congruences):
            raise InputError("one modulus per congruence row required")
        if any(m <= 0 for m in self.cong_moduli):
            raise InputError("congruence moduli must be positive")
        if len(self.vertex_denoms) != len(self.vertices):
            raise InputError("one denominator per vertex required")
        if any(q <= 0 for q in self.vertex_denoms):
            raise InputError("vertex denominators must be positive")
        for name, rows in (("ineq_rhs", self.inequalities), ("eq_rhs", self.equations), ("cong_rhs", self.congruences)):
            rhs = getattr(self, name)
            if rhs is not None and len(rhs) != len(rows):
                raise InputError(f"{name} length does not match its matrix")

    @property
    def homogeneous(self) -> bool:
        def zero(v):
            return v is None or not any(v)

        return (
            zero(self.ineq_rhs)
            and zero(self.eq_rhs)
            and zero(self.cong_rhs)
            and not self.vertices
            and self.dehomogenization is None
        )


@dataclass(frozen=True)
class DualDescription:
    """Support forms of cone(rays) within its span, plus equations of the span."""

    support_forms: Matrix
    span_equations: Matrix


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _combination_form(span_perp: Matrix, g: Vector) -> Vector:
    """Integer form in the row space of span_perp whose value on g is the
    (positive) gcd of the values of span_perp on g."""
    vals = [dot(row, g) for row in span_perp]
    coeff = [0] * len(vals)
    g_cur = 0
    for k, v in enumerate(vals):
        if v == 0:
            continue
        if g_cur == 0:
            g_cur = abs(v)
            coeff[k] = 1 if v > 0 else -1
            continue
        g_cur, x, y = _ext_gcd(g_cur, v)
        coeff = [x * c for c in coeff]
        coeff[k] += y
    lam = tuple(sum(coeff[i] * span_perp[i][j] for i in range(len(span_perp))) for j in range(len(g)))
    if dot(lam, g) <= 0:
        raise InputError("generator not independent of current span")
    return lam


def dualize(rays: Sequence[Sequence[int]], dim: int) -> DualDescription:
    """Irredundant primitive support forms of cone(rays), by incremental
    insertion (double description with the rank adjacency test).

    The span equations form an HNF basis of the forms vanishing on all rays;
    applying dualize to the support forms of a full-dimensional cone returns
    its extreme rays.
    """
    forms: list[Vector] = []
    processed: list[Vector] = []
    span_perp: Matrix = intlin.identity(dim)
    for ray in rays:
        g = tuple(ray)
        if len(g) != dim:
            raise InputError("ray length does not match dimension")
        if not any(g):
            continue
        if any(dot(row, g) != 0 for row in span_perp):
            lam = _combination_form(span_perp, g)
            lg = dot(lam, g)
            new_forms = []
            for h in forms:
                new_forms.append(primitive(tuple(lg * a - dot(h, g) * b for a, b in zip(h, lam))))
            new_forms.append(primitive(lam))
            forms = _dedupe(new_forms)
            processed.append(g)
            span_perp = kernel_basis(processed)
        else:
            pos = [h for h in forms if dot(h, g) > 0]
            zero = [h for h in forms if dot(h, g) == 0]
            neg = [h for h in forms if dot(h, g) < 0]
            processed.append(g)
            if neg:
                span_dim = dim - len(span_perp)
                keep = pos + zero
                for hp in pos:
                    vp = dot(hp, g)
                    for hn in neg:
                        if not _adjacent(hp, hn, processed, span_dim):
                            continue
                        vn = dot(hn, g)
                        w = tuple(vp * a - vn * b for a, b in zip(hn, hp))
                        if any(w):
                            keep.append(primitive(w))
                forms = _dedupe(keep)
    return DualDescription(tuple(forms), span_perp)


def _dedupe(vectors: Sequence[Vector]) -> list[Vector]:
    seen = set()
    out = []
    for v in vectors:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _adjacent(h1: Vector, h2: Vector, gens: Sequence[Vector], span_dim: int) -> bool:
    common = [g for g in gens if dot(h1, g) == 0 and dot(h2, g) == 0]
    return intlin.rank(common) == span_dim - 2


@dataclass(frozen=True)
class ComputedCone:
    """A cone in working coordinates, full-dimensional in Z^dim.

    embedding rows are the ambient images of the working unit vectors, so
    x_ambient = y · embedding.  For nonpointed cones max_subspace is a
    saturated HNF basis of U(C) = ker σ in working coordinates.
    """

    dim: int
    ambient_dim: int
    generators: Matrix
    support_forms: Matrix
    extreme_rays: tuple[int, ...]
    max_subspace: Matrix
    pointed: bool
    embedding: Matrix

    def to_ambient(self, y: Sequence[int]) -> Vector:
        return intlin.row_mat(y, self.embedding)

    def from_ambient(self, x: Sequence[int]) -> Optional[Vector]:
        return intlin.solve_left(self.embedding, x)


def extreme_ray_indices(gens: Sequence[Vector], forms: Sequence[Vector], subspace_dim: int, dim: int) -> tuple[int, ...]:
    """Indices of the generators that span extreme rays (modulo U(C)).

    A generator is extreme iff the forms vanishing on it have rank
    dim − dim U(C) − 1.  Duplicate rays keep only their first index.
    """
    target = dim - subspace_dim - 1
    out = []
    seen = set()
    for i, g in enumerate(gens):
        tight = [f for f in forms if dot(f, g) == 0]
        if intlin.rank(tight) != target:
            continue
        key = primitive(g)
        if key in seen:
            continue
        seen.add(key)
        out.append(i)
    return tuple(out)


def _scale_into_lattice(basis: Matrix, g: Vector) -> Optional[Vector]:
    """Smallest positive multiple of g that lies in the row lattice of basis,
    expressed in basis coordinates; None if g is outside the rational span."""
    y = intlin.solve_left(basis, g)
    if y is not None:
        return y
    sol = intlin.lin_solve(intlin.transpose(basis), g)
    if sol is None:
        return None
    mult = 1
    for c in sol:
        mult = mult * c.denominator // gcd(mult, c.denominator)
    return tuple(int(c * mult) for c in sol)


def preprocess(system: InputSystem) -> ComputedCone:
    """Fold equations and congruences into the working lattice, restrict to
    the span of the cone and return the full-dimensional working cone.

    Only homogeneous systems are accepted; inhomogeneous input must be
    homogenized first.
    """
    if not system.homogeneous:
        raise InputError("preprocess requires a homogeneous system")
    d = system.dim
    ineqs = list(system.inequalities)
    eqs = list(system.equations)
    congs = (system.congruences, (0,) * len(system.congruences), system.cong_moduli)
    gens_in: Optional[list[Vector]] = list(system.cone_rays) or None
    if gens_in and (ineqs or eqs or system.congruences):
        # mixed input: convert generators to constraints and intersect
        dd = dualize(gens_in, d)
        ineqs.extend(dd.support_forms)
        eqs.extend(dd.span_equations)
        gens_in = None

    # working lattice from equations and congruences
    if eqs or system.congruences:
        sol = intlin.solve_diophantine(
            eqs=(eqs, (0,) * len(eqs)) if eqs else None,
            congs=congs if system.congruences else None,
            dim=d,
        )
        assert sol is not None  # homogeneous systems contain 0
        lat = sol[1]
    else:
        lat = intlin.identity(d)
    if not lat:
        return _trivial_cone(d)

    a1 = [tuple(dot(row, b) for b in lat) for row in ineqs]
    k = len(lat)
    if gens_in is not None:
        g1 = []
        for g in gens_in:
            y = _scale_into_lattice(lat, g)
            if y is None:
                raise InputError("cone generator violates the equations")
            if any(y):
                g1.append(y)
        span_rows = g1
    else:
        dd1 = dualize(a1, k)
        g1 = list(dd1.support_forms)
        span_rows = g1 + list(dd1.span_equations)

    # restrict to the span of the cone, saturated in the working lattice
    perp = kernel_basis(span_rows) if span_rows else intlin.identity(k)
    e2 = kernel_basis(perp) if perp else intlin.identity(k)
    if not e2:
        return _trivial_cone(d)
    embedding = intlin.mat_mul(e2, lat)
    gens = []
    for g in g1:
        y = intlin.solve_left(e2, g)
        assert y is not None
        gens.append(y)
    if gens_in is None:
        unit_rows = [intlin.solve_left(e2, urow) for urow in (kernel_basis(a1) if a1 else intlin.identity(k))]
        for u in unit_rows:
            assert u is not None
            gens.append(u)
            gens.append(tuple(-x for x in u))
    gens = _dedupe([tuple(g) for g in gens if any(g)])
    dd = dualize(gens, len(e2))
    assert not dd.span_equations, "working cone must be full-dimensional"
    forms = tuple(sorted(dd.support_forms))
    subspace = kernel_basis(forms) if forms else intlin.identity(len(e2))
    pointed = not subspace
    if gens_in is None:
        # keep only extreme representatives; unit directions are recorded in
        # max_subspace and would confuse the triangulation order
        gens = [g for g in gens if intlin.hnf_reduce(g, subspace) != (0,) * len(e2)] if not pointed else gens
    extreme = extreme_ray_indices(gens, forms, len(subspace), len(e2))
    return ComputedCone(
        dim=len(e2),
        ambient_dim=d,
        generators=tuple(gens),
        support_forms=forms,
        extreme_rays=extreme,
        max_subspace=subspace,
        pointed=pointed,
        embedding=embedding,
    )


def _trivial_cone(ambient_dim: int) -> ComputedCone:
    return ComputedCone(
        dim=0,
        ambient_dim=ambient_dim,
        generators=(),
        support_forms=(),
        extreme_rays=(),
        max_subspace=(),
        pointed=True,
        embedding=(),
    )


def pointed_quotient(cone: ComputedCone) -> ComputedCone:
    """Quotient of the cone by its maximal linear subspace.

    The working lattice of the quotient is Z^(dim−u), torsion-free because
    max_subspace is saturated; the returned embedding is a section, so
    results lift to representatives modulo U(C).
    """
    u = len(cone.max_subspace)
    if u == 0:
        raise AlreadyPointed("cone is already pointed")
    sf = intlin.smith_normal_form(cone.max_subspace)
    assert all(x == 1 for x in sf.diag), "max subspace basis must be saturated"
    r = intlin.unimodular_inverse(sf.V)
    section = r[u:]
    q_cols = list(zip(*sf.V))  # projection: y = (x·V)[u:]

    def project(x: Vector) -> Vector:
        return tuple(dot(x, q_cols[j]) for j in range(u, len(q_cols)))

    gens = _dedupe([project(g) for g in cone.generators if any(project(g))])
    forms = tuple(sorted(primitive(intlin.row_mat(s, intlin.transpose(section))) for s in cone.support_forms))
    # sanity: forms must cut out the projected generators
    assert all(dot(f, g) >= 0 for f in forms for g in gens)
    assert not kernel_basis(forms), "quotient must be pointed"
    extreme = extreme_ray_indices(gens, forms, 0, cone.dim - u)
    return ComputedCone(
        dim=cone.dim - u,
        ambient_dim=cone.ambient_dim,
        generators=tuple(gens),
        support_forms=forms,
        extreme_rays=extreme,
        max_subspace=(),
        pointed=True,
        embedding=intlin.mat_mul(section, cone.embedding),
    )
