"""Global reduction to Hilbert bases, minimal module generators of the
integral closure, and divisor class groups."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import intlin
from .errors import NotPointed, NotPositive
from .intlin import Matrix, Vector, dot


@dataclass(frozen=True)
class HilbertBasis:
    """Canonically sorted minimal generating set of a positive monoid."""

    elements: Matrix
    degrees: Optional[Vector] = None


def global_reduce(
    candidates: Sequence[Sequence[int]],
    support_forms: Sequence[Vector],
    grading: Optional[Sequence[int]] = None,
) -> HilbertBasis:
    """Reduce a candidate superset to the Hilbert basis.

    A candidate y is discarded iff some kept x of strictly smaller order
    degree satisfies sigma(x) <= sigma(y) componentwise, which is exactly
    y - x in C.  The order degree is the grading when given, otherwise the
    sum of support-form values (positive on nonzero elements of a pointed
    cone, and additive).
    """
    if support_forms and kernel_nontrivial(support_forms):
        raise NotPointed("global reduction requires a pointed cone")

    def sigma(x):
        return tuple(dot(f, x) for f in support_forms)

    def order_degree(x, sx):
        return dot(grading, x) if grading is not None else sum(sx)

    items = []
    seen = set()
    for c in candidates:
        v = tuple(c)
        if not any(v) or v in seen:
            continue
        seen.add(v)
        sx = sigma(v)
        items.append((order_degree(v, sx), v, sx))
    items.sort(key=lambda t: (t[0], t[1]))
    kept: list[tuple[int, Vector, Vector]] = []
    for deg, v, sv in items:
        reducible = False
        for degx, _x, sx in kept:
            if degx >= deg:
                break  # kept is sorted; equal degrees cannot reduce
            if all(a <= b for a, b in zip(sx, sv)):
                reducible = True
                break
        if not reducible:
            kept.append((deg, v, sv))
    elements = tuple(v for _d, v, _s in kept)
    degrees = tuple(d for d, _v, _s in kept) if grading is not None else None
    return HilbertBasis(elements, degrees)


def kernel_nontrivial(forms: Sequence[Vector]) -> bool:
    return bool(intlin.kernel_basis(forms))


def minimal_module_generators(
    points: Sequence[Sequence[int]],
    gens: Sequence[Sequence[int]],
    support_forms: Sequence[Vector],
) -> Matrix:
    """Minimal generators of the integral closure as a module over the monoid
    generated by gens: the points y with y - x outside the cone for every
    nonzero x in gens.  Always contains 0.

    points must cover one representative per residue class (the union of
    closed parallelotopes over a triangulation with rays in gens).
    """
    if kernel_nontrivial(support_forms):
        raise NotPositive("module generators require a positive monoid")

    def sigma(x):
        return tuple(dot(f, x) for f in support_forms)

    gen_sigmas = [(g, sigma(g)) for g in {tuple(g) for g in gens} if any(g)]
    out = []
    for p in sorted({tuple(p) for p in points}):
        sp = sigma(p)
        minimal = True
        for _g, sg in gen_sigmas:
            if all(a <= b for a, b in zip(sg, sp)):
                minimal = False
                break
        if minimal:
            out.append(p)
    return tuple(out)


@dataclass(frozen=True)
class ClassGroup:
    """Cl = Z^free_rank plus cyclic factors Z/c with c_1 | c_2 | ..."""

    free_rank: int
    divisors: Vector

    @property
    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        n = 1
        for c in self.divisors:
            n *= c
        return n


def class_group(support_forms: Sequence[Vector]) -> ClassGroup:
    """Divisor class group Z^s / sigma(Z^d) from the Smith normal form of the
    standard map (rows = support forms of the full-dimensional cone)."""
    s = len(support_forms)
    if s == 0:
        return ClassGroup(0, ())
    sf = intlin.smith_normal_form(support_forms)
    nonzero = [x for x in sf.diag if x != 0]
    return ClassGroup(s - len(nonzero), tuple(x for x in nonzero if x > 1))
