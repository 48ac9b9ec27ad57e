"""Hilbert series accumulation and its presentations: raw, cyclotomic,
standard denominator, hsop denominator, and the Hilbert quasipolynomial.

A HilbertSeries stores an integer numerator starting at exponent 0 together
with a shift (nonzero only in inhomogeneous mode) and a multiset of
denominator exponents g, one per factor (1 - t^g).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import polys
from .errors import InexactDivision, NonPositiveRayDegree, NotGraded
from .intlin import Matrix, Vector
from .polys import Poly
from .simplex_eval import StanleyComponent


@dataclass(frozen=True)
class HilbertSeries:
    numerator: Poly
    denominator: tuple[int, ...]  # sorted multiset of exponents
    shift: int = 0

    def denominator_poly(self) -> Poly:
        out = polys.ONE
        for g in self.denominator:
            out = polys.mul(out, polys.one_minus_power(g))
        return out

    def is_zero(self) -> bool:
        return not self.numerator


ZERO_SERIES = HilbertSeries(polys.ZERO, ())
ONE_SERIES = HilbertSeries(polys.ONE, ())


def component_series(comp: StanleyComponent, level_split: bool = False) -> HilbertSeries:
    """Eq.-style series of one Stanley component: t^deg(u) over the product
    of (1 - t^deg(v_i))."""
    degs = comp.ray_degrees
    if any(d <= 0 for d in degs):
        raise NonPositiveRayDegree("free ray of nonpositive degree")
    shift = min(comp.offset_degree, 0)
    num = polys.shift(polys.ONE, comp.offset_degree - shift)
    return HilbertSeries(num, tuple(sorted(degs)), shift)


def accumulate(parts: Iterable[HilbertSeries]) -> HilbertSeries:
    """Exact sum over the common denominator of the contributions."""
    parts = [p for p in parts if not p.is_zero()]
    if not parts:
        return ZERO_SERIES
    den: Counter = Counter()
    for p in parts:
        c = Counter(p.denominator)
        for g, m in c.items():
            den[g] = max(den[g], m)
    shift = min(p.shift for p in parts)
    total = polys.ZERO
    for p in parts:
        num = polys.shift(p.numerator, p.shift - shift)
        missing = den - Counter(p.denominator)
        for g, m in missing.items():
            for _ in range(m):
                num = polys.mul(num, polys.one_minus_power(g))
        total = polys.add(total, num)
    exponents = tuple(sorted(den.elements()))
    if not total:
        return ZERO_SERIES
    return HilbertSeries(total, exponents, shift)


def expand(hs: HilbertSeries, k_max: int) -> dict[int, int]:
    """Coefficients of the power series for exponents shift..k_max."""
    coeffs = polys.expand_quotient(hs.numerator, hs.denominator, k_max - hs.shift)
    return {k + hs.shift: c for k, c in enumerate(coeffs)}


def normalize_shift(hs: HilbertSeries) -> HilbertSeries:
    """Move leading zero coefficients of the numerator into the shift."""
    num = list(hs.numerator)
    k = 0
    while num and num[0] == 0:
        num.pop(0)
        k += 1
    return HilbertSeries(tuple(num), hs.denominator, hs.shift + k)


@dataclass(frozen=True)
class CyclotomicForm:
    """numerator / (sign * prod cyclotomic(q)^e), fully reduced."""

    numerator: Poly
    orders: tuple[tuple[int, int], ...]  # (q, e) with q ascending
    sign: int


def cyclotomic_form(hs: HilbertSeries) -> CyclotomicForm:
    """Reduce to lowest terms against the cyclotomic factorization of the
    denominator: 1 - t^g = -(t^g - 1) = -prod_{k|g} cyclotomic(k)."""
    orders: Counter = Counter()
    for g in hs.denominator:
        for k in range(1, g + 1):
            if g % k == 0:
                orders[k] += 1
    sign = -1 if len(hs.denominator) % 2 else 1
    num = hs.numerator
    for k in sorted(orders):
        phi = polys.cyclotomic(k)
        while orders[k] > 0:
            try:
                num = polys.divexact(num, phi)
            except InexactDivision:
                break
            orders[k] -= 1
    kept = tuple((k, orders[k]) for k in sorted(orders) if orders[k] > 0)
    return CyclotomicForm(num, kept, sign)


def renumerate(hs: HilbertSeries, exponents: Sequence[int]) -> Poly:
    """Exact numerator of hs over the denominator prod (1 - t^g).

    Raises InexactDivision when the requested denominator is not a multiple
    of the reduced one.
    """
    num = hs.numerator
    for g in exponents:
        num = polys.mul(num, polys.one_minus_power(g))
    return polys.divexact(num, hs.denominator_poly())


def standard_denominator(hs: HilbertSeries) -> tuple[Poly, tuple[int, ...]]:
    """Standard-denominator presentation.

    Repeatedly take g = lcm of the cyclotomic orders remaining in the reduced
    denominator, emit a factor (1 - t^g) and decrement the multiplicity of
    every order dividing g.  Exponents are returned ascending.
    """
    cyc = cyclotomic_form(hs)
    remaining = Counter(dict(cyc.orders))
    exponents = []
    while +remaining:
        present = sorted(k for k, e in remaining.items() if e > 0)
        g = polys.lcm_all(present)
        exponents.append(g)
        for k in present:
            if g % k == 0:
                remaining[k] -= 1
    exponents.sort()
    return renumerate(hs, exponents), tuple(exponents)


def raw_form(hs: HilbertSeries, extreme_degrees: Sequence[int], dim: int) -> tuple[Poly, int]:
    """Presentation Q(t) / (1 - t^l)^dim with l = lcm of the degrees of the
    extreme integral generators; Q has nonnegative coefficients."""
    ell = polys.lcm_all([d for d in extreme_degrees]) if extreme_degrees else 1
    return renumerate(hs, [ell] * dim), ell


@dataclass(frozen=True)
class HsopResult:
    heights: Vector
    degrees: Vector
    numerator: Poly
    denominator: tuple[int, ...]


@dataclass(frozen=True)
class _Face:
    facets: frozenset[int]
    gens: frozenset[int]
    dim: int


def hsop_heights(gens: Sequence[Vector], facet_incidence: Sequence[frozenset[int]], dim: int) -> Vector:
    """Heights vector h_j = height of the monomial ideal (x_1..x_j).

    gens are the extreme integral generators in evaluation order;
    facet_incidence[l] holds the generator indices lying on facet l.  The
    collection of maximal faces disjoint from the processed generators is
    maintained by intersecting with facets that miss the current generator;
    h_j = dim - max dim of the collection.
    """
    from . import intlin

    def face_dim(gen_set: frozenset[int]) -> int:
        return intlin.rank([gens[i] for i in gen_set]) if gen_set else 0

    zero_face = _Face(frozenset(range(len(facet_incidence))), frozenset(), 0)
    faces = [_Face(frozenset([l]), frozenset(inc), face_dim(frozenset(inc))) for l, inc in enumerate(facet_incidence)]
    faces = _maximal(faces) or [zero_face]
    dead: set[int] = set()
    heights = []
    for j in range(len(gens)):
        g1 = [f for f in faces if j not in f.gens]
        g2 = [f for f in faces if j in f.gens]
        g1_gens: set[int] = set()
        for f in g1:
            g1_gens |= f.gens
        candidates = list(g1)
        for ell, inc in enumerate(facet_incidence):
            if ell in dead or j in inc:
                continue
            if inc <= (g1_gens | set(range(j))):
                continue  # neglect: facet adds nothing beyond known faces
            for f in g2:
                inter = f.gens & inc
                candidates.append(_Face(f.facets | {ell}, inter, face_dim(inter)))
        for ell, inc in enumerate(facet_incidence):
            if inc <= set(range(j + 1)):
                dead.add(ell)  # neglect: only processed generators left
        faces = _maximal(candidates) or [zero_face]
        heights.append(dim - max(f.dim for f in faces))
    return tuple(heights)


def _maximal(faces: Sequence[_Face]) -> list[_Face]:
    out: list[_Face] = []
    by_gens: dict[frozenset[int], _Face] = {}
    for f in faces:
        if f.gens in by_gens:
            old = by_gens[f.gens]
            by_gens[f.gens] = _Face(old.facets | f.facets, f.gens, f.dim)
            continue
        by_gens[f.gens] = f
    items = list(by_gens.values())
    for f in items:
        if any(f.gens < g.gens for g in items):
            continue
        out.append(f)
    return out


def hsop_degrees(heights: Sequence[int], gen_degrees: Sequence[int]) -> Vector:
    """Degrees of an hsop from the heights vector.

    l = smallest index with h_l = h_{l+1} (1-based; l = n if no plateau);
    theta_i has degree deg(x_i) for i <= l and lcm(deg x_{l+1}..deg x_{j_i})
    for i > l, where j_i is the first index of height i.
    """
    n = len(heights)
    if n == 0:
        return ()
    d = heights[-1]
    ell = n
    for i in range(n - 1):
        if heights[i] == heights[i + 1]:
            ell = i + 1
            break
    out = []
    for i in range(1, d + 1):
        if i <= ell:
            out.append(gen_degrees[i - 1])
        else:
            j_i = next(j for j in range(n) if heights[j] == i)
            out.append(polys.lcm_all(gen_degrees[ell : j_i + 1]))
    return tuple(out)


@dataclass(frozen=True)
class Quasipolynomial:
    """q(k) = sum_i rows[k mod period][i] * k^i / denominator."""

    period: int
    degree: int
    rows: tuple[Vector, ...]
    denominator: int

    def value(self, k: int) -> int:
        row = self.rows[k % self.period]
        total = sum(c * k**i for i, c in enumerate(row))
        assert total % self.denominator == 0
        return total // self.denominator


def quasipolynomial(hs: HilbertSeries) -> Quasipolynomial:
    """Hilbert quasipolynomial of the series, with minimal period.

    The degree is one less than the pole order at t = 1; the candidate period
    is the lcm of the cyclotomic orders of the reduced denominator, reduced
    afterwards to the true minimum.
    """
    if hs.shift != 0:
        raise NotGraded("quasipolynomial requires homogeneous mode")
    cyc = cyclotomic_form(hs)
    if not cyc.orders:
        # polynomial series: eventually zero
        return Quasipolynomial(1, 0, ((0,),), 1)
    r = dict(cyc.orders).get(1, 0)
    pi = polys.lcm_all([q for q, _ in cyc.orders])
    s = len(hs.numerator) - 1
    k_hi = max(s, 0) + pi * r + pi
    coeffs = polys.expand_quotient(hs.numerator, hs.denominator, k_hi)
    rows = []
    for residue in range(pi):
        top = k_hi - ((k_hi - residue) % pi)
        ks = [top - i * pi for i in range(r)]
        solved = _interpolate(ks, [coeffs[k] for k in ks], r)
        rows.append(solved)
    denom = 1
    for row in rows:
        for c in row:
            denom = polys.lcm(denom, c.denominator)
    int_rows = tuple(tuple(int(c * denom) for c in row) for row in rows)
    # minimal period: smallest divisor of pi with identical rows
    for cand in sorted(d for d in range(1, pi + 1) if pi % d == 0):
        if all(int_rows[i] == int_rows[i % cand] for i in range(pi)):
            int_rows = int_rows[:cand]
            pi = cand
            break
    return Quasipolynomial(pi, r - 1, int_rows, denom)


def _interpolate(ks: Sequence[int], values: Sequence[int], r: int) -> tuple[Fraction, ...]:
    """Coefficients of the degree-(r-1) polynomial through the given points."""
    a = [[Fraction(k**i) for i in range(r)] + [Fraction(v)] for k, v in zip(ks, values)]
    n = r
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(a[i][n] for i in range(n))
