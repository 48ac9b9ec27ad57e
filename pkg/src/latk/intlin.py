"""Exact integer linear algebra: normal forms, kernels, diophantine solving.

Everything runs on Python's arbitrary-precision integers, so no overflow or
rounding can occur.  Matrices are sequences of rows; vectors are tuples.
Rational intermediates (only where unavoidable) use fractions.Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import InputError

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]


def to_matrix(rows: Iterable[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v, strict=True))


def vec_add(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c: int, v: Sequence[int]) -> Vector:
    return tuple(c * a for a in v)


def vec_gcd(v: Sequence[int]) -> int:
    g = 0
    for a in v:
        g = gcd(g, a)
    return g


def primitive(v: Sequence[int]) -> Vector:
    """Divide a vector by the gcd of its entries (direction preserved)."""
    g = vec_gcd(v)
    if g <= 1:
        return tuple(v)
    return tuple(a // g for a in v)


def transpose(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*rows)) if rows else ()


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def mat_vec(a: Sequence[Sequence[int]], x: Sequence[int]) -> Vector:
    return tuple(dot(row, x) for row in a)


def row_mat(x: Sequence[int], a: Sequence[Sequence[int]]) -> Vector:
    """x as a row vector times the matrix a."""
    cols = list(zip(*a)) if a else []
    return tuple(dot(x, col) for col in cols)


def det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    if any(len(r) != n for r in a):
        raise InputError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q, by integer cross-multiplication elimination."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, m):
            f = a[i][c]
            if f:
                a[i] = [p * a[i][j] - f * a[r][j] for j in range(n)]
        r += 1
        if r == m:
            break
    return r


def lin_solve(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> Optional[tuple[Fraction, ...]]:
    """One rational solution of rows·x = rhs, or None if inconsistent.

    Free variables are set to 0.  Exact Gaussian elimination over Fraction.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs, strict=True)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = a[i][n]
    return tuple(x)


@dataclass(frozen=True)
class SmithForm:
    """U·A·V = S with S diagonal, U and V unimodular, diag divisibility chain."""

    S: Matrix
    U: Matrix
    V: Matrix
    diag: Vector


@dataclass(frozen=True)
class HermiteForm:
    """U·A = H with H in row echelon form, pivots positive, U unimodular."""

    H: Matrix
    U: Matrix
    rank: int
    pivot_cols: Vector


def smith_normal_form(a: Sequence[Sequence[int]]) -> SmithForm:
    """Smith normal form of an arbitrary integer matrix.

    Pivoting always picks the entry of minimal absolute value, which keeps
    coefficient growth in check.
    """
    s = [list(r) for r in a]
    m = len(s)
    n = len(s[0]) if s else 0
    u = [list(r) for r in identity(m)]
    v = [list(r) for r in identity(n)]
    t = 0
    while t < min(m, n):
        pos = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = s[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pos = (i, j)
        if pos is None:
            break
        i0, j0 = pos
        if i0 != t:
            s[t], s[i0] = s[i0], s[t]
            u[t], u[i0] = u[i0], u[t]
        if j0 != t:
            for row in s:
                row[t], row[j0] = row[j0], row[t]
            for row in v:
                row[t], row[j0] = row[j0], row[t]
        while True:
            if s[t][t] < 0:
                s[t] = [-x for x in s[t]]
                u[t] = [-x for x in u[t]]
            p = s[t][t]
            restart = False
            for i in range(t + 1, m):
                if s[i][t]:
                    q = s[i][t] // p
                    if q:
                        s[i] = [x - q * y for x, y in zip(s[i], s[t])]
                        u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                    if s[i][t]:
                        # remainder is a strictly smaller pivot
                        s[t], s[i] = s[i], s[t]
                        u[t], u[i] = u[i], u[t]
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, n):
                if s[t][j]:
                    q = s[t][j] // p
                    if q:
                        for row in s:
                            row[j] -= q * row[t]
                        for row in v:
                            row[j] -= q * row[t]
                    if s[t][j]:
                        for row in s:
                            row[t], row[j] = row[j], row[t]
                        for row in v:
                            row[t], row[j] = row[j], row[t]
                        restart = True
                        break
            if restart:
                continue
            # pivot must divide the remaining submatrix for the chain d_i | d_{i+1}
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if s[i][j] % p != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            s[t] = [x + y for x, y in zip(s[t], s[bad])]
            u[t] = [x + y for x, y in zip(u[t], u[bad])]
        t += 1
    diag = tuple(s[k][k] for k in range(min(m, n)))
    return SmithForm(to_matrix(s), to_matrix(u), to_matrix(v), diag)


def hermite_normal_form(a: Sequence[Sequence[int]]) -> HermiteForm:
    """Row-style Hermite normal form: echelon, positive pivots, reduced above."""
    h = [list(r) for r in a]
    m = len(h)
    n = len(h[0]) if h else 0
    u = [list(r) for r in identity(m)]
    r = 0
    pivot_cols = []
    for c in range(n):
        if r == m:
            break
        while True:
            piv = None
            best = None
            for i in range(r, m):
                x = h[i][c]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = i
            if piv is None:
                break
            if piv != r:
                h[r], h[piv] = h[piv], h[r]
                u[r], u[piv] = u[piv], u[r]
            if h[r][c] < 0:
                h[r] = [-x for x in h[r]]
                u[r] = [-x for x in u[r]]
            clean = True
            for i in range(r + 1, m):
                if h[i][c]:
                    q = h[i][c] // h[r][c]
                    if q:
                        h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                        u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][c]:
                        clean = False
            if clean:
                break
        if h[r][c] == 0:
            continue
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        pivot_cols.append(c)
        r += 1
    return HermiteForm(to_matrix(h), to_matrix(u), r, tuple(pivot_cols))


def lattice_basis(rows: Sequence[Sequence[int]]) -> Matrix:
    """Canonical (HNF) basis of the lattice spanned by the given rows."""
    hf = hermite_normal_form(rows)
    return hf.H[: hf.rank]


def kernel_basis(a: Sequence[Sequence[int]]) -> Matrix:
    """HNF basis of the saturated lattice {x : a·x = 0} ∩ Z^cols.

    Saturation (Z^cols modulo the kernel is torsion-free) comes for free from
    the unimodular V of the Smith form.
    """
    if not a:
        return ()
    n = len(a[0])
    sf = smith_normal_form(a)
    free = [k for k in range(n) if k >= len(sf.diag) or sf.diag[k] == 0]
    if not free:
        return ()
    cols = list(zip(*sf.V))
    return lattice_basis([cols[k] for k in free])


def hnf_reduce(v: Sequence[int], basis: Sequence[Sequence[int]]) -> Vector:
    """Canonical representative of v modulo the lattice spanned by basis rows.

    basis must already be in HNF (as produced by lattice_basis/kernel_basis).
    """
    x = list(v)
    for row in basis:
        j = next((k for k, e in enumerate(row) if e != 0), None)
        if j is None:
            continue
        q = x[j] // row[j]
        if q:
            x = [a - q * b for a, b in zip(x, row)]
    return tuple(x)


def solve_left(basis: Sequence[Sequence[int]], x: Sequence[int]) -> Optional[Vector]:
    """Integer y with y·basis = x, or None (basis rows independent)."""
    if not basis:
        return () if not any(x) else None
    sol = lin_solve(transpose(basis), x)
    if sol is None or any(c.denominator != 1 for c in sol):
        return None
    return tuple(int(c) for c in sol)


def unimodular_inverse(q: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a unimodular integer matrix (HNF of Q is the identity)."""
    hf = hermite_normal_form(q)
    if hf.H != identity(len(q)):
        raise InputError("matrix is not unimodular")
    return hf.U


def solve_diophantine(
    eqs: Optional[tuple[Sequence[Sequence[int]], Sequence[int]]] = None,
    congs: Optional[tuple[Sequence[Sequence[int]], Sequence[int], Sequence[int]]] = None,
    dim: Optional[int] = None,
) -> Optional[tuple[Vector, Matrix]]:
    """Solve {x in Z^d : B·x = b, C·x ≡ c (mod m)}.

    Returns (particular solution, HNF basis of the homogeneous lattice), or
    None when the affine lattice is empty.  Congruences are turned into
    equations with one auxiliary variable each; the auxiliary block is
    projected away at the end.
    """
    b_rows = to_matrix(eqs[0]) if eqs else ()
    b_rhs = tuple(eqs[1]) if eqs else ()
    c_rows = to_matrix(congs[0]) if congs else ()
    c_rhs = tuple(congs[1]) if congs else ()
    moduli = tuple(congs[2]) if congs else ()
    if dim is None:
        if b_rows:
            dim = len(b_rows[0])
        elif c_rows:
            dim = len(c_rows[0])
        else:
            raise InputError("dimension of the system is not determined")
    if any(m <= 0 for m in moduli):
        raise InputError("congruence moduli must be positive")
    g = len(c_rows)
    rows = []
    rhs = []
    for row, bi in zip(b_rows, b_rhs, strict=True):
        rows.append(tuple(row) + (0,) * g)
        rhs.append(bi)
    for k, (row, ck) in enumerate(zip(c_rows, c_rhs, strict=True)):
        aux = [0] * g
        aux[k] = -moduli[k]
        rows.append(tuple(row) + tuple(aux))
        rhs.append(ck)
    if not rows:
        return (0,) * dim, identity(dim)
    ncols = dim + g
    sf = smith_normal_form(rows)
    r = mat_vec(sf.U, rhs)
    w = [0] * ncols
    for k in range(len(rows)):
        dk = sf.diag[k] if k < len(sf.diag) else 0
        if dk != 0:
            if r[k] % dk != 0:
                return None
            w[k] = r[k] // dk
        elif r[k] != 0:
            return None
    z = mat_vec(sf.V, w)
    particular = tuple(z[:dim])
    free = [k for k in range(ncols) if k >= len(sf.diag) or sf.diag[k] == 0]
    cols = list(zip(*sf.V))
    hom = lattice_basis([cols[k][:dim] for k in free]) if free else ()
    return particular, hom
