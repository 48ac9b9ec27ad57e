"""Dense integer polynomial arithmetic and cyclotomic polynomials.

A polynomial is a tuple of int coefficients, index = exponent, with no
trailing zeros; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Sequence

from .errors import InexactDivision

Poly = tuple[int, ...]

ZERO: Poly = ()
ONE: Poly = (1,)


def trim(c: Sequence[int]) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def add(a: Sequence[int], b: Sequence[int]) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a: Sequence[int], b: Sequence[int]) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def mul(a: Sequence[int], b: Sequence[int]) -> Poly:
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return trim(out)


def scale(k: int, a: Sequence[int]) -> Poly:
    return trim([k * x for x in a])


def shift(a: Sequence[int], k: int) -> Poly:
    """Multiply by t^k (k >= 0)."""
    if not a:
        return ZERO
    return (0,) * k + tuple(a)


def divexact(a: Sequence[int], b: Sequence[int]) -> Poly:
    """Quotient a / b; raises InexactDivision on a nonzero remainder."""
    a = list(trim(a))
    b = trim(b)
    if not b:
        raise InexactDivision("division by the zero polynomial")
    if not a:
        return ZERO
    if len(a) < len(b):
        raise InexactDivision("degree of dividend below divisor")
    lead = b[-1]
    out = [0] * (len(a) - len(b) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = a[k + len(b) - 1]
        if c % lead != 0:
            raise InexactDivision("leading coefficient does not divide")
        q = c // lead
        out[k] = q
        if q:
            for j, y in enumerate(b):
                a[k + j] -= q * y
    if any(a):
        raise InexactDivision("nonzero remainder")
    return trim(out)


def divides(b: Sequence[int], a: Sequence[int]) -> bool:
    try:
        divexact(a, b)
        return True
    except InexactDivision:
        return False


def one_minus_power(g: int) -> Poly:
    """1 - t^g."""
    assert g >= 1
    return trim([1] + [0] * (g - 1) + [-1])


def power_minus_one(g: int) -> Poly:
    """t^g - 1."""
    assert g >= 1
    return trim([-1] + [0] * (g - 1) + [1])


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Poly:
    """n-th cyclotomic polynomial, by exact division of t^n - 1."""
    assert n >= 1
    num = power_minus_one(n)
    for d in range(1, n):
        if n % d == 0:
            num = divexact(num, cyclotomic(d))
    return num


def content(a: Sequence[int]) -> int:
    g = 0
    for x in a:
        g = gcd(g, x)
    return g


def expand_quotient(num: Sequence[int], den_exponents: Sequence[int], k_max: int) -> list[int]:
    """Power-series coefficients 0..k_max of num / prod (1 - t^g)."""
    coeffs = list(num[: k_max + 1]) + [0] * max(0, k_max + 1 - len(num))
    for g in den_exponents:
        # multiply by 1/(1-t^g): prefix-sum with stride g
        for k in range(g, k_max + 1):
            coeffs[k] += coeffs[k - g]
    return coeffs


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def lcm_all(values: Sequence[int]) -> int:
    out = 1
    for v in values:
        out = lcm(out, v)
    return out
