"""Exact enumeration of lattice points of bounded positive definite
quadratic form value, in the style of Fincke-Pohst but with rational
arithmetic throughout, so shells are never missed to rounding."""

from __future__ import annotations

import math
from fractions import Fraction


def ldl(gram):
    """Exact LDL^T decomposition of a symmetric positive definite rational
    matrix.  Returns (C, d) with C = L^T unit upper triangular and d the
    positive diagonal, so that x^T gram x = sum_i d[i] * (C x)_i^2."""
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    C = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    for i in range(n):
        d[i] = a[i][i]
        if d[i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            C[i][j] = a[i][j] / d[i]
        for r in range(i + 1, n):
            for c in range(r, n):
                a[r][c] -= a[i][c] * a[i][r] / d[i]
                a[c][r] = a[r][c]
    return C, d


def _int_range(offset: Fraction, cap: Fraction):
    """Integers x with (x + offset)^2 <= cap, by exact integer comparison."""
    if cap < 0:
        return
    p, q = offset.numerator, offset.denominator
    r, s = cap.numerator, cap.denominator
    # (q x + p)^2 * s <= q^2 r
    m = math.isqrt((q * q * r) // s) + 1
    lo = -((m + p) // q) - 2
    hi = (m - p) // q + 2
    for x in range(lo, hi + 1):
        t = q * x + p
        if t * t * s <= q * q * r:
            yield x


def enumerate_quadratic(gram, bound, shift=None):
    """All integer vectors x with (x + shift)^T gram (x + shift) <= bound.

    ``gram`` is symmetric positive definite with rational entries; ``shift``
    is an optional rational vector (coset enumeration).  Yields tuples of
    ints together with the exact form value: (x, value).
    """
    n = len(gram)
    bound = Fraction(bound)
    if shift is None:
        shift = [Fraction(0)] * n
    else:
        shift = [Fraction(s) for s in shift]
    if n == 0:
        if bound >= 0:
            yield (), Fraction(0)
        return
    C, d = ldl(gram)

    x = [0] * n

    def rec(i: int, remaining: Fraction):
        if i < 0:
            used = bound - remaining
            yield tuple(x), used
            return
        # offset c_i = shift_i + sum_{j>i} C[i][j] (x_j + shift_j)
        off = shift[i]
        for j in range(i + 1, n):
            off += C[i][j] * (x[j] + shift[j])
        for xi in _int_range(off, remaining / d[i]):
            x[i] = xi
            t = xi + off
            yield from rec(i - 1, remaining - d[i] * t * t)
        x[i] = 0

    yield from rec(n - 1, bound)
