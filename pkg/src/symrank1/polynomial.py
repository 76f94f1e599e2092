"""Univariate polynomial helpers: exact integer/rational arithmetic and complex roots.

Polynomials are coefficient lists in *ascending* order: ``p[k]`` multiplies
``x**k``. Exact routines work on Python ints / Fractions; every finite float
is a dyadic rational, so float data enters the exact path via
:func:`scaled_integers` without rounding.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

__all__ = [
    "scaled_integers",
    "trim",
    "degree",
    "poly_eval",
    "poly_mul",
    "derivative",
    "bareiss_det",
    "charpoly",
    "sylvester_matrix",
    "resultant",
    "discriminant",
    "poly_gcd",
    "exact_quotient",
    "squarefree_part",
    "interpolate",
    "companion_matrix",
    "companion_roots",
]


def scaled_integers(values) -> tuple[list[int], int]:
    """Write finite floats as ``ints[i] / 2**e`` exactly, with a common ``e >= 0``."""
    ratios = [Fraction(float(v)) for v in np.ravel(values)]
    e = max((r.denominator.bit_length() - 1 for r in ratios), default=0)
    scale = 1 << e
    return [int(r * scale) for r in ratios], e


def trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    """Degree; the zero polynomial has degree -1."""
    return len(trim(p)) - 1


def poly_eval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_mul(p: Sequence, q: Sequence) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def derivative(p: Sequence) -> list:
    return [k * p[k] for k in range(1, len(p))]


def bareiss_det(M: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    a = [list(row) for row in M]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def charpoly(M: Sequence[Sequence[int]]) -> list[int]:
    """Coefficients of ``det(x I - M)`` for an integer matrix (Faddeev-LeVerrier).

    The divisions by ``k`` are exact over the integers.
    """
    n = len(M)
    A = [list(map(int, row)) for row in M]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        # Mk <- A @ Mk + c_prev * I
        Mk = [
            [sum(A[i][l] * Mk[l][j] for l in range(n)) + (c_prev if i == j else 0) for j in range(n)]
            for i in range(n)
        ]
        tr = sum(sum(A[i][l] * Mk[l][i] for l in range(n)) for i in range(n))
        q, r = divmod(-tr, k)
        assert r == 0
        coeffs[n - k] = q
    return coeffs


def sylvester_matrix(p: Sequence, q: Sequence, deg_p: int | None = None, deg_q: int | None = None):
    """Sylvester matrix of ``p`` and ``q`` with formal degrees ``deg_p``, ``deg_q``."""
    m = degree(p) if deg_p is None else deg_p
    l = degree(q) if deg_q is None else deg_q
    size = m + l
    pd = [p[k] if k < len(p) else 0 for k in range(m, -1, -1)]
    qd = [q[k] if k < len(q) else 0 for k in range(l, -1, -1)]
    rows = []
    for i in range(l):
        rows.append([0] * i + pd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qd + [0] * (size - l - 1 - i))
    return rows


def resultant(p: Sequence[int], q: Sequence[int], deg_p=None, deg_q=None) -> int:
    return bareiss_det(sylvester_matrix(p, q, deg_p, deg_q))


def discriminant(p: Sequence[int]) -> Fraction:
    """``(-1)**(n(n-1)/2) Res(p, p') / lc(p)``; zero iff ``p`` has a repeated root."""
    p = trim(p)
    n = len(p) - 1
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return Fraction(1)
    res = resultant(p, derivative(p))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return Fraction(sign * res, p[-1])


def _content(p):
    g = 0
    for c in p:
        g = math.gcd(g, c)
    return g


def _primitive(p):
    p = trim(p)
    if not p:
        return p
    g = _content(p)
    if p[-1] < 0:
        g = -g
    return [c // g for c in p]


def _prem(a, b):
    """Pseudo-remainder of integer polynomials: lc(b)**(da-db+1) * a mod b."""
    a = trim(a)
    b = trim(b)
    db = len(b) - 1
    lc = b[-1]
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        lead = a[-1]
        a = [c * lc for c in a]
        for i, c in enumerate(b):
            a[i + shift] -= lead * c
        a = trim(a)
    return a


def poly_gcd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Primitive gcd of integer polynomials (primitive PRS)."""
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, _primitive(r)
    return _primitive(a) if a else a


def exact_quotient(a: Sequence, b: Sequence) -> list[Fraction]:
    """Quotient of ``a`` by ``b`` over the rationals (remainder must vanish)."""
    a = [Fraction(c) for c in trim(a)]
    b = [Fraction(c) for c in trim(b)]
    db = len(b) - 1
    if len(a) - 1 < db:
        return [Fraction(0)]
    q = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        coef = a[k + db] / b[-1]
        q[k] = coef
        for i, c in enumerate(b):
            a[k + i] -= coef * c
    if any(trim(a)):
        raise ArithmeticError("division leaves a remainder")
    return q


def squarefree_part(p: Sequence[int]) -> tuple[list[int], int]:
    """Square-free part of an integer polynomial and the degree of ``gcd(p, p')``."""
    p = _primitive(p)
    if len(p) <= 2:
        return p, 0
    g = poly_gcd(p, derivative(p))
    dg = len(g) - 1
    if dg <= 0:
        return p, 0
    q = exact_quotient(p, g)
    lcm = 1
    for c in q:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return _primitive([int(c * lcm) for c in q]), dg


def interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Exact interpolating polynomial through ``(xs[i], ys[i])`` (Newton form)."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    poly[0] = coef[n - 1]
    deg = 0
    # Horner on the Newton basis: poly = poly * (x - xs[k]) + coef[k]
    for k in range(n - 2, -1, -1):
        new = [Fraction(0)] * n
        for i in range(deg + 1):
            new[i + 1] += poly[i]
            new[i] -= poly[i] * xs[k]
        new[0] += coef[k]
        poly = new
        deg += 1
    return trim(poly) or [Fraction(0)]


def companion_matrix(coeffs: Sequence[complex]) -> np.ndarray:
    """Frobenius companion matrix of the polynomial with ascending ``coeffs``."""
    c = np.asarray(trim(list(coeffs)), dtype=complex)
    m = c.size - 1
    if m < 1:
        return np.zeros((0, 0), dtype=complex)
    C = np.zeros((m, m), dtype=complex)
    C[1:, :-1] = np.eye(m - 1)
    C[:, -1] = -c[:-1] / c[-1]
    return C


def companion_roots(coeffs: Sequence[complex]) -> np.ndarray:
    """All complex roots, as eigenvalues of the companion matrix.

    Leading zeros (exact) are dropped first, so the degree is the actual one.
    """
    C = companion_matrix(coeffs)
    if C.size == 0:
        return np.zeros(0, dtype=complex)
    return np.linalg.eigvals(C)
