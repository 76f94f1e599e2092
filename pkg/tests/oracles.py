"""Independent reference computations used only by the tests.

Each oracle avoids the code path it checks: plain Python loops instead of
tensordot/einsum, numpy's LAPACK eigensolver instead of the Jacobi sweeps,
and a dense angle grid with bracketing root refinement instead of the
companion-matrix enumeration.
"""

import itertools
import math

import numpy as np
from scipy.optimize import brentq


def naive_inner(S, T):
    S, T = np.asarray(S), np.asarray(T)
    total = 0.0
    for idx in itertools.product(*(range(n) for n in S.shape)):
        total += S[idx] * T[idx]
    return total


def naive_outer(factors):
    shape = tuple(len(x) for x in factors)
    out = np.zeros(shape)
    for idx in itertools.product(*(range(n) for n in shape)):
        p = 1.0
        for x, i in zip(factors, idx):
            p *= x[i]
        out[idx] = p
    return out


def naive_contract(T, assignments):
    """Sum out the assigned modes with explicit loops."""
    T = np.asarray(T)
    d = T.ndim
    free = [m for m in range(d) if m not in assignments]
    out = np.zeros(tuple(T.shape[m] for m in free))
    for idx in itertools.product(*(range(n) for n in T.shape)):
        w = T[idx]
        for m, x in assignments.items():
            w *= x[idx[m]]
        out[tuple(idx[m] for m in free)] += w
    return out


def naive_slice_traces(T):
    T = np.asarray(T)
    return {rest: T[(0, 0) + rest] + T[(1, 1) + rest]
            for rest in itertools.product(range(2), repeat=T.ndim - 2)}


def circle_objective(T, phi):
    """``<T, x(phi)^d>`` for an array of angles, by direct contraction."""
    T = np.asarray(T, dtype=float)
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    X = np.stack([np.cos(phi), np.sin(phi)])
    out = np.einsum("i...,ik->...k", T, X)
    for _ in range(T.ndim - 1):
        out = np.einsum("i...k,ik->...k", out, X)
    return out


def circle_derivative(T, phi):
    """``d <T, x^d>/dphi = d <T, x^{d-1} (x) x'>`` (for symmetric ``T``)."""
    T = np.asarray(T, dtype=float)
    d = T.ndim
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    X = np.stack([np.cos(phi), np.sin(phi)])
    dX = np.stack([-np.sin(phi), np.cos(phi)])
    out = np.einsum("i...,ik->...k", T, dX)
    for _ in range(d - 1):
        out = np.einsum("i...k,ik->...k", out, X)
    return d * out


def grid_critical_angles(T, points=100_000):
    """Sign changes of the circle derivative on a uniform grid, refined by brentq."""
    grid = np.linspace(0.0, 2.0 * math.pi, points, endpoint=False)
    g = circle_derivative(T, grid)
    roots = []
    for i in range(points):
        j = (i + 1) % points
        a, b = grid[i], grid[j] if j else 2.0 * math.pi
        if g[i] == 0.0:
            roots.append(a)
        elif g[i] * g[j] < 0.0:
            roots.append(brentq(lambda p: float(circle_derivative(T, p)[0]), a, b, xtol=1e-15))
    return np.array(roots) % (2.0 * math.pi)


def circular_distance(a, b):
    d = abs(a - b) % (2.0 * math.pi)
    return min(d, 2.0 * math.pi - d)


def spectral_discriminant(A):
    lam = np.linalg.eigvalsh(A)
    return math.prod((lam[i] - lam[j]) ** 2 for i in range(len(lam)) for j in range(i + 1, len(lam)))


def spectral_kron_det(A):
    lam = np.linalg.eigvalsh(A)
    return math.prod(li + lj for li in lam for lj in lam)
