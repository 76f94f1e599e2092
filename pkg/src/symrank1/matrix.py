"""Order-2 baseline: symmetric eigenproblems and best rank-one approximation of matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import polynomial as poly
from .exceptions import DegenerateInputError, DimensionError
from .tensor import Rank1Approx, as_array

__all__ = [
    "SymSpectrum",
    "MatrixRank1",
    "sym_eigen",
    "best_rank1_matrix",
    "sigma1",
    "sym_best_rank1",
    "char_discriminant",
    "kronecker_sum_det",
]


@dataclass(frozen=True)
class SymSpectrum:
    """Eigenvalues in descending order; ``eigenvectors[:, i]`` pairs with ``eigenvalues[i]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class MatrixRank1:
    sigma: float
    left: np.ndarray
    right: np.ndarray

    def to_approx(self) -> Rank1Approx:
        return Rank1Approx(self.sigma, (self.left, self.right))


def _sign_fix(v: np.ndarray) -> np.ndarray:
    # first nonzero coordinate positive
    for c in v:
        if abs(c) > 1e-14:
            return v if c > 0 else -v
    return v


def _as_matrix(A) -> np.ndarray:
    a = np.array(as_array(A), dtype=float)
    if a.ndim != 2:
        raise DimensionError(f"expected a matrix, got order {a.ndim}")
    return a


def sym_eigen(A, tol: float = 1e-14, max_sweeps: int = 100) -> SymSpectrum:
    """Full spectrum of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius mass is at most
    ``tol * ||A||_F``.
    """
    a = _as_matrix(A)
    n = a.shape[0]
    if a.shape != (n, n) or n < 1:
        raise DimensionError(f"expected a nonempty square matrix, got {a.shape}")
    norm = float(np.linalg.norm(a))
    if np.max(np.abs(a - a.T), initial=0.0) > 1e-12 * max(1.0, norm):
        raise ValueError("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    V = np.eye(n)
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= tol * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(apq) < 1e-36 * abs(diff):
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p], a[:, q] = c * cp - s * cq, s * cp + c * cq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :], a[q, :] = c * rp - s * rq, s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p], V[:, q] = c * vp - s * vq, s * vp + c * vq
    lam = np.diag(a).copy()
    order = np.argsort(-lam, kind="stable")
    vecs = np.column_stack([_sign_fix(V[:, i]) for i in order])
    return SymSpectrum(lam[order], vecs)


def best_rank1_matrix(A) -> MatrixRank1:
    """Largest singular value and a singular pair, via the Gram matrix of the smaller side."""
    a = _as_matrix(A)
    if not np.any(a):
        raise DegenerateInputError("zero matrix has no rank-one approximation")
    m, n = a.shape
    if m <= n:
        spec = sym_eigen(a @ a.T)
        u = spec.eigenvectors[:, 0]
        w = a.T @ u
        sigma = float(np.linalg.norm(w))
        v = w / sigma
    else:
        spec = sym_eigen(a.T @ a)
        v = spec.eigenvectors[:, 0]
        w = a @ v
        sigma = float(np.linalg.norm(w))
        u = w / sigma
    return MatrixRank1(sigma, u, v)


def sigma1(A) -> float:
    a = _as_matrix(A)
    if not np.any(a):
        return 0.0
    return best_rank1_matrix(a).sigma


def sym_best_rank1(A, tol: float = 1e-10) -> tuple[Rank1Approx, bool]:
    """Symmetric best rank-one approximation ``lambda v v^T`` of a symmetric matrix.

    Returns the approximation and whether a nonsymmetric best approximation
    also exists, i.e. ``lambda_1 + lambda_n = 0`` within ``tol * ||A||``.
    On a tie the positive eigenvalue is returned.
    """
    a = _as_matrix(A)
    if not np.any(a):
        raise DegenerateInputError("zero matrix has no rank-one approximation")
    spec = sym_eigen(a)
    lam1, lamn = spec.eigenvalues[0], spec.eigenvalues[-1]
    thresh = tol * float(np.linalg.norm(a))
    if abs(lam1) >= abs(lamn) - thresh:
        lam, v = lam1, spec.eigenvectors[:, 0]
    else:
        lam, v = lamn, spec.eigenvectors[:, -1]
    nonsym = abs(lam1 + lamn) <= thresh
    return Rank1Approx(lam, (v, v)), bool(nonsym)


def char_discriminant(A) -> float:
    """Discriminant of the characteristic polynomial of a symmetric matrix.

    Computed exactly in rational arithmetic (float entries are dyadic
    rationals) and rounded once at the end, so it is zero exactly when the
    stored matrix has a repeated eigenvalue.
    """
    a = _as_matrix(A)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionError("expected a square matrix")
    if n == 1:
        return 1.0
    ints, e = poly.scaled_integers(a)
    M = [ints[i * n:(i + 1) * n] for i in range(n)]
    disc = poly.discriminant(poly.charpoly(M))
    return float(disc / Fraction(1 << (e * n * (n - 1))))


def kronecker_sum_det(A) -> float:
    """``det(A (x) I + I (x) A)``, zero iff two eigenvalues of ``A`` sum to zero."""
    a = _as_matrix(A)
    n = a.shape[0]
    eye = np.eye(n)
    return float(np.linalg.det(np.kron(a, eye) + np.kron(eye, a)))
