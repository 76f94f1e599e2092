"""Dense real d-mode tensors and the multilinear primitives used everywhere else.

Modes are 0-based throughout the library (mode ``0`` is the first index);
the CLI converts to 1-based labels for display.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exceptions import DegenerateInputError, DimensionError

__all__ = [
    "Tensor",
    "Rank1Approx",
    "ModePartition",
    "as_array",
    "unit",
    "inner",
    "hs_norm",
    "decomposable",
    "contract",
    "contract_all_but",
    "is_symmetric_wrt",
    "symmetric_decomposition",
    "symmetrize",
    "random_tensor",
    "random_symmetric",
    "random_unit",
]


class Tensor:
    """Immutable dense real tensor, stored row-major (last index fastest).

    Parameters
    ----------
    data : array_like
        Nested sequence, ndarray, or flat sequence of values.
    shape : sequence of int, optional
        Extents ``(n_1, ..., n_d)``. When given, ``data`` is read as a flat
        row-major list of ``prod(shape)`` values.
    """

    __slots__ = ("_a",)

    def __init__(self, data, shape: Sequence[int] | None = None):
        a = np.array(as_array(data), dtype=float)
        if shape is not None:
            shape = tuple(int(s) for s in shape)
            if any(s < 1 for s in shape):
                raise DimensionError(f"extents must be positive, got {shape}")
            if a.size != math.prod(shape):
                raise DimensionError(
                    f"{a.size} values given for shape {shape} ({math.prod(shape)} expected)"
                )
            a = a.reshape(shape)
        if not np.all(np.isfinite(a)):
            raise ValueError("tensor entries must be finite")
        a.setflags(write=False)
        self._a = a

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def shape(self) -> tuple[int, ...]:
        return self._a.shape

    @property
    def order(self) -> int:
        return self._a.ndim

    @property
    def data(self) -> list[float]:
        """Flat row-major list of entries."""
        return self._a.ravel().tolist()

    def norm(self) -> float:
        return hs_norm(self)

    def __array__(self, dtype=None, copy=None):
        return self._a if dtype is None else self._a.astype(dtype)

    def __getitem__(self, idx):
        return self._a[idx]

    def __add__(self, other):
        return Tensor(self._a + as_array(other))

    def __sub__(self, other):
        return Tensor(self._a - as_array(other))

    def __mul__(self, c):
        return Tensor(float(c) * self._a)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return Tensor(self._a / float(c))

    def __neg__(self):
        return Tensor(-self._a)

    def __repr__(self):
        return f"Tensor(shape={self.shape})"


def as_array(x) -> np.ndarray:
    """Return the ndarray behind a Tensor, or ``np.asarray(x)`` otherwise."""
    if isinstance(x, Tensor):
        return x.array
    return np.asarray(x)


def unit(v) -> np.ndarray:
    """Normalize ``v`` to unit Euclidean length."""
    v = np.asarray(v, dtype=float)
    nrm = np.linalg.norm(v)
    if nrm == 0.0 or not np.isfinite(nrm):
        raise DegenerateInputError("cannot normalize a zero vector")
    return v / nrm


def inner(S, T) -> float:
    """Hilbert-Schmidt inner product: sum of entrywise products."""
    s, t = as_array(S), as_array(T)
    if s.shape != t.shape:
        raise DimensionError(f"shape mismatch {s.shape} vs {t.shape}")
    return float(np.dot(s.ravel(), t.ravel()))


def hs_norm(T) -> float:
    t = as_array(T)
    return math.sqrt(inner(t, t))


def decomposable(factors: Sequence) -> Tensor:
    """Outer product ``x_1 (x) ... (x) x_d``."""
    factors = [np.asarray(x, dtype=float).ravel() for x in factors]
    if not factors:
        raise DimensionError("at least one factor is required")
    if any(x.size == 0 for x in factors):
        raise DimensionError("factors must be nonempty")
    out = factors[0]
    for x in factors[1:]:
        out = np.multiply.outer(out, x)
    return Tensor(out)


def _contract_array(a: np.ndarray, assignments: Mapping[int, np.ndarray]) -> np.ndarray:
    d = a.ndim
    for mode in assignments:
        if not 0 <= mode < d:
            raise DimensionError(f"mode {mode} out of range for order {d}")
    # contract highest mode first so the remaining axis numbers stay valid
    for mode in sorted(assignments, reverse=True):
        x = np.asarray(assignments[mode])
        if x.shape != (a.shape[mode],):
            raise DimensionError(
                f"vector of length {x.size} cannot contract mode {mode} of extent {a.shape[mode]}"
            )
        a = np.tensordot(a, x, axes=([mode], [0]))
    return a


def contract(T, assignments: Mapping[int, Sequence[float]]) -> Tensor:
    """Contract the modes in ``assignments`` against the given vectors.

    Contracting every mode yields a 0-mode tensor holding
    ``<T, x_1 (x) ... (x) x_d>``.
    """
    a = as_array(T)
    vecs = {int(m): np.asarray(v, dtype=float) for m, v in assignments.items()}
    return Tensor(_contract_array(a, vecs))


def contract_all_but(T, factors: Sequence, mode: int) -> np.ndarray:
    """``T`` contracted with every factor except the one at ``mode``; returns a vector."""
    a = as_array(T)
    return _contract_array(a, {j: np.asarray(factors[j]) for j in range(a.ndim) if j != mode})


def is_symmetric_wrt(T, alpha: Iterable[int], eps: float = 0.0) -> bool:
    """True iff swapping any two indices in ``alpha`` leaves ``T`` unchanged.

    Comparison is exact unless ``eps`` > 0, in which case entries may differ
    by at most ``eps`` in absolute value. Unequal extents give False.
    """
    a = as_array(T)
    alpha = sorted(set(int(m) for m in alpha))
    for m in alpha:
        if not 0 <= m < a.ndim:
            raise DimensionError(f"mode {m} out of range for order {a.ndim}")
    if len({a.shape[m] for m in alpha}) > 1:
        return False
    for p, q in itertools.combinations(alpha, 2):
        b = np.swapaxes(a, p, q)
        if eps > 0.0:
            if np.max(np.abs(a - b), initial=0.0) > eps:
                return False
        elif not np.array_equal(a, b):
            return False
    return True


@dataclass(frozen=True)
class ModePartition:
    """Partition of the modes ``0..d-1`` into disjoint nonempty blocks."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(m) for m in b)) for b in self.blocks)
        blocks = tuple(sorted(blocks, key=lambda b: b[0] if b else -1))
        seen = [m for b in blocks for m in b]
        if any(len(b) == 0 for b in blocks):
            raise ValueError("blocks must be nonempty")
        if sorted(seen) != list(range(len(seen))):
            raise ValueError(f"blocks {blocks} do not partition 0..{len(seen) - 1}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def order(self) -> int:
        return sum(len(b) for b in self.blocks)

    def block_of(self, mode: int) -> int:
        for i, b in enumerate(self.blocks):
            if mode in b:
                return i
        raise DimensionError(f"mode {mode} not in partition")

    def one_based(self) -> list[list[int]]:
        return [[m + 1 for m in b] for b in self.blocks]

    @classmethod
    def from_one_based(cls, blocks) -> "ModePartition":
        return cls(tuple(tuple(m - 1 for m in b) for b in blocks))

    @classmethod
    def singletons(cls, d: int) -> "ModePartition":
        return cls(tuple((m,) for m in range(d)))

    @classmethod
    def full(cls, d: int) -> "ModePartition":
        return cls((tuple(range(d)),))


def symmetric_decomposition(T, eps: float = 0.0) -> ModePartition:
    """Coarsest partition of the modes into blocks w.r.t. which ``T`` is symmetric.

    Pairwise symmetry is transitive (transpositions generate the symmetric
    group), so the blocks are the connected components of the relation
    "symmetric w.r.t. {p, q}".
    """
    d = as_array(T).ndim
    parent = list(range(d))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p, q in itertools.combinations(range(d), 2):
        if find(p) != find(q) and is_symmetric_wrt(T, (p, q), eps):
            parent[find(q)] = find(p)
    groups: dict[int, list[int]] = {}
    for m in range(d):
        groups.setdefault(find(m), []).append(m)
    return ModePartition(tuple(tuple(g) for g in groups.values()))


def _orbit_gather_index(n: int, d: int) -> np.ndarray:
    # flat index of the sorted multi-index, for every multi-index
    idx = np.indices((n,) * d).reshape(d, -1)
    canon = np.sort(idx, axis=0)
    return np.ravel_multi_index(tuple(canon), (n,) * d)


def symmetrize(T) -> Tensor:
    """Average of ``T`` over all index permutations.

    Each permutation orbit receives one value, so the output is exactly
    (bitwise) symmetric.
    """
    a = as_array(T)
    d = a.ndim
    if d == 0:
        return Tensor(a)
    if len(set(a.shape)) > 1:
        raise DimensionError(f"symmetrize needs equal extents, got {a.shape}")
    perms = list(itertools.permutations(range(d)))
    s = np.zeros_like(a, dtype=float)
    for p in perms:
        s = s + np.transpose(a, p)
    s = s / len(perms)
    flat = s.ravel()[_orbit_gather_index(a.shape[0], d)]
    return Tensor(flat.reshape(a.shape))


@dataclass(frozen=True)
class Rank1Approx:
    """Rank-one candidate ``scale * u_1 (x) ... (x) u_d`` with unit factors."""

    scale: float
    factors: tuple

    def __post_init__(self):
        fs = tuple(np.asarray(u, dtype=float) for u in self.factors)
        for u in fs:
            u.setflags(write=False)
        object.__setattr__(self, "factors", fs)
        object.__setattr__(self, "scale", float(self.scale))

    @property
    def order(self) -> int:
        return len(self.factors)

    def to_tensor(self) -> Tensor:
        return decomposable(self.factors) * self.scale

    def value_on(self, T) -> float:
        """``<T, u_1 (x) ... (x) u_d>`` for this approximation's factors."""
        return float(_contract_array(as_array(T), dict(enumerate(self.factors))))

    def is_symmetric_wrt(self, alpha: Iterable[int], tol: float = 1e-9) -> bool:
        """Factors on ``alpha`` agree up to sign, so the rank-one tensor is symmetric there."""
        alpha = list(alpha)
        if len(alpha) < 2:
            return True
        u0 = self.factors[alpha[0]]
        for m in alpha[1:]:
            u = self.factors[m]
            if u.shape != u0.shape:
                return False
            if min(np.linalg.norm(u - u0), np.linalg.norm(u + u0)) > tol:
                return False
        return True


def random_tensor(shape: Sequence[int], rng: np.random.Generator) -> Tensor:
    return Tensor(rng.standard_normal(tuple(shape)))


def random_symmetric(n: int, d: int, rng: np.random.Generator) -> Tensor:
    """Gaussian i.i.d. entries, then symmetrized."""
    return symmetrize(rng.standard_normal((n,) * d))


def random_unit(n: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        v = rng.standard_normal(n)
        nrm = np.linalg.norm(v)
        if nrm > 1e-12:
            return v / nrm
