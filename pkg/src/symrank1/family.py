"""The exceptional Sym(2, 3) family and the traceless-slice test.

The family is the ray of symmetric 2x2x2 tensors with

    t111 = cos(theta), t112 = sin(theta), t122 = -cos(theta), t222 = -sin(theta)

(times a positive scale). Its objective on the circle is
``scale * cos(3 phi - theta)``, so it has three symmetric optima, and every
triple ``u (x) v (x) w(u, v)`` with ``w = normalize(A(u) v)`` is optimal too.
Here ``A(x)`` is the 2x2 matrix obtained by contracting one mode with ``x``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .critical import CriticalPoint, _symmetric_array, enumerate_critical_points
from .exceptions import ConvergenceError, DegenerateInputError, DimensionError
from .tensor import Tensor, as_array, hs_norm, unit

__all__ = [
    "FamilyParams",
    "SliceTraceReport",
    "FamilySolutions",
    "family_tensor",
    "slice_matrix",
    "slice_traces",
    "detect_family",
    "rotation_identity_check",
    "reflection_matrix",
    "w_map",
    "family_solutions",
]


@dataclass(frozen=True)
class FamilyParams:
    """Angle ``theta`` (stored in ``[0, 2 pi)``) and positive ``scale`` of a family member."""

    theta: float
    scale: float = 1.0

    def __post_init__(self):
        if not (self.scale > 0.0 and math.isfinite(self.scale)):
            raise ValueError(f"scale must be positive and finite, got {self.scale}")
        theta = float(self.theta) % (2.0 * math.pi)
        if theta >= 2.0 * math.pi:
            theta = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "scale", float(self.scale))


def family_tensor(p: FamilyParams) -> Tensor:
    c, s = math.cos(p.theta), math.sin(p.theta)
    # value by number of indices equal to 2
    by_count = (c, s, -c, -s)
    a = np.empty((2, 2, 2))
    for idx in itertools.product(range(2), repeat=3):
        a[idx] = p.scale * by_count[sum(idx)]
    return Tensor(a)


def reflection_matrix(psi: float) -> np.ndarray:
    """``[[cos psi, sin psi], [sin psi, -cos psi]]``."""
    return np.array([[math.cos(psi), math.sin(psi)], [math.sin(psi), -math.cos(psi)]])


def slice_matrix(T, x) -> np.ndarray:
    """``A(x)``: ``T`` contracted with ``x`` in its first mode (a 2x2 matrix for Sym(2, 3))."""
    a = np.asarray(as_array(T), dtype=float)
    return np.tensordot(np.asarray(x, dtype=float), a, axes=([0], [0]))


@dataclass(frozen=True)
class SliceTraceReport:
    """Traces of the leading 2x2 slices, keyed by the trailing (0-based) multi-index."""

    traces: dict
    all_traceless: bool
    max_abs_trace: float


def slice_traces(T, tol: float | None = None) -> SliceTraceReport:
    """``t[0, 0, rest] + t[1, 1, rest]`` for every trailing multi-index ``rest``.

    ``tol`` defaults to ``1e-12 * max(1, ||T||)``.
    """
    a = _symmetric_array(T, 2)
    if a.ndim < 2:
        raise DimensionError("slices need order >= 2")
    if tol is None:
        tol = 1e-12 * max(1.0, hs_norm(a))
    traces = {}
    for rest in itertools.product(range(2), repeat=a.ndim - 2):
        traces[rest] = float(a[(0, 0) + rest] + a[(1, 1) + rest])
    mx = max(abs(v) for v in traces.values())
    return SliceTraceReport(traces, bool(mx <= tol), float(mx))


def detect_family(T, tol: float = 1e-10) -> FamilyParams | None:
    """Parameters of the family member proportional to ``T``, or None.

    Membership means ``t122 = -t111`` and ``t222 = -t112`` within
    ``tol * ||T||``. Then ``scale = hypot(t111, t112)`` and
    ``theta = atan2(t112, t111)`` in ``[0, 2 pi)``.
    """
    a = _symmetric_array(T, 2)
    if a.ndim != 3:
        raise DimensionError("the family lives in Sym(2, 3)")
    norm = hs_norm(a)
    if norm == 0.0:
        raise DegenerateInputError("zero tensor")
    t111, t112, t122, t222 = a[0, 0, 0], a[0, 0, 1], a[0, 1, 1], a[1, 1, 1]
    if abs(t122 + t111) > tol * norm or abs(t222 + t112) > tol * norm:
        return None
    return FamilyParams(math.atan2(t112, t111), math.hypot(t111, t112))


def rotation_identity_check(p: FamilyParams, phi: float) -> float:
    """``|| A(x(phi)) - scale * R(theta - phi) ||_F`` for the family tensor.

    ``R(psi)`` is :func:`reflection_matrix`; the identity holds for every
    ``phi``, so the result is rounding error only.
    """
    A = slice_matrix(family_tensor(p), (math.cos(phi), math.sin(phi)))
    return float(np.linalg.norm(A - p.scale * reflection_matrix(p.theta - phi)))


def w_map(T, u, v) -> np.ndarray:
    """``normalize(A(u) v)``, the third factor completing an optimal triple."""
    return unit(slice_matrix(T, u) @ np.asarray(v, dtype=float))


@dataclass(frozen=True)
class FamilySolutions:
    """The three symmetric optima of a family member (sorted by angle) and its tensor."""

    params: FamilyParams
    optima: tuple
    tensor: Tensor

    def w(self, u, v) -> np.ndarray:
        return w_map(self.tensor, u, v)

    def __iter__(self):
        yield self.optima
        yield self.w


def family_solutions(p: FamilyParams, tol: float = 1e-9) -> FamilySolutions:
    """Symmetric optima of the family member, found by full critical-point enumeration.

    The enumeration must yield exactly three critical points with value
    ``scale`` (within ``tol * scale``); otherwise ConvergenceError is raised.
    Unpacks as ``(optima, w)``.
    """
    T = family_tensor(p)
    pts = enumerate_critical_points(T)
    best = [q for q in pts if abs(q.value - p.scale) <= tol * p.scale]
    if len(best) != 3:
        raise ConvergenceError(f"expected 3 optima, found {len(best)}")
    optima: tuple[CriticalPoint, ...] = tuple(sorted(best, key=lambda q: q.angle))
    return FamilySolutions(p, optima, T)
