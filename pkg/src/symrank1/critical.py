"""Complete critical-point enumeration and eigenpair census for 2-dimensional symmetric tensors.

For ``T`` in Sym(2, d) the restriction ``f(phi) = <T, x(phi)^d>`` with
``x(phi) = (cos phi, sin phi)`` is a trigonometric polynomial of frequency at
most ``d``. Its critical points are the unit-circle roots of a degree ``2d``
polynomial in ``z = exp(i phi)``, so they can all be found at once.

The eigensystem ``T x^{d-1} = s x`` (``s = +1`` or ``-1``) is solved over the
complex numbers by eliminating ``x2`` with an exactly computed Sylvester
resultant, then back-substituting and polishing with Newton's method.

A real solution ``x`` and a sphere critical point ``(y, lam)`` correspond via
``x = |lam|**(-1/(d-2)) * y`` and ``s = sign(lam)``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import polynomial as poly
from .exceptions import ConvergenceError, DegenerateInputError, DimensionError
from .tensor import as_array, hs_norm, is_symmetric_wrt

__all__ = [
    "TrigPolynomial",
    "CriticalPoint",
    "EigenpairSolution",
    "EigensystemSolve",
    "CensusReport",
    "PerturbationCheck",
    "angle_objective",
    "enumerate_critical_points",
    "genericity_check",
    "uniqueness_gap",
    "solve_eigensystem",
    "eigenpair_census",
    "eigenpair_sensitivity",
    "sphere_to_eigenpair",
    "eigenpair_to_sphere",
    "eigen_residual",
]

TWO_PI = 2.0 * math.pi


def _symmetric_array(T, n: int | None = 2) -> np.ndarray:
    a = np.asarray(as_array(T), dtype=float)
    if a.ndim < 1:
        raise DimensionError("expected a tensor of order >= 1")
    if n is not None and a.shape != (n,) * a.ndim:
        raise DimensionError(f"expected all extents equal to {n}, got {a.shape}")
    eps = 1e-12 * max(1.0, float(np.max(np.abs(a))))
    if not is_symmetric_wrt(a, range(a.ndim), eps):
        raise ValueError("tensor is not symmetric")
    return a


def _slice_entries(a: np.ndarray) -> np.ndarray:
    """``t[k]`` is the entry with ``d - k`` indices equal to 1 and ``k`` equal to 2."""
    d = a.ndim
    return np.array([a[(0,) * (d - k) + (1,) * k] for k in range(d + 1)])


def _power(a: np.ndarray, x: np.ndarray, times: int) -> np.ndarray:
    """Contract the last ``times`` modes of ``a`` with ``x``."""
    out = a
    for _ in range(times):
        out = np.tensordot(out, x, axes=([out.ndim - 1], [0]))
    return out


def eigen_residual(T, x, sign: float = 1.0) -> float:
    """``||T x^{d-1} - sign * x||`` (``x`` may be complex)."""
    a = np.asarray(as_array(T), dtype=float)
    x = np.asarray(x)
    return float(np.linalg.norm(_power(a, x, a.ndim - 1) - sign * x))


# ---------------------------------------------------------------- trig form


@dataclass(frozen=True)
class TrigPolynomial:
    """``f(phi) = <T, (cos phi, sin phi)^d>`` in two equivalent forms.

    Attributes
    ----------
    d : int
        Order of the tensor, also the top frequency.
    monomial : ndarray, shape (d + 1,)
        ``monomial[k]`` multiplies ``cos(phi)**(d-k) * sin(phi)**k``.
    cos_coeffs, sin_coeffs : ndarray, shape (d + 1,)
        ``f = sum_m cos_coeffs[m] cos(m phi) + sin_coeffs[m] sin(m phi)``.
    laurent : ndarray, shape (2d + 1,)
        ``f = sum_j laurent[j] z**(j - d)`` with ``z = exp(i phi)``.
    """

    d: int
    monomial: np.ndarray
    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray
    laurent: np.ndarray = field(repr=False)

    def __call__(self, phi):
        m = np.arange(self.d + 1)
        ph = np.multiply.outer(np.asarray(phi, dtype=float), m)
        return np.cos(ph) @ self.cos_coeffs + np.sin(ph) @ self.sin_coeffs

    def derivative(self, phi, order: int = 1):
        """``order``-th derivative in ``phi``."""
        m = np.arange(self.d + 1)
        ph = np.multiply.outer(np.asarray(phi, dtype=float), m)
        c, s = self.cos_coeffs * m**order, self.sin_coeffs * m**order
        # d/dphi cycles (cos, sin) -> (-sin, cos)
        shift = order % 4
        if shift == 0:
            return np.cos(ph) @ c + np.sin(ph) @ s
        if shift == 1:
            return -np.sin(ph) @ c + np.cos(ph) @ s
        if shift == 2:
            return -np.cos(ph) @ c - np.sin(ph) @ s
        return np.sin(ph) @ c - np.cos(ph) @ s

    def is_zero(self, tol: float = 0.0) -> bool:
        return bool(np.max(np.abs(self.laurent)) <= tol)


def angle_objective(T) -> TrigPolynomial:
    """The objective ``<T, x^d>`` on the unit circle of a Sym(2, d) tensor."""
    a = _symmetric_array(T, 2)
    d = a.ndim
    t = _slice_entries(a)
    mono = np.array([math.comb(d, k) * t[k] for k in range(d + 1)])
    # z^d f = sum_k mono[k] (z^2+1)^(d-k) (z^2-1)^k / (2^(d-k) (2i)^k)
    plus = np.array([1.0, 0.0, 1.0])
    minus = np.array([-1.0, 0.0, 1.0])
    lau = np.zeros(2 * d + 1, dtype=complex)
    for k in range(d + 1):
        if mono[k] == 0.0:
            continue
        term = np.polynomial.polynomial.polymul(
            np.polynomial.polynomial.polypow(plus, d - k),
            np.polynomial.polynomial.polypow(minus, k),
        )
        lau[: term.size] += mono[k] * term / (2.0 ** (d - k) * (2j) ** k)
    cos_c = np.zeros(d + 1)
    sin_c = np.zeros(d + 1)
    cos_c[0] = lau[d].real
    for m in range(1, d + 1):
        cos_c[m] = 2.0 * lau[d + m].real
        sin_c[m] = -2.0 * lau[d + m].imag
    return TrigPolynomial(d, mono, cos_c, sin_c, lau)


# ------------------------------------------------------- critical points


@dataclass(frozen=True)
class CriticalPoint:
    """A stationary point of ``<T, x^d>`` on the unit circle.

    ``residual`` is ``||T x^{d-1} - value * x||``.
    """

    point: np.ndarray
    value: float
    angle: float
    residual: float


def _circle_point(phi: float) -> np.ndarray:
    return np.array([math.cos(phi), math.sin(phi)])


def _make_point(a: np.ndarray, phi: float) -> CriticalPoint:
    phi = phi % TWO_PI
    if phi >= TWO_PI:
        phi = 0.0
    x = _circle_point(phi)
    g = _power(a, x, a.ndim - 1)
    value = float(g @ x)
    return CriticalPoint(x, value, phi, float(np.linalg.norm(g - value * x)))


def _trim_relative(c: np.ndarray, rel: float) -> np.ndarray:
    """Drop negligible coefficients at both ends; returns ``c`` shifted and cut."""
    scale = np.max(np.abs(c))
    keep = np.nonzero(np.abs(c) > rel * scale)[0]
    return c[keep[0]: keep[-1] + 1]


def enumerate_critical_points(
    T, circle_tol: float = 1e-8, dedupe_tol: float = 1e-9
) -> list[CriticalPoint]:
    """Every critical point of ``<T, x^d>`` on the unit circle, sorted by angle.

    ``z^d f'(phi)`` is a polynomial of degree ``2d`` in ``z = exp(i phi)``.
    Its roots come from a companion matrix; those within ``circle_tol`` of
    the unit circle are polished by Newton's method on ``f'`` and merged
    when closer than ``dedupe_tol`` in angle.

    Raises
    ------
    DegenerateInputError
        If ``f`` is constant on the circle (every point is critical).
    """
    a = _symmetric_array(T, 2)
    f = angle_objective(a)
    d = f.d
    scale = float(np.max(np.abs(f.laurent)))
    if scale == 0.0:
        raise DegenerateInputError("objective vanishes identically on the circle")
    dcoef = np.array([1j * (j - d) * f.laurent[j] for j in range(2 * d + 1)])
    if np.max(np.abs(dcoef)) <= 1e-14 * scale:
        raise DegenerateInputError("objective is constant on the circle; every point is critical")
    roots = poly.companion_roots(_trim_relative(dcoef, 1e-15))
    roots = roots[np.abs(np.abs(roots) - 1.0) <= circle_tol]
    phis = []
    for z in roots:
        phi = math.atan2(z.imag, z.real)
        g = abs(float(f.derivative(phi)))
        for _ in range(8):
            h = float(f.derivative(phi, 2))
            if h == 0.0:
                break
            cand = phi - float(f.derivative(phi)) / h
            gc = abs(float(f.derivative(cand)))
            if gc >= g:
                break
            phi, g = cand, gc
        phis.append(phi % TWO_PI)
    phis.sort()
    merged: list[float] = []
    for phi in phis:
        if merged and phi - merged[-1] <= dedupe_tol:
            continue
        merged.append(phi)
    if len(merged) > 1 and merged[0] + TWO_PI - merged[-1] <= dedupe_tol:
        merged.pop()
    return [_make_point(a, phi) for phi in merged]


def _antipode_classes(points, d, tol):
    """Group points into antipodal pairs; returns (classes, pairing_ok)."""
    m = len(points)
    used = [False] * m
    classes = []
    ok = True
    sign = -1.0 if d % 2 else 1.0
    for i, p in enumerate(points):
        if used[i]:
            continue
        used[i] = True
        match = None
        for j in range(m):
            if used[j]:
                continue
            dphi = abs((points[j].angle - p.angle) % TWO_PI - math.pi)
            if dphi <= 1e-7:
                match = j
                break
        if match is None:
            ok = False
            classes.append((p,))
            continue
        used[match] = True
        q = points[match]
        if abs(q.value - sign * p.value) > tol:
            ok = False
        classes.append((p, q))
    return classes, ok


def _tolerance(points, rel):
    return rel * max(1.0, max((abs(p.value) for p in points), default=0.0))


def genericity_check(points, d: int, tol: float = 1e-9) -> tuple[bool, bool]:
    """``(distinct_values, pairing_ok)`` for a complete list of critical points.

    ``pairing_ok``: every point ``y`` has its antipode ``-y`` in the list with
    value ``(-1)**d`` times its own. ``distinct_values``: the antipodal classes
    have nonzero and pairwise distinct ``|value|``. Values are compared with
    tolerance ``tol * max(1, max |value|)``.
    """
    tol = _tolerance(points, tol)
    classes, pairing_ok = _antipode_classes(points, d, tol)
    mags = sorted(abs(c[0].value) for c in classes)
    distinct = all(m > tol for m in mags) and all(b - a > tol for a, b in zip(mags, mags[1:]))
    return bool(distinct), bool(pairing_ok)


def uniqueness_gap(points, d: int) -> float:
    """Difference of the two largest ``|value|`` among antipodal classes.

    A lone class (the optimum is its only critical pair) has gap ``|value|``.
    """
    classes, _ = _antipode_classes(points, d, _tolerance(points, 1e-9))
    mags = sorted((abs(c[0].value) for c in classes), reverse=True) + [0.0]
    return float(mags[0] - mags[1])


# ---------------------------------------------------------- eigenpairs


@dataclass(frozen=True)
class EigenpairSolution:
    """A solution of ``T x^{d-1} = system_sign * x`` with ``x != 0``.

    ``x`` is real when the solution is real, complex otherwise.
    ``multiplicity_flag`` marks a singular Jacobian (non-simple solution).
    """

    x: np.ndarray
    system_sign: int
    multiplicity_flag: bool = False
    residual: float = 0.0

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.x)


def sphere_to_eigenpair(p: CriticalPoint, d: int, T=None) -> EigenpairSolution:
    """Scale a critical point to a real eigensystem solution.

    ``x = |value|**(-1/(d-2)) * point`` solves ``T x^{d-1} = sign(value) x``.
    """
    if d < 3:
        raise DimensionError("the eigensystem correspondence needs d >= 3")
    if p.value == 0.0:
        raise DegenerateInputError("a zero critical value has no eigensystem solution")
    s = 1 if p.value > 0 else -1
    x = abs(p.value) ** (-1.0 / (d - 2)) * np.asarray(p.point, dtype=float)
    res = eigen_residual(T, x, s) if T is not None else float("nan")
    return EigenpairSolution(x, s, False, res)


def eigenpair_to_sphere(sol: EigenpairSolution, d: int, T=None) -> CriticalPoint:
    """Inverse of :func:`sphere_to_eigenpair` for a real solution."""
    if not sol.is_real:
        raise ValueError("only real solutions correspond to sphere critical points")
    if d < 3:
        raise DimensionError("the eigensystem correspondence needs d >= 3")
    x = np.asarray(sol.x, dtype=float)
    r = float(np.linalg.norm(x))
    if r == 0.0:
        raise DegenerateInputError("zero vector")
    y = x / r
    value = sol.system_sign * r ** (-(d - 2))
    phi = math.atan2(y[1], y[0]) % TWO_PI
    if T is not None:
        a = np.asarray(as_array(T), dtype=float)
        res = float(np.linalg.norm(_power(a, y, d - 1) - value * y))
    else:
        res = float("nan")
    return CriticalPoint(y, value, phi, res)


@dataclass(frozen=True)
class EigensystemSolve:
    """All nonzero complex solutions of one eigensystem, with elimination diagnostics.

    ``conclusive`` is False when the resultant in ``x1`` vanishes identically
    or drops below its generic degree ``(d-1)**2`` (solutions at infinity);
    counts are then not trustworthy.
    """

    system_sign: int
    solutions: tuple
    conclusive: bool
    resultant_degree: int
    repeated_resultant_roots: bool

    @property
    def real(self) -> tuple:
        return tuple(s for s in self.solutions if s.is_real)


def _sym2_system(t: np.ndarray, d: int, s: int):
    """Coefficients in ``x2`` (each a polynomial in ``x1``) of both equations."""
    p = []
    q = []
    for k in range(d):
        c = math.comb(d - 1, k)
        pk = [0] * (d - 1 - k) + [c * t[k]]
        qk = [0] * (d - 1 - k) + [c * t[k + 1]]
        if k == 0:
            pk = _add(pk, [0, -s])
        if k == 1:
            qk = _add(qk, [-s])
        p.append(pk)
        q.append(qk)
    return p, q


def _add(u, v):
    n = max(len(u), len(v))
    return [(u[i] if i < len(u) else 0) + (v[i] if i < len(v) else 0) for i in range(n)]


def _resultant_x1(p, q, deg) -> list[Fraction]:
    """``Res_{x2}(p, q)`` as an exact polynomial in ``x1`` by evaluation and interpolation."""
    bound = 2 * deg * deg
    nodes = list(range(bound + 1))
    vals = []
    for x1 in nodes:
        pe = [poly.poly_eval(c, x1) for c in p]
        qe = [poly.poly_eval(c, x1) for c in q]
        vals.append(poly.resultant(pe, qe, deg, deg))
    return poly.interpolate(nodes, vals)


def _to_float_coeffs(c) -> np.ndarray:
    """Integer coefficients to floats, rescaled by a power of two to avoid overflow."""
    big = max(abs(v) for v in c)
    shift = max(big.bit_length() - 60, 0)
    return np.array([float(Fraction(v, 1 << shift)) for v in c])


def _newton_sym2(t, d, s, X, iters=40):
    """Batched complex Newton on ``T x^{d-1} - s x`` for Sym(2, d); ``X`` has shape (m, 2)."""
    X = np.array(X, dtype=complex)
    c1 = np.array([math.comb(d - 1, k) for k in range(d)], dtype=float)
    c2 = np.array([math.comb(d - 2, k) for k in range(d - 1)], dtype=float)

    def mono(X, deg):
        k = np.arange(deg + 1)
        return X[:, :1] ** (deg - k) * X[:, 1:] ** k

    def F(X):
        m = mono(X, d - 1) * c1
        return np.stack([m @ t[:d], m @ t[1:]], axis=1) - s * X

    def J(X):
        m = mono(X, d - 2) * c2
        j00, j01, j11 = m @ t[: d - 1], m @ t[1:d], m @ t[2:]
        return (d - 1) * np.array([[j00, j01], [j01, j11]]).transpose(2, 0, 1) - s * np.eye(2)

    for _ in range(iters):
        Fx = F(X)
        Jx = J(X)
        det = Jx[:, 0, 0] * Jx[:, 1, 1] - Jx[:, 0, 1] * Jx[:, 1, 0]
        ok = np.abs(det) > 1e-300
        safe = np.where(ok, det, 1.0)
        dx0 = (Jx[:, 1, 1] * Fx[:, 0] - Jx[:, 0, 1] * Fx[:, 1]) / safe
        dx1 = (-Jx[:, 1, 0] * Fx[:, 0] + Jx[:, 0, 0] * Fx[:, 1]) / safe
        step = np.where(ok[:, None], np.stack([dx0, dx1], axis=1), 0.0)
        X = X - step
        if np.all(np.abs(step) <= 1e-16 * np.maximum(1.0, np.abs(X))):
            break
    Fx = F(X)
    return X, np.linalg.norm(Fx, axis=1), J(X)


def solve_eigensystem(T, system_sign: int = 1) -> EigensystemSolve:
    """All nonzero complex solutions of ``T x^{d-1} = system_sign * x`` for Sym(2, d), d >= 3.

    The two equations are scaled to integer coefficients (floats are dyadic
    rationals) and ``x2`` is eliminated with an exact Sylvester resultant.
    Its distinct roots give candidate ``x1`` values; the matching ``x2``
    values are roots of either equation at that ``x1``. Candidates are
    polished by Newton's method in C^2, kept when the residual is at most
    ``1e-8 * max(1, ||x||)``, and merged within ``1e-7`` relative distance.
    A solution is real when its imaginary part is at most ``1e-8 * max(1, ||x||)``.
    """
    if system_sign not in (1, -1):
        raise ValueError("system_sign must be +1 or -1")
    a = _symmetric_array(T, 2)
    d = a.ndim
    if d < 3:
        raise DimensionError("the eigensystem census needs d >= 3")
    if not np.any(a):
        raise DegenerateInputError("zero tensor")
    s = system_sign
    t = _slice_entries(a)
    deg = d - 1

    ints, e = poly.scaled_integers(t)
    pi, qi = _sym2_system(ints, d, s * (1 << e))
    R = _resultant_x1(pi, qi, deg)
    R = poly.trim(R)
    rdeg = len(R) - 1
    conclusive = rdeg == deg * deg
    if rdeg < 0:
        return EigensystemSolve(s, (), False, -1, False)

    lcm = 1
    for c in R:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    Rint = [int(c * lcm) for c in R]
    sqf, gdeg = poly.squarefree_part(Rint)
    x1_roots = poly.companion_roots(_to_float_coeffs(sqf)) if len(sqf) > 1 else np.zeros(0)

    pf, qf = _sym2_system(t, d, s)
    cands = []
    for r in x1_roots:
        for eq in (pf, qf):
            coeffs = np.array([poly.poly_eval(c, r) for c in eq], dtype=complex)
            big = np.max(np.abs(coeffs))
            if big <= 1e-12 * max(1.0, float(np.max(np.abs(t)))):
                continue
            coeffs = np.where(np.abs(coeffs) <= 1e-14 * big, 0.0, coeffs)
            for x2 in poly.companion_roots(coeffs):
                cands.append((r, x2))
    if not cands:
        return EigensystemSolve(s, (), conclusive, rdeg, gdeg > 0)

    X, res, J = _newton_sym2(t, d, s, cands)
    tnorm = hs_norm(a)
    min_norm = 0.5 * tnorm ** (-1.0 / (d - 2))
    sols: list[np.ndarray] = []
    info = []
    order = np.argsort(res, kind="stable")
    for i in order:
        x = X[i]
        nx = float(np.linalg.norm(x))
        if not np.all(np.isfinite(x)) or res[i] > 1e-8 * max(1.0, nx) or nx < min_norm:
            continue
        if any(np.linalg.norm(x - y) <= 1e-7 * max(1.0, nx) for y in sols):
            continue
        sols.append(x)
        info.append((res[i], J[i]))
    out = []
    for x, (r, Jx) in zip(sols, info):
        nx = max(1.0, float(np.linalg.norm(x)))
        sv = np.linalg.svd(Jx, compute_uv=False)
        flag = bool(sv[-1] <= 1e-8 * max(sv[0], 1.0))
        if np.max(np.abs(x.imag)) <= 1e-8 * nx:
            xr = x.real.copy()
            out.append(EigenpairSolution(xr, s, flag, eigen_residual(a, xr, s)))
        else:
            out.append(EigenpairSolution(x, s, flag, float(r)))
    out.sort(key=lambda z: (not z.is_real, float(np.real(z.x[0])), float(np.real(z.x[1])),
                            float(np.imag(z.x[0])), float(np.imag(z.x[1]))))
    return EigensystemSolve(s, tuple(out), conclusive, rdeg, gdeg > 0)


# --------------------------------------------------------------- census


@dataclass(frozen=True)
class CensusReport:
    """Counts of eigensystem solutions for a Sym(2, d) tensor against the known bounds.

    ``complex_count`` and ``real_count_pos`` refer to ``T x^{d-1} = x``;
    ``complex_count_neg`` and ``real_count_neg`` to ``T x^{d-1} = -x``. For
    odd ``d`` the second system is the first one under ``x -> -x``, so its
    counts equal the first ones and only ``real_count_pos`` enters the real
    bound; for even ``d`` the real bound applies to the sum.

    ``bounds_satisfied`` is None when the census is inconclusive.
    ``nongeneric`` is set when critical values collide, pairing fails, a
    solution is not simple, or the complex count is below its bound.
    """

    d: int
    n: int
    complex_count: int
    complex_count_neg: int
    real_count_pos: int
    real_count_neg: int
    bound_complex: int
    bound_real: int
    bounds_satisfied: bool | None
    distinct_critical_values: bool
    antipodal_pairing_ok: bool
    conclusive: bool
    nongeneric: bool
    sphere_consistent: bool
    multiple_solutions: bool

    def to_dict(self) -> dict:
        return asdict(self)


def _real_bound(d: int, n: int = 2) -> int:
    b = ((d - 1) ** n - 1) // (d - 2)
    return b if d % 2 else 2 * b


def eigenpair_census(T) -> CensusReport:
    """Complex and real eigenpair counts for Sym(2, d), d >= 3, checked against the bounds.

    Also cross-checks the real solutions against the sphere critical points
    (``sphere_consistent``): each critical point with nonzero value must map
    to a real solution and the counts must agree.
    """
    a = _symmetric_array(T, 2)
    d = a.ndim
    if d < 3:
        raise DimensionError("the eigensystem census needs d >= 3")
    pos = solve_eigensystem(a, 1)
    if d % 2:
        neg_complex = len(pos.solutions)
        neg_real = len(pos.real)
        conclusive = pos.conclusive
        sols = list(pos.solutions)
    else:
        neg = solve_eigensystem(a, -1)
        neg_complex = len(neg.solutions)
        neg_real = len(neg.real)
        conclusive = pos.conclusive and neg.conclusive
        sols = list(pos.solutions) + list(neg.solutions)

    points = enumerate_critical_points(a)
    distinct, pairing = genericity_check(points, d)

    bound_c = (d - 1) ** 2 - 1
    bound_r = _real_bound(d)
    real_pos = len(pos.real)
    real_total = real_pos if d % 2 else real_pos + neg_real
    if conclusive:
        satisfied = len(pos.solutions) <= bound_c and neg_complex <= bound_c and real_total <= bound_r
    else:
        satisfied = None

    nonzero = [p for p in points if abs(p.value) > 1e-12 * max(1.0, hs_norm(a))]
    if d % 2:
        expected_real = sum(1 for p in nonzero if p.value > 0)
    else:
        expected_real = len(nonzero)
    consistent = expected_real == real_total
    for p in nonzero:
        if d % 2 and p.value < 0:
            continue
        x = sphere_to_eigenpair(p, d).x
        pool = [s.x for s in sols if s.is_real and s.system_sign == (1 if p.value > 0 else -1)]
        if not any(np.linalg.norm(x - y) <= 1e-6 * max(1.0, np.linalg.norm(x)) for y in pool):
            consistent = False
    multiple = any(s.multiplicity_flag for s in sols)
    nongeneric = (not distinct) or (not pairing) or multiple or len(pos.solutions) < bound_c
    return CensusReport(
        d=d,
        n=2,
        complex_count=len(pos.solutions),
        complex_count_neg=neg_complex,
        real_count_pos=real_pos,
        real_count_neg=neg_real,
        bound_complex=bound_c,
        bound_real=bound_r,
        bounds_satisfied=satisfied,
        distinct_critical_values=distinct,
        antipodal_pairing_ok=pairing,
        conclusive=bool(conclusive),
        nongeneric=bool(nongeneric),
        sphere_consistent=bool(consistent),
        multiple_solutions=bool(multiple),
    )


# ---------------------------------------------------------- perturbation


@dataclass(frozen=True)
class PerturbationCheck:
    """First-order response ``x^T x_1`` of a real eigenpair under ``T -> T + eps S``."""

    direction: np.ndarray = field(repr=False)
    base: EigenpairSolution
    predicted_overlap: float
    fd_overlap: float
    rel_error: float


def _newton_real(a, x0, s, tol=1e-14, max_iter=50):
    d = a.ndim
    x = np.array(x0, dtype=float)
    eye = np.eye(x.size)
    for _ in range(max_iter):
        M = _power(a, x, d - 2)
        F = M @ x - s * x
        step = np.linalg.solve((d - 1) * M - s * eye, F)
        x = x - step
        if np.linalg.norm(step) <= tol * max(1.0, np.linalg.norm(x)):
            return x
    raise ConvergenceError("Newton continuation did not converge")


def eigenpair_sensitivity(T, S, x: EigenpairSolution, eps: float = 1e-6) -> PerturbationCheck:
    """Compare the first-order overlap formula against central finite differences.

    For ``T x^{d-1} = s x`` and ``T + eps S`` with solution
    ``x + eps x_1 + O(eps^2)``, ``x^T x_1 = s <S, x^d> / (2 - d)``. The finite
    difference re-solves the system for ``T +- eps S`` by Newton's method
    from ``x`` and reports ``x^T (x(eps) - x(-eps)) / (2 eps)``.

    Raises
    ------
    DegenerateInputError
        If ``x`` is complex or flagged as a non-simple solution.
    ConvergenceError
        If the continuation does not converge.
    """
    a = _symmetric_array(T, None)
    sa = _symmetric_array(S, None)
    if sa.shape != a.shape:
        raise DimensionError("T and S must have the same shape")
    d = a.ndim
    if d < 3:
        raise DimensionError("needs d >= 3")
    if not x.is_real or x.multiplicity_flag:
        raise DegenerateInputError("sensitivity needs a simple real solution")
    s = x.system_sign
    x0 = np.asarray(x.x, dtype=float)
    predicted = s * float(_power(sa, x0, d)) / (2 - d)
    xp = _newton_real(a + eps * sa, x0, s)
    xm = _newton_real(a - eps * sa, x0, s)
    fd = float(x0 @ (xp - xm)) / (2.0 * eps)
    rel = abs(predicted - fd) / max(1.0, abs(predicted))
    return PerturbationCheck(sa, x, predicted, fd, rel)
