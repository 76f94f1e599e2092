"""Best rank-one approximation by alternating (HOPM) updates with multi-start.

All restarts run together as one batch: every factor is stored as an array
of shape ``(restarts, n)`` and contractions are batched ``einsum`` calls.

Three flavours share one engine, differing only in how modes are tied:

* :func:`solve_general` - every mode has its own factor (classic HOPM/ALS);
* :func:`solve_symmetric` - one factor shared by all modes;
* :func:`solve_tied` - one factor per block of a :class:`ModePartition`.

For a tied block the update ``x <- normalize(T x ... x)`` is not guaranteed
to increase the objective, so it is safeguarded by a convex damping step
``normalize((1 - g) x + g x_new)``: ``g`` runs over ``1, 1/2, ..., 2**-12``,
the best trial is taken, and the step is skipped if even that one would
decrease the objective. Untied modes use the plain HOPM update, which is
monotone by construction.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DegenerateInputError, DimensionError
from .matrix import sigma1
from .tensor import ModePartition, Rank1Approx, as_array, contract_all_but, hs_norm, is_symmetric_wrt

__all__ = [
    "SolverConfig",
    "SolveResult",
    "Certificate",
    "hopm_step",
    "solve_general",
    "solve_symmetric",
    "solve_tied",
    "solve",
    "stationarity_residual",
    "certify",
    "permuted_solutions",
]

_LETTERS = "abcdefghijklmnopqrstuvwxy"
_GAMMAS = 2.0 ** -np.arange(13)


@dataclass(frozen=True)
class SolverConfig:
    max_iters: int = 3000
    tol: float = 1e-10
    restarts: int = 16
    seed: int = 0
    symmetric_mode: bool = False

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


@dataclass(frozen=True)
class SolveResult:
    """Best restart of a multi-start run.

    ``history`` holds the objective (sign-adjusted, so it should never
    decrease) after every iteration of the winning restart. ``monotone``
    reports whether that held for every restart, up to a rounding slack of
    ``64 * eps * ||T||``.
    """

    approx: Rank1Approx
    value: float
    residual: float
    iterations: int
    restart_index: int
    converged: bool
    monotone: bool
    history: tuple = field(repr=False, default=())
    restart_values: tuple = field(repr=False, default=())
    restart_residuals: tuple = field(repr=False, default=())

    @property
    def factors(self):
        return self.approx.factors


@dataclass(frozen=True)
class Certificate:
    is_stationary: bool
    residual: float
    pythagoras_gap: float
    cert_gap: float
    value: float


def hopm_step(T, factors, mode: int) -> np.ndarray:
    """One HOPM update: ``normalize(T x_{j != mode} u_j)``."""
    g = contract_all_but(T, factors, mode)
    nrm = float(np.linalg.norm(g))
    if nrm == 0.0:
        raise DegenerateInputError(f"contraction for mode {mode} vanishes")
    return g / nrm


def stationarity_residual(T, factors) -> tuple[float, float]:
    """``(value, max_i ||T x_{j != i} u_j - value u_i||)`` for unit factors."""
    a = as_array(T)
    factors = [np.asarray(u, dtype=float) for u in factors]
    if a.ndim == 1:
        value = float(a @ factors[0])
        return value, float(np.linalg.norm(a - value * factors[0]))
    value = float(np.dot(contract_all_but(a, factors, 0), factors[0]))
    res = 0.0
    for i in range(a.ndim):
        g = contract_all_but(a, factors, i)
        res = max(res, float(np.linalg.norm(g - value * factors[i])))
    return value, res


class _Batch:
    """Batched contractions of a fixed tensor against per-restart factors."""

    def __init__(self, a: np.ndarray):
        self.a = a
        d = a.ndim
        idx = _LETTERS[:d]
        self._all = idx + "," + ",".join("z" + c for c in idx) + "->z"
        self._but = [
            idx + "," + ",".join("z" + idx[j] for j in range(d) if j != i) + "->z" + idx[i]
            for i in range(d)
        ]

    def value(self, vecs):
        return np.einsum(self._all, self.a, *vecs)

    def grad(self, vecs, mode):
        others = [v for j, v in enumerate(vecs) if j != mode]
        return np.einsum(self._but[mode], self.a, *others)


def _dominant_slice_start(a: np.ndarray, mode: int) -> np.ndarray:
    axes = tuple(j for j in range(a.ndim) if j != mode)
    slice_norms = np.sqrt(np.sum(a * a, axis=axes))
    e = np.zeros(a.shape[mode])
    e[int(np.argmax(slice_norms))] = 1.0
    return e


def _random_units(rng, R, n):
    x = rng.standard_normal((R, n))
    nrm = np.linalg.norm(x, axis=1, keepdims=True)
    nrm[nrm == 0] = 1.0
    return x / nrm


def _run(a: np.ndarray, blocks, cfg: SolverConfig) -> SolveResult:
    d = a.ndim
    R = cfg.restarts
    nb = len(blocks)
    mode_block = [0] * d
    for b, blk in enumerate(blocks):
        for m in blk:
            mode_block[m] = b
    rep = [blk[0] for blk in blocks]
    tied = [len(blk) > 1 for blk in blocks]
    odd_block = next((b for b, blk in enumerate(blocks) if len(blk) % 2 == 1), None)
    ext = [a.shape[rep[b]] for b in range(nb)]

    init_rng = np.random.default_rng([cfg.seed, 0])
    reseed_rng = np.random.default_rng([cfg.seed, 1])
    X = []
    for b in range(nb):
        x = _random_units(init_rng, R, ext[b])
        x[0] = _dominant_slice_start(a, rep[b])
        X.append(x)

    engine = _Batch(a)
    tnorm = hs_norm(a)

    def vecs_of(X, rows=slice(None)):
        return [X[mode_block[j]][rows] for j in range(d)]

    f = engine.value(vecs_of(X))

    def orient(rows):
        # ascend s*f; with an odd-sized block, flip it so that s = +1 works
        s = np.ones(R)
        if odd_block is not None:
            neg = rows & (f < 0)
            X[odd_block][neg] *= -1.0
            f[neg] *= -1.0
        else:
            s[rows & (f < 0)] = -1.0
        return s

    s = orient(np.ones(R, dtype=bool))
    prev = s * f
    history = [[float(v)] for v in prev]
    monotone = True
    active = np.ones(R, dtype=bool)
    converged = np.zeros(R, dtype=bool)
    iters = np.zeros(R, dtype=int)
    residual = np.full(R, np.inf)
    tiny = 1e-300 + 1e-14 * tnorm
    # objective changes below this are rounding noise, not decrease
    slack = 64 * np.finfo(float).eps * tnorm

    for _ in range(cfg.max_iters):
        est = np.zeros(R)
        for b in range(nb):
            rows = np.flatnonzero(active)
            if rows.size == 0:
                break
            vecs = vecs_of(X, rows)
            g = engine.grad(vecs, rep[b])
            gn = np.linalg.norm(g, axis=1)
            xb = X[b][rows]
            est[rows] = np.maximum(est[rows], np.linalg.norm(g - f[rows, None] * xb, axis=1))

            dead = gn <= tiny
            if dead.any():
                # zero contraction: restart this run from a fresh random point
                drows = rows[dead]
                for bb in range(nb):
                    X[bb][drows] = _random_units(reseed_rng, drows.size, ext[bb])
                f[drows] = engine.value(vecs_of(X, drows))
                mask = np.zeros(R, dtype=bool)
                mask[drows] = True
                s_new = orient(mask)
                s[drows] = s_new[drows]
                prev[drows] = s[drows] * f[drows]
                est[drows] = np.inf
                rows, g, gn, xb = rows[~dead], g[~dead], gn[~dead], xb[~dead]
                if rows.size == 0:
                    continue

            sr = s[rows]
            cand = sr[:, None] * g / gn[:, None]
            if not tied[b]:
                # HOPM: new objective is s*<g, cand> = ||g||
                ok = gn >= sr * f[rows] - slack
                X[b][rows[ok]] = cand[ok]
                f[rows[ok]] = sr[ok] * gn[ok]
                continue

            # damped step: best of g = 1, 1/2, ..., 2^-12 on the chord to the candidate
            k = _GAMMAS.size
            trial = (1.0 - _GAMMAS[None, :, None]) * xb[:, None, :] + _GAMMAS[None, :, None] * cand[:, None, :]
            trial /= np.linalg.norm(trial, axis=2, keepdims=True)
            rep_rows = np.repeat(rows, k)
            vecs = vecs_of(X, rep_rows)
            vecs = [trial.reshape(-1, ext[b]) if mode_block[j] == b else v for j, v in enumerate(vecs)]
            tf = (sr[:, None] * engine.value(vecs).reshape(rows.size, k))
            pick = np.argmax(tf, axis=1)
            best_f = tf[np.arange(rows.size), pick]
            ok = best_f >= sr * f[rows] - slack
            X[b][rows[ok]] = trial[np.flatnonzero(ok), pick[ok]]
            f[rows[ok]] = sr[ok] * best_f[ok]

        rows = np.flatnonzero(active)
        iters[rows] += 1
        cur = s[rows] * f[rows]
        if np.any(cur < prev[rows] - slack):
            monotone = False
        prev[rows] = cur
        for r, v in zip(rows, cur):
            history[r].append(float(v))

        check = rows[est[rows] <= cfg.tol]
        for r in check:
            factors = [X[mode_block[j]][r] for j in range(d)]
            _, res = stationarity_residual(a, factors)
            residual[r] = res
            if res <= cfg.tol:
                converged[r] = True
                active[r] = False
        if not active.any():
            break

    for r in np.flatnonzero(active):
        _, residual[r] = stationarity_residual(a, [X[mode_block[j]][r] for j in range(d)])

    # every restart's value is a lower bound on the optimum, so the largest
    # wins; among near-ties prefer converged runs, then the lowest index
    absf = np.abs(f)
    top = absf.max()
    ties = [r for r in range(R) if absf[r] >= top - 1e-12 * max(1.0, top)]
    best = int(min(ties, key=lambda r: (not converged[r], r)))
    factors = tuple(X[mode_block[j]][best].copy() for j in range(d))
    value, res = stationarity_residual(a, factors)
    return SolveResult(
        approx=Rank1Approx(value, factors),
        value=value,
        residual=res,
        iterations=int(iters[best]),
        restart_index=best,
        converged=bool(res <= cfg.tol),
        monotone=monotone,
        history=tuple(history[best]),
        restart_values=tuple(float(v) for v in f),
        restart_residuals=tuple(float(v) for v in residual),
    )


def _check_nonzero(a):
    if not np.any(a):
        raise DegenerateInputError("the zero tensor has no best rank-one approximation")


def _solve_order1(a):
    x = a / np.linalg.norm(a)
    value = float(a @ x)
    return SolveResult(Rank1Approx(value, (x,)), value, 0.0, 0, 0, True, True, (value,), (value,))


def solve_general(T, cfg: SolverConfig | None = None) -> SolveResult:
    """Multi-start HOPM over independent unit factors, one per mode."""
    cfg = cfg or SolverConfig()
    a = np.asarray(as_array(T), dtype=float)
    _check_nonzero(a)
    if a.ndim == 1:
        return _solve_order1(a)
    return _run(a, [(m,) for m in range(a.ndim)], cfg)


def _symmetry_eps(a):
    return 1e-12 * max(1.0, float(np.max(np.abs(a))))


def solve_symmetric(T, cfg: SolverConfig | None = None) -> SolveResult:
    """Multi-start damped symmetric HOPM: one unit vector shared by every mode."""
    cfg = cfg or SolverConfig()
    a = np.asarray(as_array(T), dtype=float)
    _check_nonzero(a)
    if not is_symmetric_wrt(a, range(a.ndim), _symmetry_eps(a)):
        raise ValueError("solve_symmetric requires a symmetric tensor")
    if a.ndim == 1:
        return _solve_order1(a)
    return _run(a, [tuple(range(a.ndim))], cfg)


def solve_tied(T, partition: ModePartition, cfg: SolverConfig | None = None) -> SolveResult:
    """Multi-start ascent with factors tied (shared) inside each block of ``partition``."""
    cfg = cfg or SolverConfig()
    a = np.asarray(as_array(T), dtype=float)
    _check_nonzero(a)
    if partition.order != a.ndim:
        raise DimensionError(f"partition covers {partition.order} modes, tensor has {a.ndim}")
    eps = _symmetry_eps(a)
    for blk in partition.blocks:
        if len(blk) > 1 and not is_symmetric_wrt(a, blk, eps):
            raise ValueError(f"tensor is not symmetric w.r.t. block {blk}")
    if a.ndim == 1:
        return _solve_order1(a)
    return _run(a, list(partition.blocks), cfg)


def solve(T, cfg: SolverConfig | None = None) -> SolveResult:
    cfg = cfg or SolverConfig()
    return solve_symmetric(T, cfg) if cfg.symmetric_mode else solve_general(T, cfg)


def certify(T, A: Rank1Approx, tol: float = 1e-10) -> Certificate:
    """Optimality evidence for a candidate with unit factors.

    ``cert_gap`` is the largest ``| sigma_1(M_pq) - |lambda| |`` over mode
    pairs, where ``M_pq`` is ``T`` contracted with every factor but those of
    modes ``p`` and ``q``. At a global optimum every such gap vanishes.
    """
    a = np.asarray(as_array(T), dtype=float)
    factors = [np.asarray(u, dtype=float) for u in A.factors]
    if len(factors) != a.ndim:
        raise DimensionError("number of factors does not match the tensor order")
    value, res = stationarity_residual(a, factors)
    tn2 = hs_norm(a) ** 2
    approx = Rank1Approx(value, factors).to_tensor().array
    gap = abs(value**2 + float(np.sum((a - approx) ** 2)) - tn2) / max(tn2, np.finfo(float).tiny)
    cert = 0.0
    for p, q in itertools.combinations(range(a.ndim), 2):
        M = a
        for j in sorted((j for j in range(a.ndim) if j not in (p, q)), reverse=True):
            M = np.tensordot(M, factors[j], axes=([j], [0]))
        cert = max(cert, abs(sigma1(M) - abs(value)))
    return Certificate(bool(res <= tol), res, gap, cert, value)


def permuted_solutions(T, A: Rank1Approx, partition: ModePartition, tol: float = 1e-12):
    """All approximations obtained by permuting factors inside each block.

    Each returned approximation carries its own value ``<T, (x) u_sigma(j)>``
    as scale, so callers can check that permutation preserves optimality.
    Duplicates (up to ``tol``) are dropped.
    """
    a = as_array(T)
    base = list(A.factors)
    per_block = [list(itertools.permutations(blk)) for blk in partition.blocks]
    out: list[Rank1Approx] = []
    for combo in itertools.product(*per_block):
        factors = list(base)
        for blk, perm in zip(partition.blocks, combo):
            for dst, src in zip(blk, perm):
                factors[dst] = base[src]
        if any(
            all(np.linalg.norm(u - v) <= tol for u, v in zip(factors, o.factors)) for o in out
        ):
            continue
        value = float(np.tensordot(a, decomposable_array(factors), axes=a.ndim))
        out.append(Rank1Approx(value, tuple(factors)))
    return out


def decomposable_array(factors) -> np.ndarray:
    out = np.asarray(factors[0], dtype=float)
    for x in factors[1:]:
        out = np.multiply.outer(out, x)
    return out
