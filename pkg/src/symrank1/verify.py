"""Seeded verification experiments with JSON-ready reports.

Every experiment draws sample ``i`` from ``numpy.random.default_rng([seed, i])``
(Gaussian entries, then symmetrized over the relevant modes), so reports are
reproducible and each record can be regenerated on its own. A record's
``pass`` field depends only on the record's own numbers and the tolerances
echoed in ``spec``.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .critical import (
    enumerate_critical_points,
    eigenpair_sensitivity,
    genericity_check,
    solve_eigensystem,
    uniqueness_gap,
)
from .exceptions import ConvergenceError, DegenerateInputError, DimensionError
from .family import FamilyParams, family_tensor, slice_traces
from .optimize import SolverConfig, certify, solve_general, solve_symmetric, solve_tied
from .tensor import ModePartition, Rank1Approx, Tensor, as_array, random_symmetric

__all__ = [
    "KINDS",
    "DEFAULT_TOLERANCES",
    "ExperimentSpec",
    "VerifyReport",
    "symmetrize_blocks",
    "traceless_symmetric",
    "basis_power",
    "verify_symmetric_tensor",
    "verify_partial_tensor",
    "verify_perturbation_tensor",
    "run_verify_symmetric",
    "run_verify_partial_symmetry",
    "run_verify_perturbation",
    "run_experiment",
]

KINDS = (
    "approx",
    "enum-critical",
    "census",
    "detect-family",
    "symdecomp",
    "verify-symmetric",
    "verify-partial-symmetry",
    "verify-perturbation",
)

DEFAULT_TOLERANCES = {
    "value": 1e-6,
    "residual": 1e-8,
    "pythagoras": 1e-10,
    "certificate": 1e-8,
    "uniqueness": 1e-6,
    "sensitivity": 1e-5,
}

RANDOM_MODEL = "gaussian iid entries, symmetrized"


@dataclass(frozen=True)
class ExperimentSpec:
    """Parameters of one experiment.

    ``partition`` (0-based blocks) is used by ``verify-partial-symmetry``;
    ``extents`` overrides the default shape ``(n,) * d`` there.
    ``eps_list`` is used by ``verify-perturbation``.
    """

    kind: str
    n: int = 2
    d: int = 3
    samples: int = 1
    seed: int = 0
    restarts: int = 32
    tolerances: dict = field(default_factory=dict)
    output_path: str | None = None
    partition: tuple | None = None
    extents: tuple | None = None
    eps_list: tuple = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
    theta: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.n < 1 or self.d < 1:
            raise ValueError("n and d must be positive")
        if self.kind in ("enum-critical", "census", "verify-perturbation") and self.n != 2:
            raise DimensionError(f"{self.kind} requires n = 2")
        if self.kind in ("census", "verify-perturbation") and self.d < 3:
            raise DimensionError(f"{self.kind} requires d >= 3")
        tol = dict(DEFAULT_TOLERANCES)
        tol.update(self.tolerances)
        object.__setattr__(self, "tolerances", tol)
        object.__setattr__(self, "eps_list", tuple(float(e) for e in self.eps_list))
        if self.partition is not None:
            object.__setattr__(self, "partition", tuple(tuple(b) for b in self.partition))
        if self.extents is not None:
            object.__setattr__(self, "extents", tuple(int(e) for e in self.extents))

    def to_dict(self) -> dict:
        out = asdict(self)
        out["partition"] = None if self.partition is None else [[m + 1 for m in b] for b in self.partition]
        out["eps_list"] = list(self.eps_list)
        out["extents"] = None if self.extents is None else list(self.extents)
        out["random_model"] = RANDOM_MODEL
        return out

    def solver_config(self, index: int) -> SolverConfig:
        return SolverConfig(restarts=self.restarts, seed=self.seed + index)

    def rng(self, index: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, index])


@dataclass
class VerifyReport:
    spec: dict
    samples: list
    aggregate: dict
    wall_ms: float | None

    def to_dict(self) -> dict:
        return {"spec": self.spec, "samples": self.samples, "aggregate": self.aggregate,
                "wall_ms": self.wall_ms}

    def to_json(self) -> str:
        return json.dumps(_jsonable(self.to_dict()), indent=2) + "\n"

    @property
    def pass_rate(self) -> float:
        return self.aggregate["pass_rate"]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    return obj


# ------------------------------------------------------------ generators


def symmetrize_blocks(a, partition: ModePartition) -> Tensor:
    """Average over index permutations inside each block; exactly symmetric on every block."""
    a = np.asarray(as_array(a), dtype=float)
    d = a.ndim
    for blk in partition.blocks:
        if len(blk) < 2:
            continue
        acc = np.zeros_like(a)
        perms = list(itertools.permutations(blk))
        for perm in perms:
            axes = list(range(d))
            for src, dst in zip(blk, perm):
                axes[src] = dst
            acc = acc + np.transpose(a, axes)
        acc = acc / len(perms)
        # one value per orbit, so symmetry holds bitwise
        idx = np.indices(a.shape).reshape(d, -1)
        canon = idx.copy()
        canon[list(blk)] = np.sort(idx[list(blk)], axis=0)
        a = acc[tuple(canon)].reshape(a.shape)
    return Tensor(a)


def traceless_symmetric(d: int, rng: np.random.Generator) -> Tensor:
    """Random Sym(2, d) tensor whose leading 2x2 slices all have zero trace.

    With ``t[k]`` the entry having ``k`` indices equal to 2, the condition is
    ``t[k + 2] = -t[k]``, so ``t[0]`` and ``t[1]`` determine the tensor.
    """
    base = rng.standard_normal(2)
    t = [base[k % 2] * (-1) ** (k // 2) for k in range(d + 1)]
    a = np.empty((2,) * d)
    for idx in itertools.product(range(2), repeat=d):
        a[idx] = t[sum(idx)]
    return Tensor(a)


def basis_power(n: int, d: int, i: int = 0) -> Tensor:
    """``e_i^{(x) d}`` in dimension ``n``."""
    a = np.zeros((n,) * d)
    a[(i,) * d] = 1.0
    return Tensor(a)


# ------------------------------------------------------------- records


def _solution_checks(T, res, tol) -> dict:
    cert = certify(T, res.approx, tol["residual"])
    return {
        "residual": res.residual,
        "pythagoras_gap": cert.pythagoras_gap,
        "cert_gap": cert.cert_gap,
        "monotone": res.monotone,
        "certified": bool(
            res.residual <= tol["residual"]
            and cert.pythagoras_gap <= tol["pythagoras"]
            and cert.cert_gap <= tol["certificate"]
            and res.monotone
        ),
    }


def verify_symmetric_tensor(T, cfg: SolverConfig, tol: dict) -> dict:
    """Best symmetric vs best general value for one symmetric tensor.

    For ``n = 2`` both are also compared with the exhaustive circle
    enumeration, and uniqueness diagnostics are recorded.
    """
    a = np.asarray(as_array(T), dtype=float)
    n = a.shape[0]
    gen = solve_general(a, cfg)
    sym = solve_symmetric(a, cfg)
    gchk = _solution_checks(a, gen, tol)
    schk = _solution_checks(a, sym, tol)
    rec = {
        "general_value": abs(gen.value),
        "symmetric_value": abs(sym.value),
        "value_gap": abs(abs(gen.value) - abs(sym.value)),
        "general_residual": gchk["residual"],
        "symmetric_residual": schk["residual"],
        "pythagoras_gap": max(gchk["pythagoras_gap"], schk["pythagoras_gap"]),
        "cert_gap": max(gchk["cert_gap"], schk["cert_gap"]),
        "monotone": gchk["monotone"] and schk["monotone"],
        "certified": gchk["certified"] and schk["certified"],
        "exhaustive": n == 2,
    }
    ok = rec["value_gap"] <= tol["value"] and rec["certified"]
    if n == 2:
        pts = enumerate_critical_points(a)
        emax = max(abs(p.value) for p in pts)
        distinct, pairing = genericity_check(pts, a.ndim)
        rec.update(
            enum_max=emax,
            enum_gap=max(abs(rec["general_value"] - emax), abs(rec["symmetric_value"] - emax)),
            critical_points=len(pts),
            uniqueness_gap=uniqueness_gap(pts, a.ndim),
            distinct_values=distinct,
            pairing_ok=pairing,
        )
        rec["nongeneric"] = not (distinct and pairing)
        ok = ok and rec["enum_gap"] <= tol["value"]
    rec["pass"] = bool(ok)
    return rec


def verify_partial_tensor(T, partition: ModePartition, cfg: SolverConfig, tol: dict) -> dict:
    """Free multi-start optimum vs optimum with factors tied inside each block."""
    a = np.asarray(as_array(T), dtype=float)
    free = solve_general(a, cfg)
    tied = solve_tied(a, partition, cfg)
    fchk = _solution_checks(a, free, tol)
    tchk = _solution_checks(a, tied, tol)
    rec = {
        "free_value": abs(free.value),
        "tied_value": abs(tied.value),
        "value_gap": abs(abs(free.value) - abs(tied.value)),
        "free_residual": fchk["residual"],
        "tied_residual": tchk["residual"],
        "pythagoras_gap": max(fchk["pythagoras_gap"], tchk["pythagoras_gap"]),
        "cert_gap": max(fchk["cert_gap"], tchk["cert_gap"]),
        "monotone": fchk["monotone"] and tchk["monotone"],
        "certified": fchk["certified"] and tchk["certified"],
        "exhaustive": False,
    }
    rec["pass"] = bool(rec["value_gap"] <= tol["value"] and rec["certified"])
    return rec


def _enum_best(a):
    pts = enumerate_critical_points(a)
    best = max(pts, key=lambda p: (abs(p.value), -p.angle))
    return best


def verify_perturbation_tensor(T, eps_list, cfg: SolverConfig, tol: dict, rng=None) -> dict:
    """Approach a traceless-slice tensor through ``T + eps e_1^{(x) d}``.

    For each ``eps`` the perturbed tensor is solved exhaustively on the
    circle and by multi-start HOPM. The symmetric optimum must be stationary,
    pass the doubly-contracted certificate, and not be beaten by HOPM
    (``general_excess <= tol``). HOPM may converge slowly here because the
    unperturbed optima form a continuum, so its values are lower bounds and
    only their excess over the symmetric optimum is gated. The optimal values
    must approach the optimum of ``T`` with shrinking ``eps`` (gaps
    nonincreasing), and the last optimal point must be optimal for ``T``.
    Eigenpair sensitivity is checked on every simple real solution of
    ``T x^{d-1} = x`` against ``S = e_1^{(x) d}`` and, if ``rng`` is given,
    a random symmetric direction.
    """
    a = np.asarray(as_array(T), dtype=float)
    d = a.ndim
    S = basis_power(2, d).array
    base = _enum_best(a)
    target = abs(base.value)
    steps = []
    for eps in sorted(eps_list, reverse=True):
        Te = a + eps * S
        best = _enum_best(Te)
        gen = solve_general(Te, cfg)
        sym = Rank1Approx(best.value, (best.point,) * d)
        steps.append({
            "eps": eps,
            "symmetric_value": abs(best.value),
            "general_value": abs(gen.value),
            "general_residual": gen.residual,
            "angle": best.angle,
            "critical_residual": best.residual,
            "symmetric_cert_gap": certify(Te, sym).cert_gap,
            "general_excess": abs(gen.value) - abs(best.value),
            "value_gap": abs(abs(best.value) - target),
        })
    gaps = [s["value_gap"] for s in steps]
    slack = 1e-12 * max(1.0, target)
    monotone = all(b <= g + slack for g, b in zip(gaps, gaps[1:]))
    agree = all(
        s["general_excess"] <= tol["value"]
        and s["critical_residual"] <= tol["residual"]
        and s["symmetric_cert_gap"] <= tol["certificate"]
        for s in steps
    )
    limit = steps[-1]
    x = np.array([math.cos(limit["angle"]), math.sin(limit["angle"])])
    limit_value = float(np.tensordot(a, _outer_power(x, d), axes=d))
    limit_ok = abs(abs(limit_value) - target) <= tol["value"]

    sens = []
    directions = [S]
    if rng is not None:
        directions.append(random_symmetric(2, d, rng).array)
    for sol in solve_eigensystem(a, 1).real:
        if sol.multiplicity_flag:
            continue
        for Sd in directions:
            try:
                chk = eigenpair_sensitivity(a, Sd, sol)
            except ConvergenceError:
                sens.append(float("inf"))
                continue
            sens.append(chk.rel_error)
    sens_max = max(sens, default=0.0)
    rec = {
        "target_value": target,
        "steps": steps,
        "gaps_nonincreasing": monotone,
        "solvers_agree": agree,
        "limit_angle": limit["angle"],
        "limit_point": x,
        "limit_value": limit_value,
        "limit_is_optimal": limit_ok,
        "sensitivity_checks": len(sens),
        "sensitivity_max_rel_error": sens_max,
    }
    rec["pass"] = bool(monotone and agree and limit_ok and sens_max <= tol["sensitivity"])
    return rec


def _outer_power(x, d):
    out = x
    for _ in range(d - 1):
        out = np.multiply.outer(out, x)
    return out


# ---------------------------------------------------------- experiments


def _report(spec: ExperimentSpec, records, start, extra=None, timing=True) -> VerifyReport:
    passed = sum(1 for r in records if r["pass"])
    agg = {
        "count": len(records),
        "passed": passed,
        "pass_rate": passed / len(records) if records else 0.0,
    }
    if extra:
        agg.update(extra)
    wall = (time.perf_counter() - start) * 1e3 if timing else None
    return VerifyReport(spec.to_dict(), [_jsonable(r) for r in records], _jsonable(agg), wall)


def _inputs(spec, tensors, make):
    if tensors is not None:
        return [np.asarray(as_array(t), dtype=float) for t in tensors]
    return [make(i) for i in range(spec.samples)]


def run_verify_symmetric(spec: ExperimentSpec, tensors=None, timing: bool = True) -> VerifyReport:
    """Symmetric vs general best value on random symmetric tensors (or on ``tensors``)."""
    start = time.perf_counter()
    tol = spec.tolerances
    inputs = _inputs(spec, tensors, lambda i: random_symmetric(spec.n, spec.d, spec.rng(i)).array)
    records = []
    for i, a in enumerate(inputs):
        if a.shape != (a.shape[0],) * a.ndim:
            raise DimensionError("verify-symmetric needs equal extents")
        rec = {"index": i, "n": a.shape[0], "d": a.ndim}
        rec.update(verify_symmetric_tensor(a, spec.solver_config(i), tol))
        records.append(rec)
    extra = {"exhaustive": all(r["exhaustive"] for r in records)}
    if extra["exhaustive"]:
        extra["unique_rate"] = sum(r["uniqueness_gap"] > tol["uniqueness"] for r in records) / len(records)
        extra["pairing_rate"] = sum(r["pairing_ok"] for r in records) / len(records)
    return _report(spec, records, start, extra, timing)


def run_verify_partial_symmetry(spec: ExperimentSpec, tensors=None, timing: bool = True) -> VerifyReport:
    """Tied-block vs free best value on tensors symmetric over a mode partition.

    The default partition is ``{0, 1}, {2}, ..., {d-1}`` and the default
    shape ``(n,) * d``.
    """
    start = time.perf_counter()
    tol = spec.tolerances
    d = spec.d
    if spec.partition is not None:
        part = ModePartition(spec.partition)
    else:
        part = ModePartition(((0, 1),) + tuple((m,) for m in range(2, d)))
    shape = spec.extents or (spec.n,) * d
    if len(shape) != part.order:
        raise DimensionError("partition does not match the tensor order")

    def make(i):
        return symmetrize_blocks(spec.rng(i).standard_normal(shape), part).array

    inputs = _inputs(spec, tensors, make)
    records = []
    for i, a in enumerate(inputs):
        rec = {"index": i, "shape": list(a.shape), "partition": part.one_based()}
        rec.update(verify_partial_tensor(a, part, spec.solver_config(i), tol))
        records.append(rec)
    return _report(spec, records, start, {"exhaustive": False}, timing)


def run_verify_perturbation(spec: ExperimentSpec, tensors=None, timing: bool = True) -> VerifyReport:
    """Perturbation experiment on traceless-slice Sym(2, d) tensors.

    Sample 0 for ``d = 3`` is the family member at ``spec.theta`` (0 if
    unset); other ``d = 3`` samples use a random angle. For ``d > 3`` samples
    are random traceless-slice tensors.
    """
    start = time.perf_counter()
    tol = spec.tolerances

    def make(i):
        rng = spec.rng(i)
        if spec.d == 3:
            theta = (spec.theta or 0.0) if i == 0 else float(rng.uniform(0.0, 2.0 * math.pi))
            return family_tensor(FamilyParams(theta)).array
        return traceless_symmetric(spec.d, rng).array

    inputs = _inputs(spec, tensors, make)
    records = []
    for i, a in enumerate(inputs):
        if a.shape != (2,) * a.ndim:
            raise DimensionError("verify-perturbation needs n = 2")
        rec = {"index": i, "d": a.ndim, "traceless": slice_traces(a).all_traceless}
        rec.update(
            verify_perturbation_tensor(a, spec.eps_list, spec.solver_config(i), tol,
                                       np.random.default_rng([spec.seed, i, 1]))
        )
        records.append(rec)
    return _report(spec, records, start, None, timing)


def run_experiment(spec: ExperimentSpec, tensors=None, timing: bool = True) -> VerifyReport:
    runners = {
        "verify-symmetric": run_verify_symmetric,
        "verify-partial-symmetry": run_verify_partial_symmetry,
        "verify-perturbation": run_verify_perturbation,
    }
    if spec.kind not in runners:
        raise ValueError(f"{spec.kind} is not a verification experiment")
    return runners[spec.kind](spec, tensors, timing)
