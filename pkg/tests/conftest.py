import time

import numpy as np
import pytest

from symrank1 import (
    SolverConfig,
    certify,
    eigenpair_census,
    enumerate_critical_points,
    random_symmetric,
    solve_general,
)

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}

SAMPLE_COUNTS = {3: 500, 4: 200, 5: 200}
SAMPLE_SEED = 20240


def sample_tensor(d, i):
    return random_symmetric(2, d, np.random.default_rng([SAMPLE_SEED, d, i])).array


@pytest.fixture(scope="session")
def sym2_samples():
    """The seeded Sym(2, d) samples: general multi-start solve plus full enumeration.

    ``elapsed`` covers exactly that work (32 restarts per tensor).
    """
    start = time.perf_counter()
    out = []
    for d, count in SAMPLE_COUNTS.items():
        for i in range(count):
            a = sample_tensor(d, i)
            res = solve_general(a, SolverConfig(restarts=32, seed=i))
            pts = enumerate_critical_points(a)
            out.append({"d": d, "index": i, "tensor": a, "general": res, "points": pts})
    elapsed = time.perf_counter() - start
    for rec in out:
        if rec["general"].converged:
            rec["certificate"] = certify(rec["tensor"], rec["general"].approx)
    return {"records": out, "elapsed": elapsed}


@pytest.fixture(scope="session")
def sym2_censuses(sym2_samples):
    return [eigenpair_census(rec["tensor"]) for rec in sym2_samples["records"]]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
