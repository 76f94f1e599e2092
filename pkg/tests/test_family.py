import math

import numpy as np
import pytest

from oracles import naive_slice_traces
from symrank1 import (
    DegenerateInputError,
    FamilyParams,
    SolverConfig,
    decomposable,
    detect_family,
    family_solutions,
    family_tensor,
    hs_norm,
    random_symmetric,
    rotation_identity_check,
    sigma1,
    slice_traces,
    solve_general,
    solve_symmetric,
    sym_eigen,
    w_map,
)
from symrank1.family import slice_matrix


def e(i, n=2):
    v = np.zeros(n)
    v[i] = 1.0
    return v


def random_units(rng, k):
    X = rng.standard_normal((k, 2))
    return X / np.linalg.norm(X, axis=1, keepdims=True)


class TestFamilyTensor:
    def test_theta_zero(self):
        a = family_tensor(FamilyParams(0.0)).array
        assert a[0, 0, 0] == 1.0
        assert a[0, 1, 1] == a[1, 0, 1] == a[1, 1, 0] == -1.0
        assert a[0, 0, 1] == a[0, 1, 0] == a[1, 0, 0] == a[1, 1, 1] == 0.0

    def test_theta_right_angle(self):
        a = family_tensor(FamilyParams(math.pi / 2)).array
        assert np.allclose([a[0, 0, 1], a[0, 1, 0], a[1, 0, 0]], 1.0)
        assert a[1, 1, 1] == pytest.approx(-1.0)
        assert np.allclose([a[0, 0, 0], a[0, 1, 1]], 0.0, atol=1e-16)

    @pytest.mark.parametrize("theta, scale", [(0.0, 1.0), (0.4, 2.0), (3.0, 0.5), (5.9, 7.0)])
    def test_norm(self, theta, scale):
        a = family_tensor(FamilyParams(theta, scale)).array
        assert float(np.sum(a * a)) == pytest.approx(4 * scale**2, rel=1e-14)

    def test_params_validation(self):
        with pytest.raises(ValueError):
            FamilyParams(0.0, 0.0)
        assert FamilyParams(-math.pi / 2).theta == pytest.approx(3 * math.pi / 2)


class TestSliceTraces:
    @pytest.mark.parametrize("theta", [0.0, math.pi / 7, 3.0])
    def test_family_traceless(self, theta):
        r = slice_traces(family_tensor(FamilyParams(theta)))
        assert r.all_traceless and r.max_abs_trace <= 1e-15
        assert set(r.traces) == {(0,), (1,)}

    def test_basis_cube(self):
        r = slice_traces(decomposable([e(0)] * 3))
        assert r.traces[(0,)] == 1.0 and not r.all_traceless

    def test_naive_oracle(self):
        T = random_symmetric(2, 4, np.random.default_rng(0)).array
        assert slice_traces(T).traces == naive_slice_traces(T)

    def test_rejects_wider(self):
        with pytest.raises(Exception):
            slice_traces(random_symmetric(3, 3, np.random.default_rng(1)))


class TestDetect:
    def test_round_trip(self):
        p = detect_family(family_tensor(FamilyParams(1.3, 2.5)))
        assert p.theta == pytest.approx(1.3, abs=1e-12) and p.scale == pytest.approx(2.5, abs=1e-12)

    def test_round_trip_random(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            theta, scale = rng.uniform(0, 2 * math.pi), rng.uniform(0.1, 10)
            p = detect_family(family_tensor(FamilyParams(theta, scale)))
            assert p.theta == pytest.approx(theta, abs=1e-12)
            assert p.scale == pytest.approx(scale, rel=1e-12)

    def test_non_member(self):
        assert detect_family(decomposable([e(0)] * 3)) is None

    def test_tolerance_parameter(self):
        T = family_tensor(FamilyParams(0.7)).array + 1e-6 * decomposable([e(0)] * 3).array
        assert detect_family(T) is None
        assert detect_family(T, tol=1e-4) is not None

    def test_zero(self):
        with pytest.raises(DegenerateInputError):
            detect_family(np.zeros((2, 2, 2)))

    def test_traceless_symmetric_cubic_is_member(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            T = random_symmetric(2, 3, rng).array.copy()
            # impose t122 = -t111 and t222 = -t112 through the orbit
            T[0, 1, 1] = T[1, 0, 1] = T[1, 1, 0] = -T[0, 0, 0]
            T[1, 1, 1] = -T[0, 0, 1]
            assert slice_traces(T).all_traceless
            assert detect_family(T) is not None

    def test_member_is_traceless(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            p = FamilyParams(rng.uniform(0, 7), rng.uniform(0.1, 5))
            assert slice_traces(family_tensor(p)).all_traceless


class TestRotationIdentity:
    def test_example(self):
        A = slice_matrix(family_tensor(FamilyParams(0.0)), (math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3)))
        r = math.sqrt(3) / 2
        assert np.allclose(A, [[-0.5, -r], [-r, 0.5]], atol=1e-15)
        assert rotation_identity_check(FamilyParams(0.0), 2 * math.pi / 3) <= 1e-12

    def test_zero_angle_exact(self):
        for theta in (0.0, 0.3, 2.0, 4.5):
            assert rotation_identity_check(FamilyParams(theta), 0.0) == 0.0

    def test_random_pairs(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            p = FamilyParams(rng.uniform(0, 2 * math.pi), rng.uniform(0.2, 4))
            assert rotation_identity_check(p, rng.uniform(0, 2 * math.pi)) <= 1e-12 * p.scale


class TestSolutions:
    def test_theta_zero(self):
        optima, w = family_solutions(FamilyParams(0.0))
        want = [(1.0, 0.0), (-0.5, math.sqrt(3) / 2), (-0.5, -math.sqrt(3) / 2)]
        for q, pt in zip(optima, want):
            assert np.allclose(q.point, pt, atol=1e-9)
            assert q.value == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(w(e(0), e(0)), e(0))

    def test_general_theta_count_and_value(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            p = FamilyParams(rng.uniform(0, 2 * math.pi), rng.uniform(0.5, 3))
            sols = family_solutions(p)
            assert len(sols.optima) == 3
            assert all(q.value == pytest.approx(p.scale, rel=1e-12) for q in sols.optima)

    def test_every_triple_optimal(self):
        rng = np.random.default_rng(7)
        for theta, scale in [(0.0, 1.0), (1.1, 2.0)]:
            p = FamilyParams(theta, scale)
            sols = family_solutions(p)
            a = sols.tensor.array
            for u, v in zip(random_units(rng, 50), random_units(rng, 50)):
                val = np.einsum("ijk,i,j,k", a, u, v, sols.w(u, v))
                assert val == pytest.approx(scale, abs=1e-12 * scale)

    def test_slice_spectrum(self):
        rng = np.random.default_rng(8)
        for theta in (0.0, 0.9, 4.0):
            p = FamilyParams(theta, 1.7)
            T = family_tensor(p)
            for u in random_units(rng, 20):
                A = slice_matrix(T, u)
                lam = sym_eigen(A).eigenvalues
                assert sigma1(A) == pytest.approx(p.scale, rel=1e-12)
                assert lam[0] == pytest.approx(-lam[1], abs=1e-12)

    def test_solvers_reach_scale(self):
        p = FamilyParams(2.2, 3.0)
        T = family_tensor(p)
        cfg = SolverConfig(restarts=8, seed=1)
        assert solve_symmetric(T, cfg).value == pytest.approx(3.0, abs=1e-9)
        g = solve_general(T, cfg)
        assert abs(g.value) == pytest.approx(3.0, abs=1e-9)
        u, v, _ = g.factors
        w = w_map(T, u, v)
        assert np.einsum("ijk,i,j,k", T.array, u, v, w) == pytest.approx(3.0, abs=1e-9)
        assert hs_norm(T) == pytest.approx(6.0)
