import math

import numpy as np
import pytest

from sp4quat.errors import (
    NegativeDiscriminantError,
    NotDecomposableError,
    NotPositiveDefiniteError,
    NotSymplecticError,
    NotSymplecticOrthogonalError,
    SingularGuardError,
)
from sp4quat.hh_rep import J4, OrthoSymplecticQuat, matrix_of_tensor
from sp4quat.polar import (
    GramRep,
    TAU_D,
    _diag_via_jacobi,
    _quaternion_from_rotation,
    _rotation_from_quaternion,
    canonicalize_pair,
    enumerate_sym_symplectic_sqrts,
    euler_cartan,
    full_quaternion_form,
    gram_rep_of,
    polar_decompose,
    recover_pr,
    so4_to_quaternion_pair,
    solve_a_quadratic,
    sqrt_pd_symplectic,
    sqrt_root_candidates,
)
from sp4quat.quat import I as QI, ONE, Quaternion, cross, norm3
from sp4quat.symplectic import (
    SymSymplecticRep,
    check_sym_symplectic,
    is_pd_symplectic,
    is_symplectic,
)
from sp4quat.testkit import Xoshiro256pp, jacobi_sqrt_oracle

SHEAR = np.array([
    [1.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
])

# closed-form square root of [[1,1],[1,2]]: (A + sqrt(det) I)/sqrt(tr + 2 sqrt(det))
R5 = math.sqrt(5.0)
SHEAR_H = np.array([
    [2.0 / R5, 0.0, 1.0 / R5, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [1.0 / R5, 0.0, 3.0 / R5, 0.0],
    [0.0, 0.0, 0.0, 1.0],
])


def _sqrt2x2(a):
    """Independent closed-form square root of a 2x2 SPD matrix."""
    det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    s = math.sqrt(det)
    t = math.sqrt(a[0, 0] + a[1, 1] + 2.0 * s)
    return (a + s * np.eye(2)) / t


def test_frozen_shear_h_against_2x2_oracle():
    got = _sqrt2x2(np.array([[1.0, 1.0], [1.0, 2.0]]))
    np.testing.assert_allclose(got, np.array([[2.0, 1.0], [1.0, 3.0]]) / R5,
                               atol=1e-15)


def _bisect_root(f, lo, hi, iters=200):
    flo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if flo * fm <= 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


class TestQuadratic:
    def test_dd_zero(self):
        assert solve_a_quadratic(3.0, 0.0) == (2.0, 0.0)
        assert solve_a_quadratic(1.0, 0.0) == (1.0, 0.0)

    def test_shear_case_against_bisection(self):
        # Gram coefficients of the shear: b = 5/4, d = (0, 1/4, 0)
        gram = gram_rep_of(SHEAR.T @ SHEAR)
        assert gram.b == 1.25
        np.testing.assert_allclose(gram.d, [0.0, 0.25, 0.0], atol=1e-15)
        dd = float(gram.d @ gram.d)
        hi, lo = solve_a_quadratic(gram.b, dd)

        def f(x):
            return x * x - 0.5 * (gram.b + 1.0) * x + dd / 16.0

        hi_oracle = _bisect_root(f, 0.5 * (gram.b + 1.0) / 2.0, gram.b + 1.0)
        lo_oracle = _bisect_root(f, 0.0, 0.5 * (gram.b + 1.0) / 2.0)
        assert abs(hi - hi_oracle) <= 1e-12
        assert abs(lo - lo_oracle) <= 1e-12
        # both roots positive, descending
        assert hi > lo > 0.0

    def test_guards(self):
        with pytest.raises(NegativeDiscriminantError):
            solve_a_quadratic(1.0, 100.0)
        with pytest.raises(NotPositiveDefiniteError):
            solve_a_quadratic(-1.0, 0.0)
        with pytest.raises(ValueError):
            solve_a_quadratic(1.0, -1.0)


class TestRecoverPR:
    def test_identity_gram(self):
        p, r = recover_pr(1.0, np.zeros(3), GramRep(b=1.0))
        np.testing.assert_allclose(p, np.zeros(3), atol=1e-15)
        np.testing.assert_allclose(r, np.zeros(3), atol=1e-15)

    def test_shear_reassembles(self):
        y = SHEAR.T @ SHEAR
        gram = gram_rep_of(y)
        hi, _ = solve_a_quadratic(gram.b, float(gram.d @ gram.d))
        a = math.sqrt(hi)
        q = gram.d / (4.0 * a)
        p, r = recover_pr(a, q, gram)
        h = SymSymplecticRep(a=a, p=p, q=q, r=r).to_matrix()
        np.testing.assert_allclose(h, SHEAR_H, atol=1e-12)

    def test_random_squares_back(self, small_stream):
        for x in small_stream[:100]:
            y = x.T @ x
            rep = sqrt_pd_symplectic(y)
            h = rep.to_matrix()
            assert np.max(np.abs(h @ h - y)) <= 1e-9 * (1 + np.max(np.abs(y)))

    def test_guard(self):
        with pytest.raises(SingularGuardError):
            recover_pr(1.0, np.array([1.0, 0.0, 0.0]), GramRep(b=1.0))
        with pytest.raises(SingularGuardError):
            recover_pr(-1.0, np.zeros(3), GramRep(b=1.0))


class TestSqrt:
    def test_identity(self):
        rep = sqrt_pd_symplectic(np.eye(4))
        assert rep.a == 1.0
        assert norm3(rep.p) == norm3(rep.q) == norm3(rep.r) == 0.0

    def test_shear(self):
        rep = sqrt_pd_symplectic(SHEAR.T @ SHEAR)
        np.testing.assert_allclose(rep.to_matrix(), SHEAR_H, atol=1e-12)

    def test_matches_jacobi_oracle(self, small_stream):
        for x in small_stream[:100]:
            y = x.T @ x
            closed = sqrt_pd_symplectic(y).to_matrix()
            spectral = jacobi_sqrt_oracle(y)
            scale = 1.0 + np.max(np.abs(spectral))
            assert np.max(np.abs(closed - spectral)) <= 1e-8 * scale

    def test_rejects_asymmetric(self):
        with pytest.raises(NotPositiveDefiniteError):
            sqrt_pd_symplectic(SHEAR)

    def test_rejects_negative(self):
        with pytest.raises(NotPositiveDefiniteError):
            sqrt_pd_symplectic(-np.eye(4))

    def test_d_zero_branch_values(self):
        # H = diag(2, 2, 1/2, 1/2) has q = 0, so y = H^2 runs the d = 0
        # branch: a = sqrt((b+1)/2) with b = 17/8.
        y = np.diag([4.0, 4.0, 0.25, 0.25])
        rep = sqrt_pd_symplectic(y)
        assert abs(rep.a - 1.25) <= 1e-14
        np.testing.assert_allclose(rep.to_matrix(),
                                   np.diag([2.0, 2.0, 0.5, 0.5]), atol=1e-13)


class TestRootSelection:
    def test_larger_root_wins(self, small_stream):
        checked = 0
        for x in small_stream[:100]:
            y = x.T @ x
            gram = gram_rep_of(y)
            if norm3(gram.d) <= TAU_D * (1.0 + gram.b):
                continue
            hi_rep, lo_rep = sqrt_root_candidates(y)
            assert is_pd_symplectic(hi_rep)
            assert not is_pd_symplectic(lo_rep)
            # both are genuine symmetric symplectic square roots
            for rep in (hi_rep, lo_rep):
                h = rep.to_matrix()
                assert np.max(np.abs(h @ h - y)) <= 1e-9 * (1 + np.max(np.abs(y)))
                assert check_sym_symplectic(rep)
                assert np.trace(h) > 0.0
            checked += 1
        assert checked > 80

    def test_requires_nonzero_d(self):
        with pytest.raises(ValueError):
            sqrt_root_candidates(np.eye(4))


class TestSO4Extraction:
    def test_identity(self):
        got = so4_to_quaternion_pair(np.eye(4))
        assert got.u == ONE and got.v0 == 1.0 and got.v2 == 0.0

    def test_j4(self):
        got = so4_to_quaternion_pair(J4.copy())
        assert got.u == ONE and got.v0 == 0.0 and got.v2 == 1.0

    def test_round_trip_random(self):
        gen = Xoshiro256pp(33)
        from sp4quat.testkit import random_ortho_symplectic_pair

        for _ in range(200):
            pair = random_ortho_symplectic_pair(gen)
            m = pair.matrix()
            got = so4_to_quaternion_pair(m)
            np.testing.assert_allclose(got.matrix(), m, atol=1e-12)
            # recovery is exact up to the global sign fixed by canonicalization
            cu, cv0, cv2 = canonicalize_pair(pair.u, pair.v0, pair.v2)
            np.testing.assert_allclose(got.u.as_array(), cu.as_array(), atol=1e-12)
            assert abs(got.v0 - cv0) <= 1e-12
            assert abs(got.v2 - cv2) <= 1e-12

    def test_not_decomposable(self):
        with pytest.raises(NotDecomposableError):
            so4_to_quaternion_pair(np.diag([2.0, 1.0, 1.0, 1.0]))

    def test_scaled_rotation_rejected(self):
        with pytest.raises(NotDecomposableError):
            so4_to_quaternion_pair(np.eye(4) + J4)

    def test_orthogonal_but_not_symplectic(self):
        # 1 (x) i is special orthogonal but v = i is outside span{1, j}
        with pytest.raises(NotSymplecticOrthogonalError):
            so4_to_quaternion_pair(matrix_of_tensor(ONE, QI))

    def test_canonical_sign(self):
        u, v0, v2 = canonicalize_pair(-ONE, -0.6, 0.8)
        assert u == ONE and v0 == 0.6 and v2 == -0.8
        # leading near-zero component is skipped when deciding the sign
        u2, _, _ = canonicalize_pair(Quaternion(0.0, -0.5, 0.5, 0.0), 1.0, 0.0)
        assert u2.x == 0.5


class TestPolarDecompose:
    def test_identity(self):
        factors = polar_decompose(np.eye(4))
        np.testing.assert_array_equal(factors.U, np.eye(4))
        np.testing.assert_array_equal(factors.H, np.eye(4))

    def test_j4(self):
        factors = polar_decompose(J4.copy())
        np.testing.assert_allclose(factors.U, J4, atol=1e-15)
        np.testing.assert_allclose(factors.H, np.eye(4), atol=1e-15)

    def test_shear(self):
        factors = polar_decompose(SHEAR)
        np.testing.assert_allclose(factors.H, SHEAR_H, atol=1e-12)
        np.testing.assert_allclose(factors.U, SHEAR @ np.linalg.inv(SHEAR_H),
                                   atol=1e-12)
        np.testing.assert_allclose(factors.U.T @ factors.U, np.eye(4), atol=1e-13)
        assert factors.info.branch == "larger"

    def test_rejects_non_symplectic(self):
        with pytest.raises(NotSymplecticError):
            polar_decompose(np.diag([2.0, 1.0, 1.0, 1.0]))

    def test_random_invariants(self, small_stream):
        for x in small_stream[:120]:
            factors = polar_decompose(x)
            y = x.T @ x
            assert np.max(np.abs(factors.U @ factors.H - x)) <= 1e-10 * (1 + np.max(np.abs(x)))
            assert np.max(np.abs(factors.U.T @ factors.U - np.eye(4))) <= 1e-11
            assert is_symplectic(factors.U)
            assert is_symplectic(factors.H)
            assert is_pd_symplectic(factors.sym)
            assert np.max(np.abs(factors.H @ factors.H - y)) <= 1e-10 * (1 + np.max(np.abs(y)))


class TestFullQuaternionForm:
    def test_trivials(self):
        ortho, sym = full_quaternion_form(np.eye(4))
        assert (ortho.u, ortho.v0, ortho.v2) == (ONE, 1.0, 0.0)
        assert sym.a == 1.0
        ortho, sym = full_quaternion_form(J4.copy())
        assert (ortho.u, ortho.v0, ortho.v2) == (ONE, 0.0, 1.0)
        assert sym.a == 1.0

    def test_reconstruction(self, small_stream):
        for x in small_stream[:80]:
            ortho, sym = full_quaternion_form(x)
            rebuilt = ortho.matrix() @ sym.to_matrix()
            assert np.max(np.abs(rebuilt - x)) <= 1e-9 * (1 + np.max(np.abs(x)))

    def test_single_parameter_perturbation_breaks_symplectic(self, small_stream):
        # the ten-parameter family is exactly the constraint manifold: nudging
        # any single raw parameter off it must break symplectic membership.
        eps = 1e-3
        for x in small_stream[:5]:
            ortho, sym = full_quaternion_form(x)
            variants = []
            for k in range(4):
                arr = ortho.u.as_array().copy()
                arr[k] += eps
                variants.append((OrthoSymplecticQuat(Quaternion.from_array(arr),
                                                     ortho.v0, ortho.v2), sym))
            for dv0, dv2 in ((eps, 0.0), (0.0, eps)):
                variants.append((OrthoSymplecticQuat(ortho.u, ortho.v0 + dv0,
                                                     ortho.v2 + dv2), sym))
            variants.append((ortho, SymSymplecticRep(sym.a + eps, sym.p, sym.q, sym.r)))
            for k in range(3):
                dp = sym.p.copy()
                dp[k] += eps
                variants.append((ortho, SymSymplecticRep(sym.a, dp, sym.q, sym.r)))
                dq = sym.q.copy()
                dq[k] += eps
                variants.append((ortho, SymSymplecticRep(sym.a, sym.p, dq, sym.r)))
                dr = sym.r.copy()
                dr[k] += eps
                variants.append((ortho, SymSymplecticRep(sym.a, sym.p, sym.q, dr)))
            for o2, s2 in variants:
                rebuilt = o2.matrix() @ s2.to_matrix()
                assert not is_symplectic(rebuilt)


class TestEnumerate:
    def test_identity(self):
        roots = enumerate_sym_symplectic_sqrts(np.eye(4))
        assert len(roots) == 2
        assert sorted(rep.a for rep in roots) == [-1.0, 1.0]

    def test_shear_census(self):
        # the shear Gram has d = (0, 1/4, 0), so the full census applies
        roots = enumerate_sym_symplectic_sqrts(SHEAR.T @ SHEAR)
        assert len(roots) == 4
        assert sum(1 for rep in roots if rep.a > 0) == 2

    def test_positive_pair_matches_root_candidates(self, small_stream):
        for x in small_stream[:40]:
            y = x.T @ x
            gram = gram_rep_of(y)
            if norm3(gram.d) <= TAU_D * (1.0 + gram.b):
                continue
            roots = enumerate_sym_symplectic_sqrts(y)
            assert len(roots) == 4
            positive = sorted((rep for rep in roots if rep.a > 0),
                              key=lambda rep: rep.a)
            hi_rep, lo_rep = sqrt_root_candidates(y)
            cand = sorted((hi_rep, lo_rep), key=lambda rep: rep.a)
            for got, expected in zip(positive, cand):
                np.testing.assert_allclose(got.to_matrix(), expected.to_matrix(),
                                           atol=1e-9 * (1 + np.max(np.abs(y))))


class TestEulerCartan:
    def test_identity(self):
        fact = euler_cartan(np.eye(4))
        np.testing.assert_allclose(fact.U1 @ fact.D @ fact.U2, np.eye(4), atol=1e-14)
        np.testing.assert_allclose(fact.D, np.eye(4), atol=1e-14)
        assert fact.degenerate  # repeated singular value 1

    def test_already_diagonal(self):
        x = np.diag([2.0, 1.0, 0.5, 1.0])
        fact = euler_cartan(x)
        np.testing.assert_allclose(fact.D, x, atol=1e-12)
        np.testing.assert_allclose(fact.U1 @ fact.D @ fact.U2, x, atol=1e-12)
        assert not fact.degenerate

    def test_random(self, small_stream):
        for x in small_stream[:120]:
            fact = euler_cartan(x)
            scale = 1.0 + np.max(np.abs(x))
            assert np.max(np.abs(fact.U1 @ fact.D @ fact.U2 - x)) <= 1e-9 * scale
            d = np.diag(fact.D)
            assert d[0] >= d[1] >= 1.0 - 1e-12
            assert abs(d[0] * d[2] - 1.0) <= 1e-9
            assert abs(d[1] * d[3] - 1.0) <= 1e-9
            for u in (fact.U1, fact.U2):
                assert is_symplectic(u)
                assert np.max(np.abs(u.T @ u - np.eye(4))) <= 1e-10

    def test_jacobi_fallback_agrees(self, small_stream):
        for x in small_stream[:20]:
            h = polar_decompose(x).H
            v = _diag_via_jacobi(h)
            assert v is not None
            assert is_symplectic(v)
            np.testing.assert_allclose(v.T @ v, np.eye(4), atol=1e-12)
            d = v.T @ h @ v
            assert np.max(np.abs(d - np.diag(np.diag(d)))) <= 1e-10 * (1 + np.max(np.abs(h)))


def _branch_family_member(t):
    """Symmetric symplectic H with p = (t,0,0), r = (0,0,t), q = (r x p)/a.

    The Gram matrix y = H^2 has |d| = 4 t^2, which crosses the zero-branch
    threshold (about 2e-8 here) near t = 7.0711e-5.
    """
    a = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t * t))
    p = np.array([t, 0.0, 0.0])
    r = np.array([0.0, 0.0, t])
    q = cross(r, p) / a
    return SymSymplecticRep(a=a, p=p, q=q, r=r).to_matrix()


class TestBranchContinuity:
    def test_h_stays_near_truth_across_threshold(self):
        for t in np.linspace(5e-5, 9e-5, 41):
            h_true = _branch_family_member(t)
            h_got = sqrt_pd_symplectic(h_true @ h_true).to_matrix()
            assert np.max(np.abs(h_got - h_true)) <= 1e-7

    def test_adjacent_outputs_continuous(self):
        from sp4quat.polar import _sqrt_from_gram

        # steps fine enough that the family itself moves by only ~2e-9, so
        # any branch-switch jump would dominate the adjacent difference
        branches = set()
        previous = None
        for t in np.linspace(7.05e-5, 7.10e-5, 51):
            h_true = _branch_family_member(t)
            y = h_true @ h_true
            rep, info = _sqrt_from_gram(gram_rep_of(y))
            branches.add(info.branch)
            h_got = rep.to_matrix()
            if previous is not None:
                assert np.max(np.abs(h_got - previous)) <= 1e-7
            previous = h_got
        # the sweep must actually exercise both sides of the threshold
        assert branches == {"zero_j", "larger"}


class TestRotationHelpers:
    def test_round_trip(self):
        gen = Xoshiro256pp(77)
        from sp4quat.testkit import random_unit_quaternion

        for _ in range(100):
            w = random_unit_quaternion(gen)
            rot = _rotation_from_quaternion(w)
            # proper rotation
            np.testing.assert_allclose(rot @ rot.T, np.eye(3), atol=1e-13)
            assert abs(np.linalg.det(rot) - 1.0) <= 1e-12
            back = _quaternion_from_rotation(rot)
            same = min((back - w).norm(), (back + w).norm())
            assert same <= 1e-12

    def test_rotation_acts_by_conjugation(self):
        w = Quaternion(0.5, 0.5, 0.5, 0.5)
        rot = _rotation_from_quaternion(w)
        for v in (np.array([1.0, 0, 0]), np.array([0.0, 1, 0]), np.array([0.3, -2, 1])):
            lhs = (w * Quaternion.from_vector(v) * w.conj()).vector
            np.testing.assert_allclose(lhs, rot @ v, atol=1e-14)


def test_gram_rep_trivial():
    gram = gram_rep_of(np.eye(4))
    assert gram.b == 1.0
    for v in (gram.c, gram.d, gram.e):
        np.testing.assert_array_equal(v, np.zeros(3))


def test_gram_rep_invariants(small_stream):
    for x in small_stream[:50]:
        gram = gram_rep_of(x.T @ x)
        assert gram.b > 0.0
        lhs = gram.b ** 2 - gram.c @ gram.c + gram.d @ gram.d - gram.e @ gram.e
        assert abs(lhs - 1.0) <= 1e-9 * (1.0 + gram.b ** 2)
        assert abs(gram.c @ gram.d) <= 1e-9 * (1.0 + gram.b ** 2)
        assert abs(gram.e @ gram.d) <= 1e-9 * (1.0 + gram.b ** 2)
