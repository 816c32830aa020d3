"""Tests for restriction polynomials, classification, bounds, and curves."""

import random
from fractions import Fraction

import pytest

from thinrays.errors import WrongCase
from thinrays.exactnum import FieldElement, IntPolynomial, exact_sign, sqrt_upper
from thinrays.forms import (
    CubicObjective,
    LinVec,
    SymMatrix,
    SymTensor3,
    eval_bilinear,
    eval_cubic,
    eval_linear,
    eval_trilinear,
    symmetrize_tensor,
)
from thinrays.rayanalysis import (
    LimitClass,
    RestrictionPoly,
    ShrinkCase,
    classify_limit,
    curve_critical_directions,
    direction_diagnostics,
    perturbation_bounds,
    restriction,
    shrink_epsilon,
)


def rand_fraction(rng, num=6, den=4):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_objective(rng, n=3):
    raw = [[[rand_fraction(rng) for _ in range(n)] for _ in range(n)] for _ in range(n)]
    T = symmetrize_tensor(raw)
    rawm = [[rand_fraction(rng) for _ in range(n)] for _ in range(n)]
    from thinrays.forms import symmetrize_matrix

    M = symmetrize_matrix(rawm)
    V = LinVec([rand_fraction(rng) for _ in range(n)])
    return CubicObjective(T, M, V, rand_fraction(rng))


def rand_vector(rng, n=3):
    return tuple(rand_fraction(rng) for _ in range(n))


class TestRestriction:
    def test_cubic_instance_rational_ray(self, cubic):
        f, _, _, _ = cubic
        r = restriction(f, (1, 1, 1), (1, 1, 1))
        assert r.coefficients() == (1, 3, 2, 0)
        # Cross-check: f(2,2,2) = r(1) = 1+3+2+0.
        assert eval_cubic(f, (2, 2, 2)) == 6 == r(1)

    def test_cubic_instance_critical_ray(self, cubic):
        f, _, theta, d = cubic
        r = restriction(f, (0, 0, 0), d)
        assert exact_sign(r.a3) == 0
        assert exact_sign(r.a2) == 0
        assert r.a1 == -FieldElement.theta(theta)
        assert exact_sign(r.a0) == 0

    def test_zero_objective(self):
        f = CubicObjective(SymTensor3.zero(2), SymMatrix.zero(2), LinVec.zero(2))
        r = restriction(f, (0, 0), (1, 0))
        assert all(exact_sign(c) == 0 for c in r.coefficients())

    def test_matches_direct_evaluation(self):
        rng = random.Random(2024)
        for _ in range(100):
            f = rand_objective(rng)
            y = tuple(rng.randint(-3, 3) for _ in range(3))
            d = rand_vector(rng)
            if all(c == 0 for c in d):
                d = (Fraction(1), Fraction(0), Fraction(0))
            r = restriction(f, y, d)
            for _ in range(5):
                lam = rand_fraction(rng, num=8, den=3)
                point = tuple(y[i] + lam * d[i] for i in range(3))
                assert r(lam) == eval_cubic(f, point)

    def test_translation_identity(self):
        # Coefficients of the translated restriction match the delta terms.
        rng = random.Random(2025)
        for _ in range(50):
            f = rand_objective(rng)
            y = tuple(rng.randint(-2, 2) for _ in range(3))
            z = rand_vector(rng)
            d = rand_vector(rng)
            if all(c == 0 for c in d):
                continue
            base = restriction(f, y, d)
            yz = tuple(y[i] + z[i] for i in range(3))
            shifted = restriction(f, yz, d)
            delta2 = 3 * eval_trilinear(f.T, z, d, d)
            delta1 = (
                6 * eval_trilinear(f.T, y, z, d)
                + 3 * eval_trilinear(f.T, z, z, d)
                + 2 * eval_bilinear(f.M, z, d)
            )
            delta0 = (
                3 * eval_trilinear(f.T, y, z, z)
                + 3 * eval_trilinear(f.T, y, y, z)
                + eval_trilinear(f.T, z, z, z)
                + 2 * eval_bilinear(f.M, y, z)
                + eval_bilinear(f.M, z, z)
                + eval_linear(f.V, z)
            )
            assert shifted.a3 == base.a3
            assert shifted.a2 == base.a2 + delta2
            assert shifted.a1 == base.a1 + delta1
            assert shifted.a0 == base.a0 + delta0


class TestClassify:
    def test_critical_ray_is_minus_inf_degree_one(self, cubic):
        f, _, _, d = cubic
        verdict = classify_limit(restriction(f, (0, 0, 0), d))
        assert verdict.kind is LimitClass.MINUS_INF
        assert verdict.degree == 1

    def test_positive_cubic(self):
        r = RestrictionPoly(Fraction(1), Fraction(3), Fraction(2), Fraction(0))
        assert classify_limit(r) == (LimitClass.PLUS_INF, 3)

    def test_constant(self):
        r = RestrictionPoly(Fraction(0), Fraction(0), Fraction(0), Fraction(5))
        assert classify_limit(r) == (LimitClass.CONSTANT, 0)

    def test_linear_positive_slope_is_plus_inf(self):
        r = RestrictionPoly(Fraction(0), Fraction(0), Fraction(2), Fraction(-9))
        assert classify_limit(r) == (LimitClass.PLUS_INF, 1)

    def test_agrees_with_large_sample(self):
        rng = random.Random(31337)
        lam = Fraction(10**6)
        for _ in range(50):
            coeffs = [Fraction(rng.randint(-50, 50), rng.randint(1, 10)) for _ in range(4)]
            r = RestrictionPoly(*coeffs)
            verdict = classify_limit(r)
            value = r(lam)
            if verdict.kind is LimitClass.MINUS_INF:
                assert value < 0
            elif verdict.kind is LimitClass.PLUS_INF:
                assert value > 0
            else:
                assert value == coeffs[3]


class TestPerturbationBounds:
    def test_zero_objective(self):
        f = CubicObjective(SymTensor3.zero(2), SymMatrix.zero(2), LinVec.zero(2))
        b = perturbation_bounds(f, (0, 0), (1, 0), Fraction(1, 2))
        assert (b.d2, b.d1, b.d0) == (0, 0, 0)

    def test_cubic_instance_d2(self, cubic):
        f, _, _, d = cubic
        eps = Fraction(1, 2)
        b = perturbation_bounds(f, (0, 0, 0), d, eps)
        # D2 = 3 eps * 13 * U_d^2 with U_d^2 >= 2^(2/3) + 2^(4/3) + 1.
        dsq_lb = Fraction(51072, 10**4)
        assert b.d2 >= 3 * eps * 13 * dsq_lb
        assert b.d2 <= 3 * eps * 13 * Fraction(52, 10)
        assert b.u_y == 0

    def test_delta2_soundness_sampling(self, cubic):
        f, _, _, d = cubic
        eps = Fraction(1, 2)
        b = perturbation_bounds(f, (0, 0, 0), d, eps)
        rng = random.Random(606)
        count = 0
        while count < 100:
            z = tuple(
                Fraction(rng.randint(-8, 8), 32) for _ in range(3)
            )
            if sum(c * c for c in z) > eps * eps:
                continue
            count += 1
            delta2 = 3 * eval_trilinear(f.T, z, d, d)
            # |delta2| <= D2, compared through squares to stay exact.
            assert exact_sign(b.d2 * b.d2 - delta2 * delta2) >= 0

    def test_delta1_delta0_soundness_random(self):
        rng = random.Random(607)
        f = rand_objective(rng)
        y = (1, -2, 0)
        d = rand_vector(rng)
        eps = Fraction(1, 3)
        b = perturbation_bounds(f, y, d, eps)
        count = 0
        while count < 100:
            z = tuple(Fraction(rng.randint(-6, 6), 24) for _ in range(3))
            if sum(c * c for c in z) > eps * eps:
                continue
            count += 1
            delta1 = (
                6 * eval_trilinear(f.T, y, z, d)
                + 3 * eval_trilinear(f.T, z, z, d)
                + 2 * eval_bilinear(f.M, z, d)
            )
            delta0 = (
                3 * eval_trilinear(f.T, y, z, z)
                + 3 * eval_trilinear(f.T, y, y, z)
                + eval_trilinear(f.T, z, z, z)
                + 2 * eval_bilinear(f.M, y, z)
                + eval_bilinear(f.M, z, z)
                + eval_linear(f.V, z)
            )
            assert abs(delta1) <= b.d1
            assert abs(delta0) <= b.d0


class TestShrinkEpsilon:
    def test_no_shrink_when_bounds_vanish(self):
        f = CubicObjective(
            SymTensor3.zero(2), SymMatrix.zero(2), LinVec([Fraction(-1), 0])
        )
        eps = shrink_epsilon(f, (0, 0), (1, 0), Fraction(1, 2), ShrinkCase.DEG1)
        assert eps == Fraction(1, 2)

    def test_cubic_instance_shrinks(self, cubic):
        f, _, _, d = cubic
        eps = shrink_epsilon(f, (0, 0, 0), d, Fraction(1, 2), ShrinkCase.DEG1)
        assert 0 < eps <= Fraction(1, 2)
        r = restriction(f, (0, 0, 0), d)
        b = perturbation_bounds(f, (0, 0, 0), d, eps)
        assert exact_sign(r.a1 + b.d1) < 0

    def test_quadratic_instance_shrinks(self, quadratic):
        f, _, _, d = quadratic
        eps = shrink_epsilon(f, (0, 0), d, Fraction(1, 2), ShrinkCase.DEG1)
        r = restriction(f, (0, 0), d)
        b = perturbation_bounds(f, (0, 0), d, eps)
        assert exact_sign(r.a1 + b.d1) < 0

    def test_wrong_case(self, cubic):
        f, _, _, _ = cubic
        with pytest.raises(WrongCase):
            shrink_epsilon(f, (1, 1, 1), (1, 1, 1), Fraction(1, 2), ShrinkCase.DEG1)


class TestDiagnostics:
    def test_cubic_critical_direction(self, cubic):
        f, _, theta, d = cubic
        diag = direction_diagnostics(f, d)
        assert diag.t3_zero
        assert diag.m2_zero
        assert diag.tdd_zero
        assert diag.v1 == -FieldElement.theta(theta)
        assert not diag.v1_nonnegative

    def test_cubic_ones_direction(self, cubic):
        f, _, _, _ = cubic
        diag = direction_diagnostics(f, (1, 1, 1))
        assert diag.t3 == 1
        assert not diag.t3_zero

    def test_zero_objective_all_zero(self):
        f = CubicObjective(SymTensor3.zero(2), SymMatrix.zero(2), LinVec.zero(2))
        diag = direction_diagnostics(f, (1, 0), (0, 1))
        assert diag.t3_zero and diag.m2_zero and diag.tdd_zero
        assert diag.mdv_zero and diag.tdv_zero

    def test_second_direction_contractions(self, cubic):
        f, _, _, _ = cubic
        diag = direction_diagnostics(f, (1, 1, 1), (2, 1, 1))
        assert diag.mdv == 0
        # (T[d,v])_i = sum_jk T_ijk d_j v_k by definition.
        tdv = diag.tdv
        d = (1, 1, 1)
        v = (2, 1, 1)
        for i in range(3):
            direct = sum(
                f.T[i, j, k] * d[j] * v[k] for j in range(3) for k in range(3)
            )
            assert tdv[i] == direct

    def test_vanishing_contraction_kills_trilinear(self, cubic):
        # T[d,d] = 0 forces T[x,d,d] = 0 for every x.
        f, _, _, d = cubic
        diag = direction_diagnostics(f, d)
        assert diag.tdd_zero
        rng = random.Random(9)
        for _ in range(20):
            x = rand_vector(rng)
            assert eval_trilinear(f.T, x, d, d).is_zero


class TestCurveCriticalDirections:
    def test_cubic_curve_polynomial_and_root(self, cubic):
        f, _, theta, d = cubic
        curve = [
            IntPolynomial([0, 1]),      # t
            IntPolynomial([0, 0, 1]),   # t^2
            IntPolynomial([1]),         # 1
        ]
        res = curve_critical_directions(f, curve, (1, 2))
        assert not res.identically_zero
        assert res.form_degree == 3
        assert list(res.coefficients) == [4, 0, 0, -4, 0, 0, 1]  # (t^3-2)^2
        assert len(res.roots) == 1
        crit = res.roots[0]
        assert crit.root.min_poly == IntPolynomial([-2, 0, 0, 1])
        assert all((a - b).is_zero for a, b in zip(crit.direction, d))

    def test_quadratic_curve_root_in_field(self, quadratic):
        f, _, theta, d = quadratic
        curve = [IntPolynomial([0, 1]), IntPolynomial([1])]
        res = curve_critical_directions(f, curve, (1, 2))
        assert res.form_degree == 2
        assert len(res.roots) == 1
        crit = res.roots[0]
        assert crit.root.min_poly == IntPolynomial([-2, 0, 1])
        assert crit.root.same_root(theta)
        assert all((a - b).is_zero for a, b in zip(crit.direction, d))
        assert not res.uncertified

    def test_zero_objective_identically_zero(self):
        f = CubicObjective(SymTensor3.zero(2), SymMatrix.zero(2), LinVec.zero(2))
        res = curve_critical_directions(
            f, [IntPolynomial([0, 1]), IntPolynomial([1])], (0, 1)
        )
        assert res.identically_zero

    def test_no_roots_in_domain(self, cubic):
        f, _, _, _ = cubic
        curve = [
            IntPolynomial([0, 1]),
            IntPolynomial([0, 0, 1]),
            IntPolynomial([1]),
        ]
        res = curve_critical_directions(f, curve, (3, 4))
        assert res.roots == ()

    def test_rational_critical_root(self):
        # T[x,x,x] = x1^2 x2 along curve (t, t-1, 0-ish): root at integer t.
        raw = [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]
        raw[0][0][1] = 3  # alpha_112 = 3 -> T[x,x,x] = 3 x1^2 x2... symmetrized
        T = symmetrize_tensor(raw)
        f = CubicObjective(T, SymMatrix.zero(2), LinVec.zero(2))
        curve = [IntPolynomial([0, 1]), IntPolynomial([-1, 1])]  # (t, t-1)
        res = curve_critical_directions(f, curve, (Fraction(1, 2), 2))
        # T[d(t)] = 3 t^2 (t-1) has the root t=1 in the domain.
        assert any(c.root.to_fraction() == 1 for c in res.roots)
        for c in res.roots:
            if c.root.to_fraction() == 1:
                assert [x for x in c.direction] == [1, 0]
