"""Energy functional, truncated variant, constraint functional, gradients."""

import math

import numpy as np
import pytest

from hsvar import (HProfile, InvalidParameterError, PreconditionError,
                   ProblemParams, RadialFunction, StatePair, best_constant,
                   critical_level, energy, energy_positive, exact_solution,
                   gradient, gradient_dual_norm, integrate, lambda_norm_sq,
                   nehari_residual, pair_norm_sq, project,
                   second_variation_diag, weighted_lp)
from hsvar.energy import gradient_coefficients
from conftest import cached_grid, smooth_bump


def params4(nu=0.0, alpha=1.4, beta=1.4, l1=0.3, l2=0.5, h=None):
    return ProblemParams(4, 1.0, l1, l2, alpha, beta, nu,
                         h_profile=h or HProfile())


@pytest.fixture(scope="module")
def zpair(grid4):
    z = RadialFunction(grid4, exact_solution(4, 0.3, 1.0, 1.0, grid4.r))
    return StatePair(z, RadialFunction.zero(grid4))


class TestLambdaNorm:
    def test_zero_lambda_equals_seminorm(self, grid4):
        rng = np.random.default_rng(0)
        u = smooth_bump(grid4, rng)
        from hsvar import gradient_seminorm
        assert lambda_norm_sq(u, 0.0) == gradient_seminorm(grid4, u)

    def test_extremal_value(self, grid4):
        z = RadialFunction(grid4, exact_solution(4, 0.3, 1.0, 1.0, grid4.r))
        K = best_constant(4, 0.3, 1.0) ** 3
        assert lambda_norm_sq(z, 0.3) == pytest.approx(K, rel=1e-4)

    def test_zero_function(self, grid4):
        assert lambda_norm_sq(RadialFunction.zero(grid4), 0.4) == 0.0

    def test_rejects_lambda_at_threshold(self, grid4):
        with pytest.raises(InvalidParameterError):
            lambda_norm_sq(RadialFunction.zero(grid4), 1.0)


class TestEnergy:
    def test_zero_pair(self, grid4):
        assert energy(StatePair.zero(grid4), params4()).total == 0.0

    def test_semitrivial_level_any_nu(self, zpair):
        for nu in (0.0, 0.7, 13.0):
            bd = energy(zpair, params4(nu=nu))
            assert bd.total == pytest.approx(critical_level(4, 0.3, 1.0), rel=1e-4)
            assert bd.coupling == 0.0

    def test_level_scale_invariant(self, grid4):
        vals = []
        for mu in (0.1, 1.0, 10.0):
            z = RadialFunction(grid4, exact_solution(4, 0.3, 1.0, mu, grid4.r))
            pair = StatePair(z, RadialFunction.zero(grid4))
            vals.append(energy(pair, params4()).total)
        spread = (max(vals) - min(vals)) / abs(vals[1])
        assert spread < 1e-4

    def test_breakdown_total_identity(self, grid4):
        rng = np.random.default_rng(1)
        pr = params4(nu=0.8, h=HProfile("bump", p_exp=2, q_exp=3))
        pair = StatePair(smooth_bump(grid4, rng), smooth_bump(grid4, rng))
        bd = energy(pair, pr)
        total = (0.5 * (bd.kinetic_u - pr.lambda1 * bd.hardy_u)
                 + 0.5 * (bd.kinetic_v - pr.lambda2 * bd.hardy_v)
                 - (bd.hs_u + bd.hs_v) / pr.crit_exp - pr.nu * bd.coupling)
        assert bd.total == pytest.approx(total, rel=1e-14)

    def test_ray_scaling(self, zpair, grid4):
        # along the ray t*z the energy is exactly (t^2/2) A - (t^p/p) P in the
        # discrete quantities, and approximately the closed form in S
        pr = params4()
        p = pr.crit_exp
        A = pair_norm_sq(zpair, pr)
        P = weighted_lp(grid4, zpair.u, p, 1.0)
        K = best_constant(4, 0.3, 1.0) ** 3
        for t in (0.5, 1.0, 1.7):
            tot = energy(zpair.scaled(t), pr).total
            assert tot == pytest.approx(t * t / 2 * A - t ** p / p * P, rel=1e-13)
            assert tot == pytest.approx((t * t / 2 - t ** p / p) * K, rel=1e-3)


class TestEnergyPositive:
    def test_agrees_on_nonnegative(self, grid4):
        rng = np.random.default_rng(2)
        pr = params4(nu=0.5)
        pair = StatePair(
            RadialFunction(grid4, np.abs(smooth_bump(grid4, rng).values)),
            RadialFunction(grid4, np.abs(smooth_bump(grid4, rng).values)))
        assert energy_positive(pair, pr) == pytest.approx(
            energy(pair, pr).total, rel=1e-13)

    def test_negative_profile_keeps_only_quadratic(self, zpair):
        pr = params4(nu=2.0)
        flipped = StatePair(zpair.u.scaled(-1.0), zpair.v)
        expected = 0.5 * lambda_norm_sq(zpair.u, pr.lambda1)
        assert energy_positive(flipped, pr) == pytest.approx(expected, rel=1e-13)

    def test_zero_pair(self, grid4):
        assert energy_positive(StatePair.zero(grid4), params4()) == 0.0


class TestNehariResidual:
    def test_extremal_is_on_constraint(self, zpair):
        pr = params4(nu=3.0)
        res = nehari_residual(zpair, pr)
        assert abs(res) <= 1e-4 * pair_norm_sq(zpair, pr)

    def test_zero_pair(self, grid4):
        assert nehari_residual(StatePair.zero(grid4), params4()) == 0.0

    def test_scaled_extremal(self, zpair, grid4):
        pr = params4()
        p = pr.crit_exp
        A = pair_norm_sq(zpair, pr)
        P = weighted_lp(grid4, zpair.u, p, 1.0)
        res = nehari_residual(zpair.scaled(2.0), pr)
        assert res == pytest.approx(4 * A - 2 ** p * P, rel=1e-12)
        K = best_constant(4, 0.3, 1.0) ** 3
        assert res == pytest.approx(4 * K - 2 ** p * K, rel=1e-3)
        assert res < 0


class TestGradient:
    def test_zero_pair_has_zero_gradient(self, grid4):
        g = gradient(StatePair.zero(grid4), params4(nu=1.0))
        assert not np.any(g.u.values) and not np.any(g.v.values)

    def test_extremal_is_critical_point(self, zpair):
        _, rel = gradient_dual_norm(zpair, params4(nu=0.0))
        assert rel <= 1e-5

    def test_pairing_matches_directional_derivative(self, grid4):
        rng = np.random.default_rng(3)
        pr = ProblemParams(3, 0.5, 0.1, 0.15, 2.2, 2.2, 0.5)
        g3 = cached_grid(3)
        z1 = RadialFunction(g3, exact_solution(3, 0.1, 0.5, 1.0, g3.r))
        base_scale = float(np.interp(1.0, g3.r, z1.values))
        errs = []
        for _ in range(5):
            pair = StatePair(
                RadialFunction(g3, z1.values + 0.3 * base_scale * smooth_bump(g3, rng).values),
                RadialFunction(g3, 0.7 * base_scale * np.abs(smooth_bump(g3, rng).values)))
            gpair = gradient(pair, pr)
            J0 = energy(pair, pr).total
            for _ in range(4):
                d_u = smooth_bump(g3, rng)
                d_v = smooth_bump(g3, rng)
                pairing = (integrate(g3, RadialFunction(g3, gpair.u.values * d_u.values))
                           + integrate(g3, RadialFunction(g3, gpair.v.values * d_v.values)))
                best = math.inf
                for h in 10.0 ** np.arange(-3.0, -8.0, -1.0):
                    plus = StatePair(
                        RadialFunction(g3, pair.u.values + h * d_u.values),
                        RadialFunction(g3, pair.v.values + h * d_v.values))
                    minus = StatePair(
                        RadialFunction(g3, pair.u.values - h * d_u.values),
                        RadialFunction(g3, pair.v.values - h * d_v.values))
                    fd = (energy(plus, pr).total - energy(minus, pr).total) / (2 * h)
                    best = min(best, abs(fd - pairing) / (abs(J0) + 1.0))
                errs.append(best)
        assert max(errs) <= 1e-6


class TestSecondVariation:
    def test_extremal_value(self, zpair, grid4):
        pr = params4()
        val = second_variation_diag(zpair, pr, tol=1e-3)
        K = best_constant(4, 0.3, 1.0) ** 3
        p = pr.crit_exp
        assert val == pytest.approx((2 - p) * K, rel=1e-3)
        assert val < 0

    def test_critical_coupling_collapses_second_term(self, grid4):
        # alpha + beta equal to the critical exponent kills the second bracket
        pr = ProblemParams(4, 1.0, 0.3, 0.5, 1.5, 1.5, 0.2,
                           h_profile=HProfile("bump", p_exp=2, q_exp=3))
        rng = np.random.default_rng(4)
        pair = StatePair(smooth_bump(grid4, rng), smooth_bump(grid4, rng))
        proj = project(pair, pr).projected
        val = second_variation_diag(proj, pr, tol=1e-8)
        assert val == pytest.approx((2 - pr.crit_exp) * pair_norm_sq(proj, pr), rel=1e-10)

    def test_negative_on_random_projected_pairs(self, grid4):
        rng = np.random.default_rng(5)
        pr = params4(nu=0.6)
        for _ in range(50):
            pair = StatePair(smooth_bump(grid4, rng), smooth_bump(grid4, rng))
            proj = project(pair, pr).projected
            assert second_variation_diag(proj, pr, tol=1e-8) < 0

    def test_precondition_enforced(self, zpair):
        with pytest.raises(PreconditionError):
            second_variation_diag(zpair.scaled(2.0), params4(), tol=1e-8)


class TestOnConstraintIdentities:
    @pytest.mark.parametrize("nu,h", [(0.0, None), (0.9, None),
                                      (2.5, HProfile("bump", p_exp=1.5, q_exp=2.5))])
    def test_two_forms_of_constrained_energy(self, grid4, nu, h):
        rng = np.random.default_rng(6)
        pr = params4(nu=nu, h=h)
        p, q = pr.crit_exp, pr.alpha + pr.beta
        for _ in range(5):
            pair = StatePair(
                RadialFunction(grid4, np.abs(smooth_bump(grid4, rng).values)),
                RadialFunction(grid4, np.abs(smooth_bump(grid4, rng).values)))
            proj = project(pair, pr, tol=1e-14).projected
            bd = energy(proj, pr)
            direct = bd.total
            form_a = ((0.5 - 1.0 / q) * pair_norm_sq(proj, pr)
                      + (1.0 / q - 1.0 / p) * (bd.hs_u + bd.hs_v))
            form_b = ((2 - pr.s) / (2 * (4 - pr.s)) * (bd.hs_u + bd.hs_v)
                      + nu * (q - 2) / 2 * bd.coupling)
            assert direct == pytest.approx(form_a, rel=1e-10)
            assert direct == pytest.approx(form_b, rel=1e-10)


def test_gradient_boundary_slots_are_dirichlet(grid4, zpair):
    gu, gv = gradient_coefficients(zpair, params4())
    assert gu[0] == gu[-1] == 0.0
    assert gv[0] == gv[-1] == 0.0
