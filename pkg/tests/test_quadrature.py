"""Tests for the Gauss-Jacobi, adaptive and graded-mesh integrators"""

import math

import numpy as np
import pytest

from src.core.quadrature import (
    JacobiRuleCache,
    SingularEnd,
    gauss_jacobi_rule,
    graded_breakpoints,
    graded_mesh_singular,
    integrate_adaptive,
    integrate_weighted,
)
from src.core.special_functions import beta
from src.models.errors import (
    ArgsOutOfRange,
    ExponentOutOfRange,
    NonFiniteIntegrand,
    NonIntegrableSingularity,
)


class TestGaussJacobi:

    def test_legendre_case_integrates_cubic(self):
        rule = gauss_jacobi_rule(2, 0.0, 0.0)
        assert float(np.dot(rule.weights, rule.nodes ** 3)) == pytest.approx(0.25, rel=1e-14)

    def test_nodes_sorted_inside_unit_interval(self):
        rule = gauss_jacobi_rule(12, -0.5, 1.5)
        assert rule.nodes[0] > 0.0
        assert rule.nodes[-1] < 1.0
        assert np.all(np.diff(rule.nodes) > 0.0)
        assert np.all(rule.weights > 0.0)

    @pytest.mark.parametrize("n", [1, 3, 7, 12])
    def test_moments_match_beta(self, n):
        rng = np.random.default_rng(n)
        for _ in range(5):
            exp_right, exp_left = rng.uniform(-0.9, 2.0, size=2)
            rule = gauss_jacobi_rule(n, exp_right, exp_left)
            for k in range(2 * n):
                expected = beta(exp_left + k + 1.0, exp_right + 1.0)
                assert float(np.dot(rule.weights, rule.nodes ** k)) == pytest.approx(expected, rel=1e-12)

    def test_zeroth_moment(self):
        rule = gauss_jacobi_rule(6, -0.5, 0.0)
        assert rule.zeroth_moment == pytest.approx(2.0, rel=1e-14)
        assert float(rule.weights.sum()) == pytest.approx(2.0, rel=1e-13)

    def test_rejects_non_integrable_exponent(self):
        with pytest.raises(ExponentOutOfRange):
            gauss_jacobi_rule(4, -1.0, 0.0)

    def test_rejects_empty_rule(self):
        with pytest.raises(ArgsOutOfRange):
            gauss_jacobi_rule(0, 0.0, 0.0)

    def test_rules_are_read_only(self):
        rule = gauss_jacobi_rule(4, 0.5, 0.5)
        with pytest.raises(ValueError):
            rule.nodes[0] = 0.5

    @pytest.mark.parametrize("exp_right, exp_left", [(0.0, 0.0), (-0.5, 0.3), (1.7, -0.8)])
    def test_nodes_of_consecutive_sizes_interlace(self, exp_right, exp_left):
        for n in (3, 10, 41):
            short = gauss_jacobi_rule(n, exp_right, exp_left).nodes
            long = gauss_jacobi_rule(n + 1, exp_right, exp_left).nodes
            assert np.all(long[:-1] < short)
            assert np.all(short < long[1:])


class TestRuleCache:

    def test_returns_same_rule(self):
        cache = JacobiRuleCache()
        first = cache.get(8, 0.25, -0.5)
        assert cache.get(8, 0.25, -0.5) is first
        assert len(cache) == 1

    def test_clears_when_full(self):
        cache = JacobiRuleCache(max_entries=2)
        cache.get(2, 0.0, 0.0)
        cache.get(3, 0.0, 0.0)
        cache.get(4, 0.0, 0.0)
        assert len(cache) == 1


def test_integrate_weighted_rejects_nan():
    rule = gauss_jacobi_rule(4, 0.0, 0.0)
    with pytest.raises(NonFiniteIntegrand):
        integrate_weighted(rule, lambda u: np.log(u - 0.5))


class TestAdaptive:

    def test_sine(self):
        estimate = integrate_adaptive(np.sin, 0.0, math.pi)
        assert estimate.value == pytest.approx(2.0, rel=1e-12)
        assert not estimate.depth_exceeded

    def test_square_root_singularity(self):
        estimate = integrate_adaptive(np.sqrt, 0.0, 1.0, 1e-10)
        assert estimate.value == pytest.approx(2.0 / 3.0, rel=1e-9)

    def test_cancelling_integral_terminates(self):
        estimate = integrate_adaptive(np.sin, -1.0, 1.0)
        assert abs(estimate.value) < 1e-14

    def test_rejects_bad_interval(self):
        with pytest.raises(ArgsOutOfRange):
            integrate_adaptive(np.sin, 1.0, 1.0)
        with pytest.raises(ArgsOutOfRange):
            integrate_adaptive(np.sin, 0.0, math.inf)

    def test_rejects_bad_tolerance(self):
        with pytest.raises(ArgsOutOfRange):
            integrate_adaptive(np.sin, 0.0, 1.0, 0.5)


class TestGradedMesh:

    def test_breakpoints_start_at_zero_and_end_at_length(self):
        cuts = graded_breakpoints(2.0, -0.5, 16)
        assert cuts[0] == 0.0
        assert cuts[-1] == pytest.approx(2.0)
        assert np.all(np.diff(cuts) > 0.0)

    def test_inverse_square_root_at_lower_end(self):
        estimate = graded_mesh_singular(lambda t: t ** -0.5, 0.0, 1.0, SingularEnd.LO, -0.5, 16)
        assert estimate.value == pytest.approx(2.0, rel=1e-9)

    def test_distance_form_at_upper_end(self):
        estimate = graded_mesh_singular(lambda d: d ** -0.5, 1.0, 2.0, SingularEnd.HI, -0.5, 16,
                                        distance_form=True)
        assert estimate.value == pytest.approx(2.0, rel=1e-9)

    def test_smooth_integrand(self):
        estimate = graded_mesh_singular(np.exp, 0.0, 1.0, SingularEnd.LO, 0.0, 8)
        assert estimate.value == pytest.approx(math.e - 1.0, rel=1e-13)
        assert estimate.abs_error_estimate < 1e-10

    def test_rejects_non_integrable_strength(self):
        with pytest.raises(NonIntegrableSingularity):
            graded_mesh_singular(lambda t: 1.0 / t, 0.0, 1.0, SingularEnd.LO, -1.0, 16)

    def test_rejects_single_panel(self):
        with pytest.raises(ArgsOutOfRange):
            graded_mesh_singular(np.exp, 0.0, 1.0, SingularEnd.LO, 0.0, 1)

    def test_floor_piece_counts_toward_the_error(self):
        estimate = graded_mesh_singular(lambda t: (1.0 - t) ** -0.5, 0.0, 1.0, SingularEnd.HI, -0.5, 16)
        assert estimate.value == pytest.approx(2.0, abs=1e-6)
        assert abs(estimate.value - 2.0) <= 2.0 * estimate.abs_error_estimate
        assert estimate.abs_error_estimate < 1e-6

    def test_end_levels_force_halving_for_smooth_ends(self):
        assert graded_breakpoints(1.0, 0.0, 8)[1] == pytest.approx(1.0 / 64.0)
        cuts = graded_breakpoints(1.0, 0.0, 8, end_levels=30)
        assert cuts[1] < 1e-9
        assert cuts[-1] == pytest.approx(1.0)


@pytest.mark.parametrize("alpha", [0.3, 0.7, 1.5])
@pytest.mark.parametrize("rho", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("eta", [0.0, 1.0])
def test_adaptive_and_graded_agree_on_the_kernel(alpha, rho, eta):
    # tau**(rho*eta + rho - 1) * (1 - tau**rho)**(alpha - 1) over [0.5, 1], with s = 1 - tau
    power = rho * eta + rho - 1.0

    def kernel(s):
        return (1.0 - s) ** power * (-np.expm1(rho * np.log1p(-s))) ** (alpha - 1.0)

    def substituted(u):
        # s = u**(1/alpha) removes the s**(alpha - 1) singularity
        s = u ** (1.0 / alpha)
        ratio = -np.expm1(rho * np.log1p(-s)) / (rho * s)
        return (1.0 - s) ** power * ratio ** (alpha - 1.0) * rho ** (alpha - 1.0) / alpha

    adaptive = integrate_adaptive(substituted, 0.0, 0.5 ** alpha, 1e-10)
    graded = graded_mesh_singular(kernel, 0.0, 0.5, SingularEnd.LO, alpha - 1.0, 64, distance_form=True)
    assert graded.value == pytest.approx(adaptive.value, rel=1e-6)
