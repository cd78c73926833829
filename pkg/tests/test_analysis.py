"""Tests for norms, the boundedness constant and the identity checks"""

import math

import pytest

from src.core.analysis import (
    bound_constant_K,
    check_boundedness,
    check_product_integration,
    check_semigroup,
    check_shift,
    xpc_norm,
)
from src.core.operator_model import matching_inner, matching_outer
from src.models.errors import ArgsOutOfRange, BadDomain, MismatchedRhoOrSide, PreconditionViolated
from src.models.functions import Const, Exp, Poly, Power, Sin
from src.models.operator import Domain, OperatorParams, Side
from src.models.results import SpaceParams


class TestNorm:

    def test_weighted_l1(self):
        assert xpc_norm(Const(1.0), SpaceParams(1.0, 1.0), 1.0, 2.0) == pytest.approx(1.0, rel=1e-12)

    def test_supremum_of_constant(self):
        assert xpc_norm(Const(1.0), SpaceParams(math.inf, 0.0), 0.3, 7.0) == 1.0

    def test_supremum_inside_interval(self):
        # x * exp(-x) peaks at x = 1
        value = xpc_norm(Exp(-1.0), SpaceParams(math.inf, 1.0), 0.5, 3.0)
        assert value == pytest.approx(math.exp(-1.0), rel=1e-6)

    def test_l2_of_identity(self):
        assert xpc_norm(Power(1.0), SpaceParams(2.0, 0.0), 1.0, 2.0) == pytest.approx(math.sqrt(1.5), rel=1e-12)

    def test_lebesgue_space(self):
        assert xpc_norm(Const(1.0), SpaceParams.lebesgue(2.0), 1.0, 3.0) == pytest.approx(math.sqrt(2.0), rel=1e-12)

    def test_rejects_origin(self):
        with pytest.raises(BadDomain):
            xpc_norm(Const(1.0), SpaceParams(2.0, 0.0), 0.0, 1.0)

    def test_rejects_p_below_one(self):
        with pytest.raises(ArgsOutOfRange):
            SpaceParams(0.5, 0.0)

    @pytest.mark.parametrize("p", [1.0, 2.0, math.inf])
    def test_scaling_the_function_scales_the_norm(self, p):
        space = SpaceParams(p, 0.5)
        f = Poly((1.0, 2.0, -0.5))
        scaled = Poly((-3.0, -6.0, 1.5))
        assert xpc_norm(scaled, space, 0.5, 2.0) == pytest.approx(3.0 * xpc_norm(f, space, 0.5, 2.0), rel=1e-12)


class TestBoundConstant:

    unit = OperatorParams(1.0, 1.0, 1.0)

    @pytest.mark.parametrize("path", ["jacobi", "graded"])
    def test_unit_weight(self, path):
        assert bound_constant_K(self.unit, SpaceParams(2.0, 0.0), 1.0, 2.0, path=path) == pytest.approx(1.0, rel=1e-8)

    @pytest.mark.parametrize("path", ["jacobi", "graded"])
    def test_log_weight(self, path):
        value = bound_constant_K(self.unit, SpaceParams(2.0, 1.0), 1.0, 2.0, path=path)
        assert value == pytest.approx(2.0 * math.log(2.0), rel=1e-8)

    @pytest.mark.parametrize("params, c, b", [
        (OperatorParams(0.5, 0.5, 1.0), 0.0, 2.0),
        (OperatorParams(1.4, 0.2, 2.5, eta=0.6, kappa=-0.3), 1.2, 5.0),
        (OperatorParams(0.3, -0.5, 0.7, eta=1.5, kappa=0.8), -0.5, 40.0),
    ])
    def test_paths_agree(self, params, c, b):
        space = SpaceParams(2.0, c)
        jacobi = bound_constant_K(params, space, 1.0, b)
        graded = bound_constant_K(params, space, 1.0, b, path="graded")
        assert jacobi == pytest.approx(graded, rel=1e-8)

    def test_preconditions(self):
        with pytest.raises(PreconditionViolated, match="rho >= c"):
            bound_constant_K(self.unit, SpaceParams(2.0, 1.5), 1.0, 2.0)
        with pytest.raises(PreconditionViolated, match="eta >= 0"):
            bound_constant_K(self.unit.with_changes(eta=-0.5), SpaceParams(2.0, 0.0), 1.0, 2.0)
        with pytest.raises(PreconditionViolated, match="0 < a < b < inf"):
            bound_constant_K(self.unit, SpaceParams(2.0, 0.0), 0.0, 2.0)

    def test_unknown_path(self):
        with pytest.raises(ArgsOutOfRange):
            bound_constant_K(self.unit, SpaceParams(2.0, 0.0), 1.0, 2.0, path="simpson")

    def test_grows_with_the_upper_end(self):
        params = OperatorParams(0.7, 0.2, 1.5, eta=0.4, kappa=0.1)
        values = [bound_constant_K(params, SpaceParams(2.0, 0.5), 1.0, b) for b in (1.5, 2.0, 4.0, 8.0, 16.0)]
        assert all(lower < upper for lower, upper in zip(values, values[1:]))


class TestBoundedness:

    def test_holds_in_l2(self):
        report = check_boundedness(OperatorParams(0.5, 0.5, 1.0), Const(1.0), SpaceParams(2.0, 0.5), 1.0, 2.0)
        assert report.passed
        assert report.relation == "<="
        assert report.lhs <= report.rhs

    def test_holds_for_supremum(self):
        params = OperatorParams(0.8, 0.1, 1.5, eta=0.2, kappa=0.4)
        report = check_boundedness(params, Sin(2.0), SpaceParams(math.inf, 0.5), 0.5, 1.5)
        assert report.passed


class TestShift:

    def test_left(self, general_left):
        report = check_shift(general_left, 0.5, Sin(1.0), 2.0)
        assert report.passed, report

    def test_left_from_origin(self):
        report = check_shift(OperatorParams(0.6, 0.2, 1.3, eta=0.4, kappa=0.1), 0.75, Exp(-1.0), 1.2)
        assert report.passed, report

    def test_right(self, general_right):
        report = check_shift(general_right, -0.25, Exp(-0.5), 1.0)
        assert report.passed, report


class TestSemigroup:

    def test_two_half_integrals_make_one(self):
        half = OperatorParams(0.5, 0.5, 1.0)
        report = check_semigroup(half, half, Const(1.0), 1.5)
        assert report.lhs == pytest.approx(1.5, rel=1e-6)
        assert report.rhs == pytest.approx(1.5, rel=1e-12)
        assert report.passed

    def test_left_from_terminal(self):
        outer = OperatorParams(0.75, 0.5, 1.5, eta=0.5, kappa=0.3, domain=Domain(0.5, 3.0))
        inner = matching_inner(outer, 0.5, 0.2, 0.25)
        report = check_semigroup(outer, inner, Exp(0.4), 2.0)
        assert report.passed, report

    def test_right(self):
        inner = OperatorParams(0.5, 0.2, 1.5, eta=0.25, kappa=0.3, side=Side.RIGHT, domain=Domain(0.5, 3.0))
        outer = matching_outer(inner, 0.75, 0.5, 0.5)
        report = check_semigroup(outer, inner, Exp(-0.4), 1.0)
        assert report.passed, report


class TestProductIntegration:

    def test_holds(self):
        params = OperatorParams(0.6, 0.2, 1.3, eta=0.4, kappa=0.1)
        report = check_product_integration(params, Const(1.0), Power(0.5), 0.5, 1.8)
        assert report.passed, report

    def test_needs_left_operator(self, general_right):
        with pytest.raises(MismatchedRhoOrSide):
            check_product_integration(general_right, Const(1.0), Const(1.0), 0.5, 1.8)
