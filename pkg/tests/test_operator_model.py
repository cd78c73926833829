"""Tests for validation, classification, shift and composition"""

import math

import pytest

from src.core.operator_model import (
    classify,
    compose_params,
    matching_inner,
    matching_outer,
    shift_params,
    validate,
)
from src.models.errors import (
    BadDomain,
    EtaTooSmall,
    IncompatibleComposition,
    MismatchedRhoOrSide,
    NonFiniteParameter,
    NonPositiveAlpha,
    NonPositiveRho,
)
from src.models.operator import ClassicalReduction, Domain, OperatorParams, Side

R = ClassicalReduction


class TestValidate:

    def test_accepts_general_tuple(self, general_left, general_right):
        validate(general_left)
        validate(general_right)

    @pytest.mark.parametrize("params, error", [
        (OperatorParams(0.0, 1.0, 1.0), NonPositiveAlpha),
        (OperatorParams(math.inf, 1.0, 1.0), NonPositiveAlpha),
        (OperatorParams(0.5, 1.0, -1.0), NonPositiveRho),
        (OperatorParams(0.5, math.nan, 1.0), NonFiniteParameter),
        (OperatorParams(0.5, 1.0, 1.0, kappa=math.inf), NonFiniteParameter),
        (OperatorParams(0.5, 1.0, 1.0, domain=Domain(1.0, 1.0)), BadDomain),
        (OperatorParams(0.5, 1.0, 1.0, domain=Domain(-1.0, 2.0)), BadDomain),
        (OperatorParams(0.5, 1.0, 2.0, domain=Domain(-math.inf, math.inf)), BadDomain),
        (OperatorParams(0.5, 1.0, 1.0, eta=0.5, domain=Domain(-math.inf, math.inf)), BadDomain),
        (OperatorParams(0.5, 1.0, 1.0, eta=-1.0), EtaTooSmall),
        (OperatorParams(0.5, 1.0, 1.0, side=Side.RIGHT_GENERAL, domain=Domain(0.0, 2.0)), NonFiniteParameter),
    ])
    def test_rejects(self, params, error):
        with pytest.raises(error):
            validate(params)

    def test_eta_below_minus_one_allowed_away_from_origin(self):
        validate(OperatorParams(0.5, 1.0, 1.0, eta=-2.0, domain=Domain(1.0, 2.0)))


class TestClassify:

    def test_riemann_liouville_any_beta(self):
        assert classify(OperatorParams(0.5, 0.3, 1.0)) is R.RIEMANN_LIOUVILLE
        assert classify(OperatorParams(0.5, 0.5, 1.0)) is R.RIEMANN_LIOUVILLE

    def test_katugampola(self, katugampola_half):
        assert classify(katugampola_half) is R.KATUGAMPOLA

    def test_erdelyi_kober(self):
        params = OperatorParams(0.5, 0.0, 2.0, eta=0.5, kappa=-2.0)
        assert classify(params) is R.ERDELYI_KOBER

    def test_weyl(self):
        params = OperatorParams(0.5, 1.0, 1.0, domain=Domain(-math.inf, math.inf))
        assert classify(params) is R.WEYL_TYPE

    def test_weyl_rejects_nonzero_eta(self):
        params = OperatorParams(0.5, 1.0, 1.0, eta=0.5, domain=Domain(-math.inf, math.inf))
        with pytest.raises(BadDomain):
            classify(params)

    def test_liouville(self):
        params = OperatorParams(0.5, 0.2, 1.7, eta=0.3, kappa=0.1, side=Side.RIGHT)
        assert classify(params) is R.LIOUVILLE_TYPE

    def test_general(self, general_left):
        assert classify(general_left) is R.GENERAL

    def test_general_right_form_with_foreign_omega(self):
        params = OperatorParams(0.5, 1.0, 1.0, side=Side.RIGHT_GENERAL, domain=Domain(0.0, 2.0), omega=1.0)
        assert classify(params) is R.GENERAL

    def test_general_right_form_with_usual_omega(self):
        params = OperatorParams(0.5, 1.0, 1.0, side=Side.RIGHT_GENERAL, domain=Domain(0.0, 2.0), omega=0.0)
        assert classify(params) is R.RIEMANN_LIOUVILLE

    def test_never_returns_hadamard(self):
        params = OperatorParams(0.5, 0.5, 1e-6, domain=Domain(1.0, math.inf))
        assert classify(params) is not R.HADAMARD_LIMIT


class TestShift:

    def test_left_moves_eta(self, general_left):
        shifted = shift_params(general_left, 0.5)
        assert shifted.eta == pytest.approx(0.9)
        assert shifted.kappa == general_left.kappa

    def test_right_moves_kappa(self, general_right):
        shifted = shift_params(general_right, -0.25)
        assert shifted.kappa == 0.25
        assert shifted.eta == general_right.eta

    def test_shift_below_integrability_is_rejected(self):
        with pytest.raises(EtaTooSmall):
            shift_params(OperatorParams(0.5, 1.0, 1.0, eta=0.5), -2.0)


class TestCompose:

    outer = OperatorParams(0.25, 0.5, 2.0, eta=0.5, kappa=0.25)

    def test_left_composition(self):
        inner = matching_inner(self.outer, 0.5, 0.25, 0.75)
        assert inner.kappa == -1.0
        composed = compose_params(self.outer, inner)
        assert (composed.alpha, composed.beta, composed.eta, composed.kappa) == (0.75, 0.75, 0.75, 0.25)

    def test_right_composition(self):
        inner = OperatorParams(0.5, 0.25, 2.0, eta=0.75, kappa=0.5, side=Side.RIGHT, domain=Domain(0.5, 4.0))
        outer = matching_outer(inner, 0.25, 0.5, 0.25)
        assert outer.kappa == -1.5
        composed = compose_params(outer, inner)
        assert (composed.alpha, composed.beta, composed.eta, composed.kappa) == (0.75, 0.75, 0.25, 0.5)

    def test_general_right_uses_omega(self):
        inner = OperatorParams(0.5, 0.25, 2.0, side=Side.RIGHT_GENERAL, domain=Domain(0.5, 4.0), omega=0.75)
        outer = matching_outer(inner, 0.25, 0.5, 0.0)
        assert outer.kappa == -0.75
        assert compose_params(outer, inner).alpha == 0.75

    def test_is_associative(self):
        a = self.outer
        b = matching_inner(a, 0.5, 0.25, 0.75)
        c = matching_inner(b, 0.75, 0.5, 0.25)
        assert compose_params(compose_params(a, b), c) == compose_params(a, compose_params(b, c))

    def test_mismatched_condition(self):
        inner = self.outer.with_changes(kappa=0.0)
        with pytest.raises(IncompatibleComposition):
            compose_params(self.outer, inner)

    def test_mismatched_rho(self):
        inner = matching_inner(self.outer, 0.5, 0.25, 0.75).with_changes(rho=1.0)
        with pytest.raises(MismatchedRhoOrSide):
            compose_params(self.outer, inner)

    def test_mismatched_side(self):
        inner = matching_inner(self.outer, 0.5, 0.25, 0.75).with_changes(side=Side.RIGHT)
        with pytest.raises(MismatchedRhoOrSide):
            compose_params(self.outer, inner)
