"""Tests for the integrand catalog and its text grammar"""

import math

import numpy as np
import pytest

from src.models.errors import ArgsOutOfRange, FunctionSpecSyntaxError
from src.models.functions import (
    Const,
    EdgeWeighted,
    Exp,
    LogPower,
    Pointwise,
    Poly,
    Power,
    PowerWeighted,
    Sin,
    parse_function_spec,
)


@pytest.mark.parametrize("text, expected", [
    ("const:2", Const(2.0)),
    ("pow:0.5", Power(0.5)),
    ("poly:1,2,3", Poly((1.0, 2.0, 3.0))),
    ("exp:-1", Exp(-1.0)),
    ("logpow:2", LogPower(2.0)),
    ("logpow:2,0.5", LogPower(2.0, 0.5)),
    ("sin:3", Sin(3.0)),
    ("  POW: 1.5", Power(1.5)),
])
def test_parse(text, expected):
    assert parse_function_spec(text) == expected


def test_text_form_parses_back():
    for f in (Const(2.5), Power(-0.25), Poly((0.5, -1.0)), Exp(-1.5), LogPower(1.0, 2.0), Sin(0.75)):
        assert parse_function_spec(f.to_text()) == f


def test_numpy_scalars_give_plain_text_forms():
    rng = np.random.default_rng(3)
    specs = (
        Const(rng.uniform(0.5, 2.0)),
        Power(np.float64(1.25)),
        Poly(tuple(rng.uniform(-1.0, 1.0, size=3))),
        Exp(rng.uniform(-1.0, 1.0)),
        LogPower(np.float64(2.0), rng.uniform(0.1, 1.0)),
        Sin(rng.uniform(0.5, 3.0)),
    )
    for f in specs:
        text = f.to_text()
        assert "np." not in text and "float64" not in text
        assert parse_function_spec(text) == f


def test_wrapper_text_forms_use_plain_floats():
    f = EdgeWeighted(PowerWeighted(Exp(np.float64(-1.0)), np.float64(0.5)), np.float64(0.3), 1.0, 2.0)
    assert f.to_text() == "edge[lower,0.3]*(pow:0.5*(exp:-1.0))"


@pytest.mark.parametrize("text, position", [
    ("foo:1", 0),
    ("pow", 3),
    ("pow:abc", 4),
    ("pow:1,x", 6),
    ("pow:1,2", 7),
    ("pow:nan", 4),
])
def test_syntax_errors_report_position(text, position):
    with pytest.raises(FunctionSpecSyntaxError) as excinfo:
        parse_function_spec(text)
    assert excinfo.value.position == position
    assert f"position {position}" in str(excinfo.value)


def test_negative_log_exponent_is_a_syntax_error():
    with pytest.raises(FunctionSpecSyntaxError):
        parse_function_spec("logpow:-1")


def test_empty_poly_is_rejected():
    with pytest.raises(ArgsOutOfRange):
        Poly(())


def test_values():
    t = np.array([0.5, 1.0, 2.0])
    np.testing.assert_allclose(Const(3.0)(t), [3.0, 3.0, 3.0])
    np.testing.assert_allclose(Power(2.0)(t), [0.25, 1.0, 4.0])
    np.testing.assert_allclose(Poly((1.0, 0.0, 2.0))(t), [1.5, 3.0, 9.0])
    np.testing.assert_allclose(LogPower(1.0)(t), np.log(t))
    np.testing.assert_allclose(Sin(math.pi)(t), [1.0, 0.0, 0.0], atol=1e-15)


def test_power_terms():
    assert Const(2.0).power_terms() == [(2.0, 0.0)]
    assert Poly((1.0, 0.0, 3.0)).power_terms() == [(1.0, 0.0), (3.0, 2.0)]
    assert Exp(1.0).power_terms() is None
    assert PowerWeighted(Poly((1.0, 2.0)), 0.5).power_terms() == [(1.0, 0.5), (2.0, 1.5)]


def test_times_power_folds_into_powers():
    assert Power(2.0).times_power(1.0) == Power(3.0)
    assert Exp(1.0).times_power(0.0) == Exp(1.0)
    weighted = Exp(1.0).times_power(0.5)
    assert isinstance(weighted, PowerWeighted)
    assert weighted.times_power(-0.5) == Exp(1.0)


def test_split_power():
    assert Const(1.0).split_power() == (0.0, Const(1.0))
    assert Power(1.5, 2.0).split_power() == (1.5, Const(2.0))
    assert PowerWeighted(Sin(1.0), 0.25).split_power() == (0.25, Sin(1.0))


def test_edge_weighted():
    lower = EdgeWeighted(Const(1.0), 1.0, 1.0, 2.0)
    upper = EdgeWeighted(Const(1.0), 0.5, 3.0, 1.0, upper=True)
    assert lower(np.array([2.0]))[0] == pytest.approx(3.0)
    assert upper(np.array([2.0]))[0] == pytest.approx(1.0)


def test_pointwise_keeps_shape():
    f = Pointwise(lambda t: t + 1.0, label="shift")
    values = f(np.array([[0.0, 1.0], [2.0, 3.0]]))
    assert values.shape == (2, 2)
    assert values[1, 1] == 4.0
    assert str(f) == "shift"
