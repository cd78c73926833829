"""Tests for the command-line front end"""

import argparse
import json
import math

import numpy as np
import pytest

from src.cli import main, parse_points


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParsePoints:

    def test_single(self):
        np.testing.assert_array_equal(parse_points("1.5"), [1.5])

    def test_geometric_range(self):
        np.testing.assert_allclose(parse_points("1:8:4"), [1.0, 2.0, 4.0, 8.0])

    def test_linear_range_from_zero(self):
        np.testing.assert_allclose(parse_points("0:1:3"), [0.0, 0.5, 1.0])

    @pytest.mark.parametrize("text", ["abc", "1:2", "1:2:0", "1:2:x"])
    def test_rejects(self, text):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_points(text)


class TestEval:

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "eval", "--alpha", "0.5", "--f", "const:1", "--x", "1")
        assert code == 0
        header, row, end = out.split("\n")
        assert header == "x,value,abs_err,method"
        x, value, _, method = row.split(",")
        assert float(x) == 1.0
        assert float(value) == pytest.approx(1.1283791671, rel=1e-10)
        assert method == "closed-form"
        assert end == ""

    def test_json_range(self, capsys):
        code, out, _ = run(capsys, "eval", "--alpha", "0.5", "--beta", "0.5", "--rho", "2",
                           "--f", "const:1", "--x", "0.5:2:3", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert [r["x"] for r in data["results"]] == pytest.approx([0.5, 1.0, 2.0])
        assert data["results"][1]["value"] == pytest.approx(0.7978845608, rel=1e-10)
        assert data["params"]["rho"] == 2.0

    def test_forced_method(self, capsys):
        code, out, _ = run(capsys, "eval", "--alpha", "0.5", "--f", "const:1", "--x", "1",
                           "--method", "jacobi-spectral")
        assert code == 0
        assert out.split("\n")[1].endswith(",jacobi-spectral")

    def test_right_side_with_finite_end(self, capsys):
        code, out, _ = run(capsys, "eval", "--alpha", "1", "--side", "right", "--b", "3",
                           "--f", "const:1", "--x", "1")
        assert code == 0
        assert float(out.split("\n")[1].split(",")[1]) == pytest.approx(2.0, rel=1e-13)

    def test_missing_function_is_usage_error(self, capsys):
        code, _, err = run(capsys, "eval", "--alpha", "0.5", "--x", "1")
        assert code == 1
        assert "--f" in err

    def test_invalid_parameter(self, capsys):
        code, out, err = run(capsys, "eval", "--alpha", "-1", "--f", "const:1", "--x", "1")
        assert code == 2
        assert out == ""
        assert "NonPositiveAlpha" in err

    def test_bad_function_text(self, capsys):
        code, _, err = run(capsys, "eval", "--alpha", "0.5", "--f", "foo:1", "--x", "1")
        assert code == 2
        assert "position 0" in err

    def test_point_outside_domain(self, capsys):
        code, _, err = run(capsys, "eval", "--alpha", "0.5", "--a", "1", "--f", "const:1", "--x", "0.5")
        assert code == 2
        assert "XOutOfDomain" in err

    def test_negative_terminal(self, capsys):
        code, _, err = run(capsys, "eval", "--alpha", "0.5", "--a", "-1", "--f", "const:1", "--x", "1")
        assert code == 2
        assert "BadDomain" in err

    def test_divergent_tail(self, capsys):
        code, _, err = run(capsys, "eval", "--alpha", "0.5", "--side", "right", "--f", "const:1", "--x", "0.5")
        assert code == 3
        assert "DivergentTail" in err


class TestClassify:

    def test_katugampola(self, capsys):
        code, out, _ = run(capsys, "classify", "--alpha", "0.5", "--beta", "0.5", "--rho", "2")
        assert code == 0
        name, payload = out.strip().split("\n")
        assert name == "katugampola"
        data = json.loads(payload)
        assert data["classical"]["rho"] == 2.0

    def test_general(self, capsys):
        code, out, _ = run(capsys, "classify", "--alpha", "0.5", "--beta", "0.2", "--rho", "2", "--eta", "0.3")
        assert code == 0
        name, payload = out.strip().split("\n")
        assert name == "general"
        assert json.loads(payload)["classical"] is None

    def test_weyl_with_infinite_terminal(self, capsys):
        code, out, _ = run(capsys, "classify", "--alpha", "0.5", "--a=-inf")
        assert code == 0
        assert out.split("\n")[0] == "weyl-type"

    def test_weyl_with_nonzero_eta_is_rejected(self, capsys):
        code, _, err = run(capsys, "classify", "--alpha", "0.5", "--a=-inf", "--eta", "0.5")
        assert code == 2
        assert "BadDomain" in err


class TestNumbers:

    def test_norm(self, capsys):
        code, out, _ = run(capsys, "norm", "--f", "const:1", "--p", "1", "--c", "1", "--a", "1", "--b", "2")
        assert code == 0
        assert out == "1.00000000000\n"

    def test_norm_supremum(self, capsys):
        code, out, _ = run(capsys, "norm", "--f", "const:1", "--p", "inf", "--c", "0", "--a", "1", "--b", "2")
        assert code == 0
        assert float(out) == 1.0

    def test_norm_needs_positive_interval(self, capsys):
        code, _, _ = run(capsys, "norm", "--f", "const:1", "--c", "0", "--b", "2")
        assert code == 2

    def test_kconst(self, capsys):
        code, out, _ = run(capsys, "kconst", "--alpha", "1", "--c", "1", "--a", "1", "--b", "2")
        assert code == 0
        assert float(out) == pytest.approx(2.0 * math.log(2.0), rel=1e-10)

    def test_kconst_precondition(self, capsys):
        code, _, err = run(capsys, "kconst", "--alpha", "1", "--c", "2", "--a", "1", "--b", "2")
        assert code == 2
        assert "rho >= c" in err


class TestVerify:

    def test_text(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "shift", "--seed", "1", "--cases", "3")
        assert code == 0
        assert out.startswith("shift: 3/3 pass, worst rel_diff = ")
        assert out.count("\n") == 1

    def test_json_is_reproducible(self, capsys):
        argv = ("verify", "--suite", "hadamard-limit", "--seed", "2", "--cases", "2", "--format", "json")
        code, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert code == 0
        assert first == second
        data = json.loads(first)
        assert data["seed"] == 2
        assert data["suites"][0]["suite"] == "hadamard-limit"
        case = data["suites"][0]["reports"][0]
        assert {"lhs", "rhs", "abs_diff", "rel_diff", "tolerance_used", "passed", "relation"} <= set(case)

    def test_zero_cases_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "verify", "--cases", "0")
        assert code == 1

    def test_unknown_suite_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "verify", "--suite", "nope")
        assert code == 1

    @pytest.mark.parametrize("suite", ["semigroup", "product", "bounded", "reductions"])
    def test_identity_suites_pass(self, capsys, suite):
        code, out, _ = run(capsys, "verify", "--suite", suite, "--seed", "1", "--cases", "2")
        assert code == 0
        assert out.startswith(f"{suite}: 2/2 pass, worst rel_diff = ")

    def test_all_suites_with_default_cases_are_reproducible(self, capsys):
        code, first, _ = run(capsys, "verify", "--suite", "all", "--seed", "1")
        again, second, _ = run(capsys, "verify", "--suite", "all", "--seed", "1")
        assert code == again == 0
        assert first == second
        assert first.count("\n") == 6


def test_no_subcommand_is_usage_error(capsys):
    code, _, _ = run(capsys)
    assert code == 1


def test_help_exits_cleanly(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "eval" in out
