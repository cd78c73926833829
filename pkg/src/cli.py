"""
Command-line front end

Subcommands: eval, classify, norm, kconst, verify. Data goes to standard
output, diagnostics to standard error.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 numerical failure,
4 a verification suite failed.
"""

import argparse
import logging
import sys
from typing import List, Optional

import numpy as np

from .config import config
from .core.application import FracIntApp
from .models.errors import InvalidInput, NumericalFailure
from .models.functions import parse_function_spec
from .models.operator import Domain, OperatorParams, Side
from .models.results import EvalMethod, SpaceParams
from .services.reporting import model_to_json, records_to_csv, verify_to_text
from .services.verification import SUITES

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_NUMERICAL = 3
EXIT_SUITE_FAILED = 4


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with 1 on usage errors"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_points(text: str) -> np.ndarray:
    """A single real, or ``lo:hi:n`` for n points (geometric when lo > 0, else linear)"""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return np.array([float(text)])
        if len(parts) == 3:
            lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
            if n < 1:
                raise argparse.ArgumentTypeError(f"range needs n >= 1, got {n}")
            if n == 1:
                return np.array([lo])
            if lo > 0.0 and hi > 0.0:
                return np.geomspace(lo, hi, n)
            return np.linspace(lo, hi, n)
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected a real or lo:hi:n, got {text!r}")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _common_parent() -> argparse.ArgumentParser:
    parent = _Parser(add_help=False)
    parent.add_argument("--verbose", action="store_true", help="Log debug output to standard error.")
    return parent


def _operator_parent() -> argparse.ArgumentParser:
    parent = _Parser(add_help=False)
    parent.add_argument("--alpha", type=float, required=True, help="Order, > 0.")
    parent.add_argument("--beta", type=float, default=1.0, help="Exponent of the rho**(1-beta) prefactor (default: 1).")
    parent.add_argument("--rho", type=float, default=1.0, help="Power-law exponent, > 0 (default: 1).")
    parent.add_argument("--eta", type=float, default=0.0, help="Inner weight exponent (default: 0).")
    parent.add_argument("--kappa", type=float, default=0.0, help="Outer power exponent (default: 0).")
    parent.add_argument("--side", choices=[s.value for s in Side], default=Side.LEFT.value,
                        help="Operator side (default: left).")
    parent.add_argument("--omega", type=float, default=None, help="Outer exponent for --side right-general.")
    return parent


def _domain_parent() -> argparse.ArgumentParser:
    parent = _Parser(add_help=False)
    parent.add_argument("--a", type=float, default=0.0, help="Lower terminal (default: 0; write --a=-inf).")
    parent.add_argument("--b", type=float, default=float("inf"), help="Upper terminal (default: inf).")
    return parent


def _space_parent() -> argparse.ArgumentParser:
    parent = _Parser(add_help=False)
    parent.add_argument("--p", type=float, default=2.0, help="Exponent p in [1, inf] (default: 2).")
    parent.add_argument("--c", type=float, required=True, help="Weight exponent c.")
    return parent


def build_parser() -> argparse.ArgumentParser:
    common = _common_parent()
    operator = _operator_parent()
    domain = _domain_parent()
    space = _space_parent()

    parser = _Parser(prog="fracint", description="Generalized fractional integrals: evaluation and identity checks.")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    eval_parser = subparsers.add_parser("eval", parents=[common, operator, domain],
                                        help="Evaluate the operator at one or more points.")
    eval_parser.add_argument("--f", required=True, help="Integrand, e.g. const:1, pow:0.5, poly:1,2, exp:-1.")
    eval_parser.add_argument("--x", type=parse_points, required=True, help="Point or range lo:hi:n.")
    eval_parser.add_argument("--format", choices=["csv", "json"], default="csv", help="Output format (default: csv).")
    eval_parser.add_argument("--tol", type=float, default=None,
                             help=f"Rule agreement tolerance (default: {config.EVAL_REL_TOL:g}).")
    eval_parser.add_argument("--method", choices=[m.value for m in EvalMethod if m is not EvalMethod.INFINITE_TRANSFORM],
                             default=None, help="Force an evaluation method.")
    eval_parser.set_defaults(handler=cmd_eval)

    classify_parser = subparsers.add_parser("classify", parents=[common, operator, domain],
                                            help="Name the classical operator a tuple reduces to.")
    classify_parser.set_defaults(handler=cmd_classify)

    norm_parser = subparsers.add_parser("norm", parents=[common, domain, space], help="Weighted X^p_c norm of f.")
    norm_parser.add_argument("--f", required=True, help="Function to measure.")
    norm_parser.set_defaults(handler=cmd_norm)

    kconst_parser = subparsers.add_parser("kconst", parents=[common, operator, domain, space],
                                          help="Boundedness constant K on X^p_c(a, b).")
    kconst_parser.set_defaults(handler=cmd_kconst)

    verify_parser = subparsers.add_parser("verify", parents=[common], help="Run seeded verification suites.")
    verify_parser.add_argument("--suite", choices=list(SUITES) + ["all"], default="all", help="Suite to run (default: all).")
    verify_parser.add_argument("--seed", type=int, default=0, help="Random seed (default: 0).")
    verify_parser.add_argument("--cases", type=_positive_int, default=config.VERIFY_CASES,
                               help=f"Cases per suite (default: {config.VERIFY_CASES}).")
    verify_parser.add_argument("--format", choices=["text", "json"], default="text", help="Output format (default: text).")
    verify_parser.set_defaults(handler=cmd_verify)

    return parser


def _params(args) -> OperatorParams:
    return OperatorParams(
        alpha=args.alpha,
        beta=args.beta,
        rho=args.rho,
        eta=args.eta,
        kappa=args.kappa,
        side=Side(args.side),
        domain=Domain(args.a, args.b),
        omega=args.omega,
    )


def cmd_eval(app: FracIntApp, args) -> int:
    method = EvalMethod(args.method) if args.method else None
    report = app.evaluate(_params(args), parse_function_spec(args.f), args.x, tol=args.tol, method=method)
    if args.format == "json":
        print(model_to_json(report))
    else:
        sys.stdout.write(records_to_csv(report.results))
    return EXIT_OK


def cmd_classify(app: FracIntApp, args) -> int:
    report = app.classify(_params(args))
    print(report.reduction)
    print(model_to_json(report))
    return EXIT_OK


def cmd_norm(app: FracIntApp, args) -> int:
    value = app.norm(parse_function_spec(args.f), SpaceParams(args.p, args.c), args.a, args.b)
    print(f"{value:#.12g}")
    return EXIT_OK


def cmd_kconst(app: FracIntApp, args) -> int:
    value = app.kconst(_params(args), SpaceParams(args.p, args.c), args.a, args.b)
    print(f"{value:#.12g}")
    return EXIT_OK


def cmd_verify(app: FracIntApp, args) -> int:
    report = app.verify(args.suite, args.seed, args.cases)
    if args.format == "json":
        print(model_to_json(report))
    else:
        sys.stdout.write(verify_to_text(report))
    return EXIT_OK if report.all_passed else EXIT_SUITE_FAILED


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    app = FracIntApp()
    try:
        return args.handler(app, args)
    except InvalidInput as e:
        logger.error(f"{args.command} rejected its input: {e}")
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalFailure as e:
        logger.error(f"{args.command} failed numerically: {e}")
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
