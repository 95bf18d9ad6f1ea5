"""Command line: JSON report on stdout, one-line summary on stderr."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bounds import RESULT_IDS, check_bound
from .errors import CapExceeded, CounterexampleError, HypothesisNotMet
from .identities import DEFAULT_DEGREE_CAP, IDENTITY_IDS, verify_identity
from .multipoly import coefficient_of, parse_poly, poly_mul, poly_pow, power_sum_linear
from .permutations import (
    check_hall,
    check_parker,
    check_snevily,
    hall_permutation,
    parker_decomposition,
    snevily_counterexamples,
    snevily_permutation,
)
from .rings import Cyclotomic
from .star import coeff_via_star, star_evaluate, star_shifted_diagonal
from .sumsets import DEFAULT_CAP, SumsetProblem, encode_element, enumerate_restricted_sumset
from .upoly import UPoly, render_upoly

EXIT_CODES = {"pass": 0, "fail": 1, "hypothesis-not-met": 2, "error": 3}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _text(value):
    """Exact string form of a computed value."""
    if isinstance(value, UPoly):
        return render_upoly(value)
    if isinstance(value, Cyclotomic):
        return encode_element(value)
    return str(value)


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected a comma separated integer list, got {text!r}") from None


def _rational_list(text):
    from fractions import Fraction

    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected a comma separated rational list, got {text!r}") from None


def _json_arg(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from None


def build_parser():
    parser = _Parser(prog="polysumset", description="Exact checks for restricted sumsets and coefficient identities.")
    parser.add_argument("--cap", type=int, default=None, help="max tuples to enumerate (default: $POLYSUMSET_CAP or 10^7)")
    parser.add_argument("--degree-cap", type=int, default=DEFAULT_DEGREE_CAP, help="max total degree of brute expansions")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("identity", help="verify a closed-form identity against expansion")
    p.add_argument("--id", required=True, choices=IDENTITY_IDS)
    p.add_argument("--params", required=True, help="JSON object of parameters")

    p = sub.add_parser("coeff", help="coefficient via the star transform, cross-checked")
    p.add_argument("--poly", required=True)
    p.add_argument("--k", required=True, help="comma separated exponents")
    p.add_argument("--n", type=int, default=None, help="number of variables (default: len(k))")

    p = sub.add_parser("star", help="evaluate the star transform")
    p.add_argument("--poly", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--at", help="comma separated point")
    group.add_argument("--shifts", help="comma separated integer shifts for the diagonal")
    p.add_argument("--n", type=int, default=None)

    p = sub.add_parser("sumset", help="enumerate a restricted sumset or check a bound")
    p.add_argument("--config", required=True, help="problem JSON file")
    p.add_argument("--check", choices=RESULT_IDS, default=None)
    p.add_argument("--params", default=None, help="JSON object, e.g. {\"m\": 1}")
    p.add_argument("--strict", action="store_true", help="treat a violated bound as a counterexample")

    p = sub.add_parser("perm", help="permutation searches")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--snevily", action="store_true")
    mode.add_argument("--hall", action="store_true")
    mode.add_argument("--parker", action="store_true")
    mode.add_argument("--explore-snevily", action="store_true", help="list all b without a valid permutation")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--a", default=None)
    p.add_argument("--b", default=None)
    p.add_argument("--no-enforce", action="store_true", help="search even when the hypothesis fails")

    p = sub.add_parser("suite", help="run the full acceptance suite")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--only", default=None, help="comma separated criterion ids")
    return parser


def _cmd_identity(args):
    params = _json_arg(args.params)
    if not isinstance(params, dict):
        raise UsageError("--params must be a JSON object")
    report = verify_identity(args.id, params, cap=args.degree_cap)
    status = "pass" if report.passed else "fail"
    payload = {"lhs": _text(report.lhs), "rhs": _text(report.rhs), "value": _text(report.rhs)}
    return status, payload


def _cmd_coeff(args):
    k = _int_list(args.k)
    n = args.n if args.n is not None else len(k)
    P = parse_poly(args.poly, n)
    if len(k) != P.arity:
        raise UsageError(f"k has {len(k)} entries but the polynomial has {P.arity} variables")
    via_star = coeff_via_star(P, k)
    oracle = coefficient_of(poly_mul(P, poly_pow(power_sum_linear(P.arity), sum(k) - P.degree)), k)
    status = "pass" if via_star == oracle else "fail"
    return status, {"poly": P.render(), "k": [str(e) for e in k], "star": _text(via_star), "expansion": _text(oracle)}


def _cmd_star(args):
    if args.at is not None:
        point = _rational_list(args.at)
        P = parse_poly(args.poly, args.n if args.n is not None else len(point))
        if len(point) != P.arity:
            raise UsageError("point length does not match the number of variables")
        return "pass", {"poly": P.render(), "at": [str(v) for v in point], "value": _text(star_evaluate(P, point))}
    shifts = _int_list(args.shifts)
    P = parse_poly(args.poly, args.n if args.n is not None else len(shifts))
    if len(shifts) != P.arity:
        raise UsageError("shift count does not match the number of variables")
    value = star_shifted_diagonal(P, shifts)
    return "pass", {
        "poly": P.render(),
        "shifts": [str(s) for s in shifts],
        "value": _text(value),
        "coefficients": [_text(c) for c in value.coeffs],
    }


def _cmd_sumset(args):
    try:
        with open(args.config) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {args.config}: {exc}") from None
    except OSError as exc:
        raise UsageError(f"cannot read {args.config}: {exc}") from None
    try:
        problem = SumsetProblem.from_json(doc)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"bad problem document: {exc!r}") from None
    if args.check is None:
        sums = enumerate_restricted_sumset(problem, cap=args.cap)
        rendered = sorted((encode_element(s) for s in sums), key=lambda s: json.dumps(s))
        return "pass", {"problem": problem.to_json(), "cardinality": str(len(sums)), "sums": rendered}
    params = _json_arg(args.params) if args.params else {}
    if args.check in ("thm1.1", "thm1.2"):
        params.setdefault("m", 1)
    report = check_bound(problem, args.check, params, strict=args.strict, cap=args.cap)
    if not report.hypotheses_met:
        status = "hypothesis-not-met"
    else:
        status = "pass" if report.passed else "fail"
    payload = report.to_json()
    payload["threshold"] = payload["claimed_bound"]
    payload["actual"] = payload["actual_cardinality"]
    payload["problem"] = problem.to_json()
    payload["params"] = {k: str(v) for k, v in params.items()}
    return status, payload


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"missing {', '.join(missing)}")


def _cmd_perm(args):
    if args.snevily or args.explore_snevily:
        _need(args, "m", "n")
        if args.explore_snevily:
            bad = snevily_counterexamples(args.m, args.n)
            status = "pass" if not bad else "fail"
            return status, {"m": str(args.m), "n": str(args.n), "counterexamples": [[str(x) for x in b] for b in bad]}
        _need(args, "b")
        b = _int_list(args.b)
        if not 1 <= args.n <= (args.m + 1) // 2:
            guaranteed = False
        else:
            guaranteed = args.m % 2 == 1
        sigma = snevily_permutation(args.m, args.n, b)
        payload = {"m": str(args.m), "n": str(args.n), "b": [str(x) for x in b], "in_guaranteed_range": guaranteed}
        if sigma is None:
            return ("fail" if guaranteed else "hypothesis-not-met"), dict(payload, sigma=None)
        ok = check_snevily(args.m, b, sigma)
        return ("pass" if ok else "fail"), dict(payload, sigma=[str(s) for s in sigma])
    if args.hall:
        _need(args, "n", "b")
        b = _int_list(args.b)
        a = _int_list(args.a) if args.a else list(range(args.n))
        payload = {"n": str(args.n), "a": [str(x) for x in a], "b": [str(x) for x in b]}
        sigma = hall_permutation(args.n, a, b, enforce=not args.no_enforce)
        if sigma is None:
            status = "fail" if sum(b) % args.n == 0 else "hypothesis-not-met"
            return status, dict(payload, sigma=None)
        return ("pass" if check_hall(args.n, a, b, sigma) else "fail"), dict(payload, sigma=[str(s) for s in sigma])
    _need(args, "n", "b")
    b = _int_list(args.b)
    sigma_p, tau = parker_decomposition(args.n, b)
    ok = check_parker(args.n, b, sigma_p, tau)
    return ("pass" if ok else "fail"), {
        "n": str(args.n),
        "b": [str(x) for x in b],
        "a": [str(x) for x in list(range(1, args.n)) + [0]],
        "sigma": [str(s) for s in sigma_p],
        "tau": [str(t) for t in tau],
    }


def _cmd_suite(args):
    from .suite import run_suite

    only = set(args.only.split(",")) if args.only else None

    def progress(res):
        print(f"criterion {res.id}: {'pass' if res.passed else 'FAIL'} ({res.checks} checks, {res.elapsed:.1f}s)", file=sys.stderr)

    results = run_suite(seed=args.seed, max_n=args.max_n, only=only, progress=progress)
    status = "pass" if all(r.passed for r in results) else "fail"
    return status, {"criteria": [r.to_json() for r in results]}


_COMMANDS = {
    "identity": _cmd_identity,
    "coeff": _cmd_coeff,
    "star": _cmd_star,
    "sumset": _cmd_sumset,
    "perm": _cmd_perm,
    "suite": _cmd_suite,
}


def run_command(argv, emit=True):
    """Run one command; return (exit code, report dict). With ``emit`` the
    report goes to stdout and a summary line to stderr."""
    argv = list(argv)
    report = {"command": argv[0] if argv else None, "argv": argv, "status": "error", "payload": {}}
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand")
        if args.cap is None:
            args.cap = int(os.environ.get("POLYSUMSET_CAP", DEFAULT_CAP))
        report["command"] = args.command
        report["inputs"] = {k: v for k, v in vars(args).items() if k != "command"}
        status, payload = _COMMANDS[args.command](args)
        report["status"] = status
        report["payload"] = payload
    except HypothesisNotMet as exc:
        report["status"] = "hypothesis-not-met"
        report["payload"] = {"reason": str(exc)}
    except CounterexampleError as exc:
        report["status"] = "fail"
        report["payload"] = {"reason": str(exc), "counterexample": exc.dump}
    except (UsageError, CapExceeded, ValueError, TypeError, ArithmeticError, RuntimeError) as exc:
        report["status"] = "error"
        report["payload"] = {"reason": f"{type(exc).__name__}: {exc}"}
    code = EXIT_CODES[report["status"]]
    if emit:
        print(json.dumps(report, indent=2, default=str))
        reason = report["payload"].get("reason") if isinstance(report["payload"], dict) else None
        print(f"{report['command']}: {report['status']}" + (f" ({reason})" if reason else ""), file=sys.stderr)
    return code, report


def main(argv=None):
    code, _ = run_command(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
