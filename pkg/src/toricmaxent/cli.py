"""Command-line front end: fit, emit polynomial systems, check distributions.

Problems arrive as JSON documents; results go to stdout, diagnostics to
stderr.  Exit codes: 0 success, 1 solver failure (infeasible moments or
rank deficiency), 2 input error, 3 size limit.  Identical inputs and flags
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

import json

from .errors import (
    InfeasibleMomentsError,
    RankDeficiencyError,
    SizeLimitError,
    UnsupportedStructureError,
)
from .maxent import (
    DEFAULT_TOL,
    MaxEntProblem,
    direct_system,
    dual_system,
    fit_algebraic,
    fit_numeric,
    kl_divergence,
    moments,
    shannon_entropy,
)
from .ratpoly import GREVLEX, LEX, MonomialOrder, poly_to_text
from .toric import (
    ConstraintMatrix,
    check_ones_in_rowspan,
    toric_ideal_generators,
    verify_model_membership,
)

EXIT_OK = 0
EXIT_SOLVER = 1
EXIT_INPUT = 2
EXIT_SIZE = 3


class InputError(Exception):
    """Malformed problem document or flags; message names the field path."""


@dataclass(frozen=True)
class ConstraintDef:
    name: str
    values: tuple[int, ...]
    target: Fraction | None


@dataclass(frozen=True)
class ProblemDef:
    """Validated problem document: alphabet size, constraints, data, prior."""

    m: int
    constraints: tuple[ConstraintDef, ...]
    samples: tuple[int, ...] | None
    prior: tuple[Fraction, ...] | None

    def to_problem(self) -> MaxEntProblem:
        matrix = ConstraintMatrix(tuple(c.values for c in self.constraints))
        if self.samples is not None:
            return MaxEntProblem.from_samples(matrix, self.samples, prior=self.prior)
        return MaxEntProblem.from_targets(matrix, tuple(c.target for c in self.constraints), prior=self.prior)


def _as_rational(value, path: str) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"{path}: expected a number, got a boolean")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{path}: cannot parse {value!r} as a rational") from None
    raise InputError(f"{path}: expected a number or 'a/b' string")


def parse_problem(text: str) -> ProblemDef:
    """Parse and validate a problem document.

    Targets and priors may be integers, decimals (converted exactly from
    their literal digits) or ``"a/b"`` strings.  Constraint values must be
    integers.
    """
    try:
        doc = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("top level: expected an object")
    known = {"m", "constraints", "samples", "prior"}
    for key in doc:
        if key not in known:
            raise InputError(f"{key}: unknown field")

    m = doc.get("m")
    if isinstance(m, bool) or not isinstance(m, int) or m < 2:
        raise InputError("m: expected an integer >= 2")

    raw_constraints = doc.get("constraints")
    if not isinstance(raw_constraints, list) or not raw_constraints:
        raise InputError("constraints: expected a nonempty array")

    samples = doc.get("samples")
    if samples is not None:
        if not isinstance(samples, list) or not samples:
            raise InputError("samples: expected a nonempty array")
        cleaned = []
        for j, value in enumerate(samples):
            if isinstance(value, bool) or not isinstance(value, int):
                raise InputError(f"samples[{j}]: expected an integer symbol")
            if not 1 <= value <= m:
                raise InputError(f"samples[{j}]: symbol {value} outside 1..{m}")
            cleaned.append(value)
        samples = tuple(cleaned)

    constraints = []
    for i, raw in enumerate(raw_constraints):
        path = f"constraints[{i}]"
        if not isinstance(raw, dict):
            raise InputError(f"{path}: expected an object")
        name = raw.get("name")
        if not isinstance(name, str) or not name:
            raise InputError(f"{path}.name: expected a nonempty string")
        values = raw.get("values")
        if not isinstance(values, list) or len(values) != m:
            raise InputError(f"{path}.values: expected an array of length {m}")
        cleaned_values = []
        for j, value in enumerate(values):
            if isinstance(value, bool) or not isinstance(value, int):
                raise InputError(
                    f"{path}.values[{j}]: integer-valued constraint functions are required"
                )
            cleaned_values.append(value)
        target = raw.get("target")
        if target is not None:
            if samples is not None:
                raise InputError(f"{path}.target: targets and samples are mutually exclusive")
            target = _as_rational(target, f"{path}.target")
        elif samples is None:
            raise InputError(f"{path}.target: missing (and no samples given)")
        constraints.append(ConstraintDef(name, tuple(cleaned_values), target))

    prior = doc.get("prior")
    if prior is not None:
        if not isinstance(prior, list) or len(prior) != m:
            raise InputError(f"prior: expected an array of length {m}")
        weights = []
        for j, value in enumerate(prior):
            w = _as_rational(value, f"prior[{j}]")
            if w <= 0:
                raise InputError(f"prior[{j}]: weights must be strictly positive")
            weights.append(w)
        prior = tuple(weights)

    return ProblemDef(m, tuple(constraints), samples, prior)


def _format_real(x: float) -> str:
    return "%.17g" % float(x)


def _to_json(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _format_real(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_to_json(v) for v in value) + "]"
    if isinstance(value, dict):
        items = (f"{json.dumps(k)}: {_to_json(v)}" for k, v in value.items())
        return "{" + ", ".join(items) + "}"
    if value is None:
        return "null"
    raise TypeError(f"cannot serialize {type(value)!r}")


def _emit(out, payload: dict, fmt: str) -> None:
    if fmt == "json":
        out.write(_to_json(payload) + "\n")
        return
    for key, value in payload.items():
        if isinstance(value, float):
            out.write(f"{key}: {_format_real(value)}\n")
        elif isinstance(value, (list, tuple)):
            if all(isinstance(v, str) for v in value):
                for v in value:
                    out.write(f"{key}: {v}\n")
            else:
                rendered = " ".join(
                    _format_real(v) if isinstance(v, float) else str(v) for v in value
                )
                out.write(f"{key}: {rendered}\n")
        else:
            out.write(f"{key}: {value}\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _read_distribution(path: str, m: int) -> tuple[float, ...]:
    text = _read_text(path)
    try:
        doc = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise InputError(f"distribution file: invalid JSON: {exc}") from None
    if isinstance(doc, dict):
        doc = doc.get("p")
    if not isinstance(doc, list):
        raise InputError("distribution file: expected an array or an object with a 'p' field")
    if len(doc) != m:
        raise InputError(f"distribution file: expected {m} probabilities, got {len(doc)}")
    values = []
    for j, value in enumerate(doc):
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise InputError(f"distribution file: p[{j}] is not a number")
        values.append(float(value))
    return tuple(values)


def _text_order(args) -> MonomialOrder:
    return LEX if args.order == "lex" else GREVLEX


def _fit_payload(result) -> dict:
    payload = {
        "solver": result.solver,
        "iterations": result.iterations,
        "xi": [float(v) for v in result.xi],
    }
    if result.xi_empirical is not None:
        payload["xi_empirical"] = [float(v) for v in result.xi_empirical]
    payload.update(
        {
            "p": list(result.p.as_floats()),
            "logZ": float(result.log_z),
            "residual": float(result.residual),
        }
    )
    return payload


def _cmd_fit(args, out, err) -> int:
    parsed = parse_problem(_read_text(args.problem))
    problem = parsed.to_problem()
    if args.solver == "groebner":
        try:
            result = fit_algebraic(problem)
        except UnsupportedStructureError as exc:
            err.write(f"warning: algebraic solve unsupported ({exc}); falling back to newton\n")
            result = fit_numeric(problem, solver="newton", tol=args.tol, max_iter=args.max_iter)
    else:
        result = fit_numeric(problem, solver=args.solver, tol=args.tol, max_iter=args.max_iter)
    _emit(out, _fit_payload(result), args.format)
    return EXIT_OK


def _cmd_system(args, out, err) -> int:
    parsed = parse_problem(_read_text(args.problem))
    problem = parsed.to_problem()
    system = direct_system(
        problem.matrix, problem.target_values(), problem.prior, problem.theta_names
    )
    order = _text_order(args)
    rendered = [poly_to_text(eq, order) for eq in system.equations]
    if args.format == "json":
        _emit(out, {
            "provenance": system.provenance,
            "variables": list(system.variables),
            "equations": rendered,
        }, "json")
    else:
        for line in rendered:
            out.write(line + "\n")
    return EXIT_OK


def _cmd_dual(args, out, err) -> int:
    parsed = parse_problem(_read_text(args.problem))
    problem = parsed.to_problem()
    source = problem.samples if problem.samples is not None else problem.targets
    try:
        system = dual_system(problem.matrix, source, problem.prior, problem.theta_names)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    order = _text_order(args)
    payload = {
        "provenance": system.provenance,
        "variables": list(system.variables),
        "objective": poly_to_text(system.objective, order),
        "gradient": [poly_to_text(g, order) for g in system.gradient],
        "equations": [poly_to_text(eq, order) for eq in system.equations],
    }
    if args.format == "json":
        _emit(out, payload, "json")
    else:
        out.write(f"objective: {payload['objective']}\n")
        for g in payload["gradient"]:
            out.write(f"gradient: {g}\n")
        for eq in payload["equations"]:
            out.write(f"cleared: {eq}\n")
    return EXIT_OK


def _cmd_ideal(args, out, err) -> int:
    parsed = parse_problem(_read_text(args.problem))
    matrix = ConstraintMatrix(tuple(c.values for c in parsed.constraints))
    generators = toric_ideal_generators(matrix)
    order = _text_order(args)
    rendered = [poly_to_text(g, order) for g in generators]
    if args.format == "json":
        _emit(out, {
            "variables": [f"p{j + 1}" for j in range(matrix.m)],
            "generators": rendered,
        }, "json")
    else:
        for line in rendered:
            out.write(line + "\n")
    return EXIT_OK


def _cmd_check(args, out, err) -> int:
    parsed = parse_problem(_read_text(args.problem))
    problem = parsed.to_problem()
    p = _read_distribution(args.dist, parsed.m)
    matrix = problem.matrix
    if not check_ones_in_rowspan(matrix):
        # normalized distributions only satisfy homogeneous binomials, so
        # test against the model of the matrix with a constant row adjoined
        matrix = ConstraintMatrix(((1,) * matrix.m,) + matrix.rows)
    report = verify_model_membership(p, matrix, tol=args.tol)
    targets = [float(t) for t in problem.target_values()]
    mom = moments(problem.matrix, p)
    residuals = [abs(a - b) for a, b in zip(mom, targets)]
    max_moment = max(residuals)
    passed = report.member and max_moment <= args.tol
    _emit(out, {
        "member": report.member,
        "max_ideal_residual": report.max_residual,
        "ideal_residuals": list(report.residuals),
        "moment_residuals": residuals,
        "max_moment_residual": max_moment,
        "tol": float(args.tol),
        "passed": passed,
    }, args.format)
    if passed:
        return EXIT_OK
    err.write("check failed: distribution is off the model or misses its targets\n")
    return EXIT_SOLVER


def _cmd_entropy(args, out, err) -> int:
    parsed = parse_problem(_read_text(args.problem))
    p = _read_distribution(args.dist, parsed.m)
    if any(x < 0 for x in p):
        raise InputError("distribution file: negative probability")
    if parsed.prior is not None:
        total = sum(parsed.prior)
        reference = [float(w / total) for w in parsed.prior]
    else:
        reference = [1.0 / parsed.m] * parsed.m
    _emit(out, {
        "entropy": shannon_entropy(p),
        "kl_to_prior": kl_divergence(p, reference),
    }, args.format)
    return EXIT_OK


_COMMANDS = {
    "fit": _cmd_fit,
    "system": _cmd_system,
    "dual": _cmd_dual,
    "ideal": _cmd_ideal,
    "check": _cmd_check,
    "entropy": _cmd_entropy,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricmaxent",
        description="Fit maximum-entropy models and emit their polynomial systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, dist: bool = False) -> None:
        p.add_argument("problem", help="problem JSON file, or - for stdin")
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--order", choices=("lex", "grevlex"), default="grevlex")
        if dist:
            p.add_argument("--dist", required=True, help="distribution JSON file, or - for stdin")

    fit = sub.add_parser("fit", help="fit the multipliers and distribution")
    common(fit)
    fit.add_argument("--solver", choices=("gis", "newton", "groebner"), default="newton")
    fit.add_argument("--max-iter", type=int, default=None)

    common(sub.add_parser("system", help="emit the direct moment-matching system"))
    common(sub.add_parser("dual", help="emit the Laurent dual objective and its gradient"))
    common(sub.add_parser("ideal", help="emit toric ideal generators"))
    common(sub.add_parser("check", help="membership and moment residuals of a distribution"), dist=True)
    common(sub.add_parser("entropy", help="entropy and divergence of a distribution"), dist=True)
    return parser


def main(argv=None, out=None, err=None) -> int:
    """Entry point; returns the process exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.tol <= 0:
        err.write("error: --tol must be positive\n")
        return EXIT_INPUT
    try:
        return _COMMANDS[args.command](args, out, err)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except SizeLimitError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_SIZE
    except (InfeasibleMomentsError, RankDeficiencyError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_SOLVER


def console_main() -> None:
    raise SystemExit(main())
