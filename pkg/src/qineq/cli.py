"""Command-line front end: evaluate, bound, audit and identity-check.

Complex literals use the shell-safe form <re>[+|-]<im>i (a plain real is
accepted as zero-imaginary); pass negatives as --z=-1+0i so the leading dash
is not read as a flag.  Modulus grids are log-spaced lo:hi:count.  Audit
output is CSV (default) or JSON with a fixed column order, reproducible byte
for byte for a fixed seed.

Exit codes: 0 success with all audits passing, 1 at least one audit record
failed, 2 usage or validation errors.  QINEQ_THREADS, when set, must be a
positive integer; it caps worker parallelism (audits currently run on a
single worker, which every cap admits).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import bounds
from .errors import InvalidArgumentError, QSeriesError
from .qcore import QBase
from .series import (
    ConfluentParams,
    LaurentSpec,
    PhiParams,
    eval_confluent_f,
    eval_laurent,
    eval_phi,
    eval_ramanujan_aq,
    eval_theta,
)
from .verify import (
    SweepPlan,
    audit_envelope,
    audit_summary,
    format_complex,
    identity_euler,
    identity_ql_sum,
    identity_qbinomial_theorem,
    identity_theta_triple_product,
    log_grid,
)

CSV_COLUMNS = (
    "function",
    "q",
    "l",
    "param_digest",
    "re_z",
    "im_z",
    "abs_value",
    "envelope_log",
    "ratio",
    "pass",
    "terms_used",
    "tail_bound",
)


def parse_complex(text: str) -> complex:
    """Parse <re>[+|-]<im>i or a plain real literal."""
    try:
        return complex(text.replace("i", "j").replace("I", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected a complex literal like 0.3-0.4i, got {text!r}"
        ) from None


def parse_grid(text: str) -> tuple[float, ...]:
    """Parse lo:hi:count into a log-spaced modulus grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected lo:hi:count, got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        return log_grid(lo, hi, count)
    except (ValueError, InvalidArgumentError) as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}: {exc}") from None


def _theta_stream(q: QBase):
    qq = q.q

    def coeff(k: int) -> complex:
        return complex(qq ** (k * k))

    return coeff


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qineq",
        description="Evaluate q-series special functions and certify their envelopes.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p: argparse.ArgumentParser, with_z: bool) -> None:
        p.add_argument("--function", required=True, choices=("f", "phi", "aq", "theta", "laurent"))
        p.add_argument("--q", type=float, required=True, help="base, 0 < q < 1")
        if with_z:
            p.add_argument("--z", type=parse_complex, required=True, help="argument, e.g. 0.3-0.4i")
        p.add_argument("--a", type=parse_complex, action="append", default=None,
                       help="numerator parameter, repeatable (f, phi)")
        p.add_argument("--b", type=float, action="append", default=None,
                       help="denominator parameter in [0,1), repeatable (f, phi)")
        p.add_argument("--l", type=float, default=None, help="Gaussian weight exponent (f)")
        p.add_argument("--alpha", type=float, default=None, help="decay exponent (theta, laurent)")
        p.add_argument("--c-weighted", type=float, default=None,
                       help="override the weighted-coefficient constant (laurent)")
        p.add_argument("--k-cap", type=int, default=10_000, help="Laurent index cap")
        p.add_argument("--tol", type=float, default=1e-14)

    p_eval = sub.add_parser("eval", help="evaluate a function at one point")
    add_common(p_eval, with_z=True)
    p_eval.set_defaults(handler=_cmd_eval)

    p_env = sub.add_parser("envelope", help="closed-form envelope at one modulus")
    add_common(p_env, with_z=False)
    p_env.add_argument("--abs-z", type=float, required=True, help="modulus |z| > 0")
    p_env.add_argument("--variant", choices=("gaussian", "exponential", "certified", "as-printed"),
                       default=None,
                       help="aq: gaussian (default) or exponential; theta: certified (default) or as-printed")
    p_env.set_defaults(handler=_cmd_envelope)

    p_audit = sub.add_parser("audit", help="sweep a grid and certify domination")
    add_common(p_audit, with_z=False)
    p_audit.add_argument("--grid", type=parse_grid, required=True, help="log grid lo:hi:count")
    p_audit.add_argument("--angles", type=int, default=8)
    p_audit.add_argument("--draws", type=int, default=0,
                         help="random parameter draws instead of fixed parameters (f, phi)")
    p_audit.add_argument("--seed", type=int, default=0)
    p_audit.add_argument("--slack", type=float, default=1e-12)
    p_audit.add_argument("--out", default=None, help="output path (default: stdout)")
    p_audit.add_argument("--format", choices=("csv", "json"), default="csv")
    p_audit.set_defaults(handler=_cmd_audit)

    p_ident = sub.add_parser("identity", help="residual of a summation identity")
    p_ident.add_argument("--which", required=True,
                         choices=("euler", "qbinomial", "qlsum", "triple"))
    p_ident.add_argument("--q", type=float, required=True)
    p_ident.add_argument("--z", type=parse_complex, default=None)
    p_ident.add_argument("--a", type=parse_complex, default=None)
    p_ident.add_argument("--l", type=float, default=None)
    p_ident.add_argument("--tol", type=float, default=1e-14)
    p_ident.set_defaults(handler=_cmd_identity)

    return parser


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _need(args, attr: str, flag: str, context: str):
    value = getattr(args, attr)
    if value is None:
        raise InvalidArgumentError(f"{flag} is required for {context}")
    return value


def _confluent_from_args(args, qb: QBase) -> ConfluentParams:
    l = _need(args, "l", "--l", "--function f")
    return ConfluentParams(a_list=tuple(args.a or ()), b_list=tuple(args.b or ()), l=l, q=qb)


def _phi_from_args(args, qb: QBase) -> PhiParams:
    return PhiParams(a_list=tuple(args.a or ()), b_list=tuple(args.b or ()), q=qb)


def _laurent_from_args(args, qb: QBase) -> LaurentSpec:
    alpha = _need(args, "alpha", "--alpha", "--function laurent")
    c = args.c_weighted
    if c is None:
        c = bounds.theta_weighted_constant(alpha, qb, 1e-15)
    return LaurentSpec(
        center=0.0 + 0.0j,
        coeff=_theta_stream(qb),
        alpha=alpha,
        q=qb,
        c_weighted=c,
        k_cap=args.k_cap,
    )


def _cmd_eval(args) -> int:
    qb = QBase(args.q)
    fn = args.function
    if fn == "f":
        result = eval_confluent_f(_confluent_from_args(args, qb), args.z, args.tol)
    elif fn == "phi":
        result = eval_phi(_phi_from_args(args, qb), args.z, args.tol)
    elif fn == "aq":
        result = eval_ramanujan_aq(qb, args.z, args.tol)
    elif fn == "theta":
        result = eval_theta(qb, args.z, args.tol)
    else:
        result = eval_laurent(_laurent_from_args(args, qb), args.z, args.tol)
    print(f"value = {format_complex(result.value)}")
    print(f"terms_used = {result.terms_used}")
    print(f"tail_bound = {result.tail_bound!r}")
    print(f"converged = {'true' if result.converged else 'false'}")
    return 0


def _cmd_envelope(args) -> int:
    qb = QBase(args.q)
    fn = args.function
    abs_z = args.abs_z
    if fn == "f":
        env = bounds.envelope_entire(_confluent_from_args(args, qb), abs_z)
    elif fn == "phi":
        env = bounds.envelope_phi(_phi_from_args(args, qb), abs_z)
    elif fn == "aq":
        if args.variant == "exponential":
            env = bounds.envelope_aq_exponential(qb, abs_z)
        else:
            env = bounds.envelope_aq_gaussian(qb, abs_z)
    elif fn == "theta":
        alpha = _need(args, "alpha", "--alpha", "--function theta")
        if args.variant == "as-printed":
            env = bounds.envelope_theta_as_printed(alpha, qb, abs_z)
        else:
            env = bounds.envelope_theta(alpha, qb, abs_z)
    else:
        spec = _laurent_from_args(args, qb)
        params = bounds.meromorphic_bound_params(spec.alpha, qb)
        env = bounds.envelope_meromorphic(params, spec.c_weighted, abs_z)
    print(f"bound = {env.bound!r}")
    print(f"log_bound = {env.log_bound!r}")
    print(f"constant_c = {env.constant_c!r}")
    print(f"prefactor_log = {env.prefactor_log!r}")
    print(f"exponent_term = {env.exponent_term!r}")
    return 0


def _csv_cell_l(l: float | None) -> str:
    return "" if l is None else repr(l)


def _write_csv(records, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(
            (
                r.function_tag,
                repr(r.q),
                _csv_cell_l(r.l),
                r.param_digest,
                repr(r.z.real),
                repr(r.z.imag),
                repr(r.abs_value),
                repr(r.envelope_log),
                repr(r.ratio),
                "true" if r.passed else "false",
                str(r.terms_used),
                repr(r.tail_bound),
            )
        )


def _write_json(records, stream) -> None:
    payload = [
        {
            "function": r.function_tag,
            "q": r.q,
            "l": r.l,
            "param_digest": r.param_digest,
            "re_z": r.z.real,
            "im_z": r.z.imag,
            "abs_value": r.abs_value,
            "envelope_log": r.envelope_log,
            "ratio": r.ratio,
            "pass": r.passed,
            "terms_used": r.terms_used,
            "tail_bound": r.tail_bound,
        }
        for r in records
    ]
    json.dump(payload, stream, indent=2)
    stream.write("\n")


def _cmd_audit(args) -> int:
    qb = QBase(args.q)
    fn = args.function
    plan = SweepPlan(
        abs_z_grid=args.grid,
        angle_count=args.angles,
        parameter_draws=args.draws,
        seed=args.seed,
        slack=args.slack,
        tol=args.tol,
    )
    if args.draws > 0:
        if fn not in ("f", "phi"):
            return _usage_error("--draws requires --function f or phi")
        tag = "confluent_f" if fn == "f" else "phi"
        records = audit_envelope(plan, tag)
    elif fn == "f":
        records = audit_envelope(plan, "confluent_f", _confluent_from_args(args, qb))
    elif fn == "phi":
        records = audit_envelope(plan, "phi", _phi_from_args(args, qb))
    elif fn == "aq":
        records = audit_envelope(plan, "aq", qb)
    elif fn == "theta":
        alpha = _need(args, "alpha", "--alpha", "--function theta")
        records = audit_envelope(plan, "theta", (qb, alpha))
    else:
        records = audit_envelope(plan, "laurent", _laurent_from_args(args, qb))

    if args.out is not None:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            if args.format == "csv":
                _write_csv(records, handle)
            else:
                _write_json(records, handle)
    elif args.format == "csv":
        _write_csv(records, sys.stdout)
    else:
        _write_json(records, sys.stdout)

    summary = audit_summary(records)
    print(
        "records={records} passed={passed} failed={failed} errors={errors}".format(**summary),
        file=sys.stderr,
    )
    return 1 if summary["failed"] > 0 else 0


def _cmd_identity(args) -> int:
    qb = QBase(args.q)
    which = args.which
    if which == "euler":
        z = _need(args, "z", "--z", "--which euler")
        residual = identity_euler(qb, z, args.tol)
    elif which == "qbinomial":
        z = _need(args, "z", "--z", "--which qbinomial")
        a = _need(args, "a", "--a", "--which qbinomial")
        residual = identity_qbinomial_theorem(a, qb, z, args.tol)
    elif which == "qlsum":
        l = _need(args, "l", "--l", "--which qlsum")
        residual = identity_ql_sum(l, qb, args.tol)
    else:
        z = _need(args, "z", "--z", "--which triple")
        residual = identity_theta_triple_product(qb, z, args.tol)
    print(f"residual = {residual!r}")
    return 0


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    threads = os.environ.get("QINEQ_THREADS")
    if threads is not None:
        try:
            if int(threads) < 1:
                raise ValueError
        except ValueError:
            return _usage_error(f"QINEQ_THREADS must be a positive integer, got {threads!r}")
    try:
        return args.handler(args)
    except QSeriesError as exc:
        return _usage_error(str(exc))


def main() -> None:
    sys.exit(run())
