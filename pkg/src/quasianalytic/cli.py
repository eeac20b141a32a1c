"""Command-line front end: JSON in, JSON/CSV artifacts out.

Exit codes: 0 on success, 2 when classification is inconclusive (so shell
pipelines can branch on undecidability), 1 on any input or domain error.
On error the taxonomy name of the failure is printed to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import sequences as seq
from . import bang_space, gontcharoff, quasianalysis, smooth_functions
from .errors import QuasiAnalyticError, SchemaError, DomainError

DEFAULTS = {
    "horizon": 10_000,
    "grid": 1_000,
    "J": 40,
    "eps_div": 1e-3,
    "eps_conv": 1e-9,
    "order_cap": 40,
}


def _load_json(args) -> dict:
    if getattr(args, "json", None):
        text = args.json
    elif getattr(args, "input", None):
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        raise SchemaError("provide --json or --input")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from exc
    return obj


def _weight_sequence(obj) -> seq.WeightSequence:
    if not isinstance(obj, dict) or "M" not in obj:
        raise SchemaError('expected {"M": [...], "label": ...}')
    return seq.WeightSequence.from_values(obj["M"], obj.get("label"))


def _oracle(obj) -> smooth_functions.DerivativeOracle:
    if not isinstance(obj, dict) or "name" not in obj:
        raise SchemaError('expected {"name": ..., "params": {...}, "interval": [a, b]}')
    return smooth_functions.make_oracle(
        obj["name"], obj.get("params"), obj.get("interval", (0.0, 1.0))
    )


def _write_json(payload: dict, path: str | None) -> None:
    payload = {"defaults": DEFAULTS, **payload}
    text = json.dumps(payload, indent=2) + "\n"
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def emit_trace(rows, header: str, path: str | None) -> None:
    """CSV artifact: declared header, LF endings, decimal-dot floats."""
    if not rows:
        raise DomainError("refusing to emit an empty trace")
    lines = [header]
    for row in rows:
        lines.append(
            ",".join(
                repr(v) if isinstance(v, float) else str(v) for v in row
            )
        )
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_regularize(args) -> int:
    M = _weight_sequence(_load_json(args))
    R = seq.convex_regularize(M)
    _write_json(
        {"Mc": R.regularized, "principal": list(R.principal)}, args.output
    )
    return 0


def _cmd_classify(args) -> int:
    if args.seq:
        M = seq.canonical_sequence(args.seq, args.n)
    else:
        M = _weight_sequence(_load_json(args))
    policy = seq.ClassifierPolicy(
        horizon=args.horizon, eps_div=args.eps_div, eps_conv=args.eps_conv
    )
    result = seq.classify(M, policy)
    payload = {
        "verdict": result.verdict.value,
        "trivial_liminf_flag": result.trivial_liminf_flag,
        "window_increments": list(result.window_increments),
        "tail_estimate": result.tail_estimate,
        "policy": {
            "horizon": policy.horizon,
            "eps_div": policy.eps_div,
            "eps_conv": policy.eps_conv,
        },
    }
    _write_json(payload, args.output)
    if args.trace:
        t = result.traces
        rows = [
            (m + 1, t.s1[m], t.s2[m], t.s3[m]) for m in range(len(t))
        ]
        emit_trace(rows, "m,S1,S2,S3", args.trace)
    return 2 if result.verdict is seq.Verdict.INCONCLUSIVE else 0


def _cmd_bang_norm(args) -> int:
    if args.oracle:
        f = _oracle(json.loads(args.oracle))
        M = seq.canonical_sequence(args.seq or "factorial", args.order_cap)
        R = seq.convex_regularize(M)
        a, b = f.interval
        rows = []
        for t in np.linspace(a, b, args.grid):
            cert = bang_space.bang_norm(
                bang_space.xf_vector(f, float(t), R, args.order_cap)
            )
            rows.append((float(t), cert.value, cert.achieving_index))
        emit_trace(rows, "t,norm,achieving_index", args.trace or args.output)
        return 0
    obj = _load_json(args)
    if "entries" not in obj:
        raise SchemaError('expected {"entries": [...], "P": [...]}')
    X = bang_space.BangVector.of(obj["entries"], obj.get("P"))
    cert = bang_space.bang_norm(X)
    _write_json(
        {
            "value": cert.value,
            "achieving_index": cert.achieving_index,
            "truncated": cert.truncated,
        },
        args.output,
    )
    return 0


def _cmd_gontcharoff(args) -> int:
    nodes = gontcharoff.NodeList.of(
        [float(v) for v in args.nodes.split(",")] if args.nodes else
        _load_json(args)["nodes"]
    )
    Q = gontcharoff.gontcharoff_poly(nodes)
    payload = {
        "degree": Q.degree,
        "coefficients_exact": Q.coefficient_strings(),
        "coefficients_float": [float(c) for c in Q.coefficients],
        "nodes": [float(v) for v in nodes.nodes],
    }
    _write_json(payload, args.output)
    if args.check_boundary:
        rows = []
        for m in range(Q.degree):
            dm = Q.derivative_coefficients(m)
            node = nodes.nodes[m]
            acc = 0
            for c in reversed(dm):
                acc = acc * node + c
            rows.append((Q.degree, m, float(acc)))
        emit_trace(rows, "degree,order,residual", args.trace)
    return 0


def _cmd_expand(args) -> int:
    f = _oracle(json.loads(args.oracle))
    nodes = gontcharoff.NodeList.of(
        [float(v) for v in args.nodes.split(",")],
        interval=f.interval,
    )
    result = gontcharoff.generalized_taylor(f, nodes, args.m, args.x)
    _write_json(
        {
            "value": result.value,
            "terms": list(result.terms),
            "remainder": result.remainder,
            "bracket": list(result.bracket),
        },
        args.output,
    )
    return 0


def _cmd_profile(args) -> int:
    f = _oracle(json.loads(args.oracle))
    M = seq.canonical_sequence(args.seq, args.J)
    profile = quasianalysis.build_profile(
        f, M, range(args.max_order + 1), args.grid, args.J
    )
    rows = [
        (t, n, profile.samples[(n, t)])
        for n in profile.orders
        for t in profile.grid
    ]
    emit_trace(rows, "t,n,B", args.trace or args.output)
    return 0


def _cmd_certify(args) -> int:
    f = _oracle(json.loads(args.oracle))
    cert = quasianalysis.monotonicity_certificate(f, args.max_order, args.grid)
    violation = None
    if cert.violation is not None:
        violation = {"order": cert.violation[0], "t": cert.violation[1]}
    _write_json({"verdict": cert.verdict, "violation": violation}, args.output)
    return 0


def _cmd_carleman_check(args) -> int:
    obj = _load_json(args)
    if not isinstance(obj, list):
        raise SchemaError("expected a JSON array of positive terms")
    lhs, rhs, holds = seq.carleman_inequality_check(obj)
    _write_json({"lhs": lhs, "rhs": rhs, "holds": holds}, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasianalytic",
        description=(
            "Weight-sequence regularization, divergence classification, "
            "sequence-space norms and generalized Taylor expansion. "
            f"Defaults: horizon={DEFAULTS['horizon']}, grid={DEFAULTS['grid']}, "
            f"J={DEFAULTS['J']}, eps_div={DEFAULTS['eps_div']}, "
            f"eps_conv={DEFAULTS['eps_conv']}."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, with_json=True):
        if with_json:
            p.add_argument("--json", help="inline JSON input")
            p.add_argument("--input", help="path to JSON input")
        p.add_argument("--output", help="path for the JSON artifact (default stdout)")

    p = sub.add_parser("regularize", help="log-convex minorant of a weight sequence")
    add_io(p)
    p.set_defaults(func=_cmd_regularize)

    p = sub.add_parser("classify", help="quasi-analyticity verdict")
    add_io(p)
    p.add_argument("--seq", choices=seq.CANONICAL_NAMES, help="canonical sequence name")
    p.add_argument("--n", type=int, default=DEFAULTS["horizon"], help="prefix length")
    p.add_argument("--horizon", type=int, default=DEFAULTS["horizon"])
    p.add_argument("--eps-div", type=float, default=DEFAULTS["eps_div"], dest="eps_div")
    p.add_argument("--eps-conv", type=float, default=DEFAULTS["eps_conv"], dest="eps_conv")
    p.add_argument("--trace", help="path for the m,S1,S2,S3 CSV trace")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("bang-norm", help="sequence-space norm / trajectory")
    add_io(p)
    p.add_argument("--oracle", help="oracle JSON for trajectory mode")
    p.add_argument("--seq", choices=seq.CANONICAL_NAMES, help="weights for trajectory mode")
    p.add_argument("--order-cap", type=int, default=DEFAULTS["order_cap"], dest="order_cap")
    p.add_argument("--grid", type=int, default=DEFAULTS["grid"])
    p.add_argument("--trace", help="path for the t,norm,achieving_index CSV")
    p.set_defaults(func=_cmd_bang_norm)

    p = sub.add_parser("gontcharoff", help="interpolation polynomial coefficients")
    add_io(p)
    p.add_argument("--nodes", help="comma-separated node list")
    p.add_argument("--check-boundary", action="store_true", dest="check_boundary")
    p.add_argument("--trace", help="path for the boundary-residual CSV")
    p.set_defaults(func=_cmd_gontcharoff)

    p = sub.add_parser("expand", help="generalized Taylor expansion")
    add_io(p, with_json=False)
    p.add_argument("--oracle", required=True, help="oracle JSON")
    p.add_argument("--nodes", required=True, help="comma-separated node list")
    p.add_argument("--m", type=int, required=True, help="expansion order")
    p.add_argument("--x", type=float, required=True, help="evaluation point")
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("profile", help="majorant profile CSV")
    add_io(p, with_json=False)
    p.add_argument("--oracle", required=True, help="oracle JSON")
    p.add_argument("--seq", choices=seq.CANONICAL_NAMES, default="factorial")
    p.add_argument("--max-order", type=int, default=5, dest="max_order")
    p.add_argument("--grid", type=int, default=DEFAULTS["grid"])
    p.add_argument("--J", type=int, default=DEFAULTS["J"])
    p.add_argument("--trace", help="path for the t,n,B CSV")
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("certify", help="derivative-positivity certificate")
    add_io(p, with_json=False)
    p.add_argument("--oracle", required=True, help="oracle JSON")
    p.add_argument("--max-order", type=int, default=20, dest="max_order")
    p.add_argument("--grid", type=int, default=DEFAULTS["grid"])
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("carleman-check", help="geometric-mean inequality check")
    add_io(p)
    p.set_defaults(func=_cmd_carleman_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QuasiAnalyticError as exc:
        print(f"{exc.taxonomy}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io-error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
