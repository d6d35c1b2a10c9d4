"""Command-line front end: inversion runs, coefficient export, verification.

Reports are deterministic: numbers are serialized as decimal strings at
the working precision, fields keep a fixed order, and no timestamps or
environment data are embedded, so identical configurations produce
byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import sys

from .coeffs import coeffs_to_csv, coeffs_to_json
from .errors import DomainError
from .inverter import TransformFn, invert_ladder
from .lambertw import lambert_w0, wew_residual
from .numerics import PrecisionContext, context_for_order, guard_for_order, required_digits
from .pairs import corpus_manifest_json, get_pair, jordan_target
from .verify import run_suites

BUILTIN_TRANSFORMS = {
    "1/z": lambda z: 1 / z,
    "1/z^2": lambda z: 1 / z**2,
    "1/(z+1)": lambda z: 1 / (z + 1),
    "exp(-z)/z": lambda z: z.context.exp(-z) / z,
    "sqrt(pi/z)": lambda z: z.context.sqrt(z.context.pi / z),
    "1/(1+z^2)": lambda z: 1 / (1 + z**2),
}


def _write(text: str, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _resolve_ctx(digits: str, n_max: int) -> PrecisionContext:
    if digits == "auto":
        return context_for_order(n_max)
    d = int(digits)
    need = required_digits(n_max)
    if d < need:
        print(
            f"warning: digits={d} below required_digits({n_max})={need}; "
            "cancellation will dominate",
            file=sys.stderr,
        )
    return PrecisionContext(max(d, 15), guard_for_order(n_max))


def _cmd_coeffs(args) -> int:
    if args.output == "csv":
        _write(coeffs_to_csv(args.n, args.set), args.out)
    else:
        _write(coeffs_to_json(args.n, args.set) + "\n", args.out)
    return 0


def _cmd_invert(args) -> int:
    n_max = args.n_max or args.n
    if n_max is None:
        print("error: one of --n / --n-max is required", file=sys.stderr)
        return 2
    ctx = _resolve_ctx(args.digits, n_max)
    flags = ()
    if args.pair:
        pair = get_pair(args.pair)
        F = pair.F
        ref = lambda x: jordan_target(pair, x, ctx)
        if pair.oscillatory_flag:
            flags = ("oscillatory",)
            print(f"note: pair {pair.name!r} is oscillatory; convergence "
                  "theory does not cover it", file=sys.stderr)
    elif args.transform:
        if args.transform not in BUILTIN_TRANSFORMS:
            print(
                f"error: unknown transform {args.transform!r}; "
                f"built-ins: {sorted(BUILTIN_TRANSFORMS)}",
                file=sys.stderr,
            )
            return 2
        F = TransformFn(BUILTIN_TRANSFORMS[args.transform], args.transform)
        ref = None
    else:
        print("error: --pair or --transform is required", file=sys.stderr)
        return 2

    xs = [ctx.mpf(part) for part in args.x.split(",")]
    if any(not x > 0 for x in xs):
        print("error: x values must be positive", file=sys.stderr)
        return 2
    reports = [invert_ladder(F, x, n_max, ref=ref, ctx=ctx, flags=flags) for x in xs]
    if args.n is not None and not args.n_max:
        from .inverter import InversionReport

        reports = [
            InversionReport(r.x, r.entries[-1:], r.digits_used, r.flags) for r in reports
        ]

    if args.output == "csv":
        chunks = [r.to_csv(ctx) for r in reports]
        _write("".join(chunks), args.out)
    elif args.output == "json":
        doc = {"reports": [r.to_json_dict(ctx) for r in reports]}
        _write(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        lines = []
        for r in reports:
            lines.append(f"x = {ctx.nstr(r.x)} (digits={r.digits_used})")
            for e in r.entries:
                err = "" if e.abs_error is None else f"  |err| = {ctx.nstr(e.abs_error, 6)}"
                lines.append(f"  n={e.n:3d}  {ctx.nstr(e.value)}{err}")
        _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_corpus(args) -> int:
    _write(corpus_manifest_json() + "\n", args.out)
    return 0


def _cmd_verify(args) -> int:
    names = args.suite
    reports, ok = run_suites(names if names else "all")
    doc = {"checks": reports, "all_passed": ok}
    _write(json.dumps(doc, indent=2) + "\n", args.out)
    return 0 if ok else 1


def _cmd_weval(args) -> int:
    ctx = PrecisionContext(max(int(args.digits), 15))
    parts = args.z.split(",")
    z = ctx.mpc(parts[0], parts[1] if len(parts) > 1 else 0)
    if z.imag == 0:
        z = ctx.mpf(parts[0])
    w = lambert_w0(z, ctx)
    doc = {
        "z": ctx.nstr(z),
        "w": ctx.nstr(w),
        "residual": ctx.nstr(wew_residual(w, z, ctx), 6),
    }
    _write(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gsinv",
        description="High-precision Gaver-Stehfest inversion of Laplace transforms",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="export exact coefficients a_k(n), c_k(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", choices=["a", "c", "both"], default="both")
    p.add_argument("--output", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_coeffs)

    for name, need_nmax in (("invert", False), ("ladder", True)):
        p = sub.add_parser(name, help="evaluate approximants at given points")
        p.add_argument("--pair", default=None, help="corpus pair name")
        p.add_argument("--transform", default=None, help="built-in transform expression")
        p.add_argument("--x", required=True, help="comma-separated positive decimals")
        p.add_argument("--n", type=int, default=None, help="single order to report")
        p.add_argument("--n-max", dest="n_max", type=int, default=None,
                       required=need_nmax, help="report the full ladder n=1..n_max")
        p.add_argument("--digits", default="auto",
                       help="'auto' (required_digits rule) or an integer")
        p.add_argument("--output", choices=["json", "csv", "text"], default="text")
        p.add_argument("--out", default=None)
        p.set_defaults(func=_cmd_invert)

    p = sub.add_parser("corpus", help="emit the transform-pair manifest")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_corpus)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", action="append", default=None,
                   help="suite name (repeatable) or 'all'")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("weval", help="evaluate the principal Lambert W branch")
    p.add_argument("--z", required=True, help="'re' or 're,im'")
    p.add_argument("--digits", default="30")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_weval)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (DomainError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
