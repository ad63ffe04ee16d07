"""Command-line interface: ``mvbessel <command> ...``.

Exit codes: 0 when every reported case passes, 1 when any fails, 2 for
malformed input or parameters outside a method's domain.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import cache
from .field import ParameterDegeneracyError, to_fraction
from .partitions import Partition

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def _rational(s: str) -> Fraction:
    try:
        return to_fraction(s)
    except (ValueError, ZeroDivisionError, TypeError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}")


def _param(s: str):
    return None if s == "symbolic" else _rational(s)


def _partition(s: str) -> Partition:
    s = s.strip().strip("[]()")
    try:
        return Partition(int(x) for x in s.split(",") if x.strip()) if s else Partition()
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _seed(s: str) -> int:
    try:
        v = int(s, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be a decimal integer: {s!r}")
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _complex_vector(s: str) -> list[complex]:
    try:
        return [complex(x.strip().replace("i", "j")) for x in s.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex vector: {s!r}")


def _jsonable(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _emit(doc, args, csv_rows=None):
    if csv_rows is not None and getattr(args, "csv", False):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["case", "status", "tag", "lhs", "rhs"])
        for r in csv_rows:
            w.writerow([r.case, r.status, r.tag, r.lhs, r.rhs])
        text = buf.getvalue()
    else:
        text = json.dumps(_jsonable(doc), indent=2) + "\n"
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_doc(reports, timings):
    failed = sum(not r.passed for r in reports)
    return {"summary": {"cases": len(reports), "failed": failed},
            "reports": [r.to_json(timings) for r in reports]}, (EXIT_OK if failed == 0 else EXIT_FAIL)


# -- commands ----------------------------------------------------------------------

def cmd_poly(args):
    from .bessel import bessel_polynomial, constant_term_consistency, pole_certificate
    from .jack import jack_polynomial

    lam, n = args.lam, args.n
    if len(lam) > n:
        raise UsageError(f"{list(lam)} has more than n={n} parts")
    if args.kind == "jack":
        P = jack_polynomial(lam, n, args.kappa)
        doc = {"lambda": list(lam), "n": n, "kappa": "symbolic" if args.kappa is None else str(args.kappa),
               **P.to_json()}
        _emit(doc, args)
        return EXIT_OK
    Y = bessel_polynomial(lam, n)
    ok, _, _ = constant_term_consistency(lam, n)
    cert = pole_certificate(Y)
    mono = Y.monomial_form
    if args.a is not None or args.kappa is not None:
        mono = mono.subs(a=args.a, k=args.kappa)
    doc = {**Y.to_json(), "monomial": mono.to_json()["terms"], "constant_term_ok": ok,
           "pole_certificate": cert.to_json()}
    if args.a is not None or args.kappa is not None:
        doc["specialised"] = {"a": str(args.a) if args.a is not None else "symbolic",
                              "kappa": str(args.kappa) if args.kappa is not None else "symbolic"}
    _emit(doc, args)
    return EXIT_OK if ok and cert.passed else EXIT_FAIL


_VERIFY = {
    "orthogonality": ("orthogonality", "orthogonality-relation"),
    "norms": ("orthogonality", "norm-factor-formula"),
    "moments": ("moments", None),
    "jack-norms": ("jack-norms", None),
    "rationality": ("rationality", None),
    "zero": ("zero", None),
    "integral-equality": ("integral-equality", None),
    "integrality": ("integrality", None),
    "structure": ("structure", None),
}


def cmd_verify(args):
    from .suite import SuiteConfig, run_check

    check, tag = _VERIFY[args.what]
    cfg = SuiteConfig(n_range=[args.n], max_weight=args.max_weight, kappa=args.kappa, a=args.a)
    reports = run_check(check, args.n, args.max_weight, cfg)
    if tag:
        reports = [r for r in reports if r.tag == tag]
    doc, code = _report_doc(reports, args.timings)
    _emit(doc, args, reports)
    return code


def cmd_numeric(args):
    from . import numeric as nm
    from .partitions import enumerate_partitions

    cfg = nm.QuadratureConfig(seed=args.seed, tolerance=args.tolerance or 1e-10,
                              mc_samples=args.samples)
    reps = []
    if args.what == "krall-frink":
        ev = nm.WeightSeriesEvaluator(1, args.a, 1)
        for m in range(args.max_degree + 1):
            for mp in range(m, args.max_degree + 1):
                tol = args.tolerance or (1e-8 if m == mp else 1e-10)
                reps.append(nm.contour_orthogonality_numeric(
                    Partition([m] if m else []), Partition([mp] if mp else []), 1, args.a, 1,
                    nm.QuadratureConfig(tolerance=tol), ev))
    elif args.what == "contour":
        ev = nm.WeightSeriesEvaluator(args.n, args.a, args.kappa)
        parts = enumerate_partitions(args.max_weight, args.n)
        for i, lam in enumerate(parts):
            for mu in parts[i:]:
                reps.append(nm.contour_orthogonality_numeric(lam, mu, args.n, args.a, args.kappa,
                                                             nm.QuadratureConfig(tolerance=args.tolerance or 1e-8), ev))
    elif args.what == "kadell":
        reps.append(nm.kadell_numeric(args.nu, args.n, float(args.alpha), float(args.beta), args.kappa, cfg,
                                      mode=args.mode))
    elif args.what == "laguerre":
        reps.append(nm.laguerre_numeric(args.nu, args.n, float(args.alpha), args.kappa, cfg))
        reps.append(nm.laguerre_limit(args.nu, args.n, float(args.alpha), args.kappa))
    elif args.what == "l2":
        parts = enumerate_partitions(args.max_weight, args.n)
        cfg2 = nm.QuadratureConfig(seed=args.seed, tolerance=args.tolerance or 1e-6, mc_samples=args.samples)
        for i, lam in enumerate(parts):
            for mu in parts[i + 1:]:
                reps.append(nm.l2_orthogonality_numeric(lam, mu, args.n, args.a, args.kappa, cfg2, mode=args.mode))
    doc, code = _report_doc(reps, args.timings)
    _emit(doc, args)
    return code


def cmd_weight(args):
    from . import numeric as nm

    if len(args.x) != args.n:
        raise UsageError(f"--x has {len(args.x)} entries, expected n={args.n}")
    cfg = nm.QuadratureConfig(truncation_weight=args.truncate, tolerance=args.tolerance or 1e-12,
                              max_truncation=args.max_truncation)
    value, tail, used = nm.eval_weight_series(args.x, args.n, args.a, args.kappa, cfg,
                                              adaptive=args.truncate is None)
    doc = {"n": args.n, "a": str(args.a), "kappa": str(args.kappa), "x": args.x,
           "value": value, "tail_estimate": tail, "truncation_weight": used}
    _emit(doc, args)
    return EXIT_OK


def cmd_suite(args):
    from .suite import ConfigError, SuiteConfig, run_suite

    try:
        with open(args.config, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config: {exc}")
    try:
        cfg = SuiteConfig.from_dict(raw)
    except ConfigError as exc:
        raise UsageError(str(exc))
    if args.seed is not None:
        cfg.seed = args.seed
    code, doc = run_suite(cfg, timings=args.timings)
    args.output = args.output or cfg.output
    _emit(doc, args)
    return code


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mvbessel", description="Exact and numeric checks of "
                                "multivariable Bessel polynomial orthogonality.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, timings=True):
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")
        if timings:
            sp.add_argument("--timings", action="store_true", help="include per-case milliseconds")

    sp = sub.add_parser("poly", help="compute a Jack or Bessel polynomial")
    sp.add_argument("kind", choices=["jack", "bessel"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", type=_partition, required=True, help="partition, e.g. 2,1")
    sp.add_argument("--kappa", type=_param, default=None, help="p/q or 'symbolic'")
    sp.add_argument("--a", type=_param, default=None, help="p/q or 'symbolic' (bessel only)")
    common(sp, timings=False)
    sp.set_defaults(func=cmd_poly)

    sp = sub.add_parser("verify", help="exact verification battery")
    sp.add_argument("what", choices=list(_VERIFY))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--max-weight", type=int, required=True)
    sp.add_argument("--kappa", type=_param, default=None)
    sp.add_argument("--a", type=_param, default=None)
    sp.add_argument("--csv", action="store_true", help="CSV table instead of JSON")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("numeric", help="floating-point validations")
    sp.add_argument("what", choices=["krall-frink", "contour", "kadell", "laguerre", "l2"])
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--a", type=float, default=3.0)
    sp.add_argument("--kappa", type=_rational, default=Fraction(1))
    sp.add_argument("--alpha", type=_rational, default=Fraction(2))
    sp.add_argument("--beta", type=_rational, default=Fraction(3))
    sp.add_argument("--nu", type=_partition, default=Partition())
    sp.add_argument("--max-degree", type=int, default=5)
    sp.add_argument("--max-weight", type=int, default=2)
    sp.add_argument("--mode", choices=["quad", "mc"], default="quad")
    sp.add_argument("--samples", type=int, default=200_000)
    sp.add_argument("--tolerance", type=float, default=None)
    sp.add_argument("--seed", type=_seed, default=0)
    common(sp)
    sp.set_defaults(func=cmd_numeric)

    sp = sub.add_parser("weight", help="weight series evaluation")
    sp.add_argument("action", choices=["eval"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--kappa", type=_rational, default=Fraction(1))
    sp.add_argument("--x", type=_complex_vector, required=True, help="comma-separated, e.g. 1,1j")
    sp.add_argument("--truncate", type=int, default=None, help="fixed truncation weight (default: adaptive)")
    sp.add_argument("--max-truncation", type=int, default=120)
    sp.add_argument("--tolerance", type=float, default=None)
    common(sp, timings=False)
    sp.set_defaults(func=cmd_weight)

    sp = sub.add_parser("suite", help="run the configured battery, one JSON document")
    sp.add_argument("--config", required=True, help="JSON config file")
    sp.add_argument("--seed", type=_seed, default=None, help="overrides the config seed")
    common(sp)
    sp.set_defaults(func=cmd_suite)
    return p


def main(argv=None) -> int:
    from .numeric import InconclusiveError, NonConvergenceError, PreconditionError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cache.load()
    try:
        code = args.func(args)
    except (UsageError, PreconditionError, ParameterDegeneracyError) as exc:
        print(f"mvbessel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InconclusiveError, NonConvergenceError) as exc:
        print(f"mvbessel: inconclusive: {exc}", file=sys.stderr)
        return EXIT_FAIL
    cache.save()
    return code


if __name__ == "__main__":
    sys.exit(main())
