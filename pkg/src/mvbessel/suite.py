"""Verification battery behind ``mvbessel suite`` and ``mvbessel verify``."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .bessel import (
    StructuralError,
    bessel_at_zero,
    bessel_at_zero_unshifted,
    bessel_polynomial,
    db_in_jack_basis,
    pole_certificate,
)
from .field import ParameterDegeneracyError, to_fraction
from .jack import (
    integral_form_integrality,
    jack_norm_closed,
    jack_polynomial,
    reciprocal_complement_check,
    torus_pairing_integer_kappa,
)
from .ortho import (
    VerificationReport,
    bridge_factor,
    f2_closed,
    f2_laguerre_chain,
    integral_equality_check,
    moment_consistency,
    norm_constant,
    pairing_rationality,
    shift_identity_check,
    torus_moment,
    verify_theorem,
)
from .partitions import Partition, dominance_leq, enumerate_partitions
from .sympoly import operator_images

__all__ = ["SuiteConfig", "ConfigError", "run_suite", "CHECKS", "run_check"]


class ConfigError(ValueError):
    """Malformed suite configuration."""


def _parse_param(v, name):
    if v is None or v == "symbolic":
        return None
    try:
        return to_fraction(v if not isinstance(v, float) else repr(v))
    except (TypeError, ValueError, ZeroDivisionError):
        raise ConfigError(f"{name} must be 'symbolic' or a rational p/q, got {v!r}")


@dataclass
class SuiteConfig:
    n_range: list = field(default_factory=lambda: [1, 2])
    max_weight: int = 4
    kappa: Fraction | None = None  # None: symbolic
    a: Fraction | None = None  # None: symbolic
    numeric: bool = False
    seed: int = 0
    output: str | None = None
    checks: list | None = None  # None: every exact check

    @classmethod
    def from_dict(cls, d: dict) -> "SuiteConfig":
        if not isinstance(d, dict):
            raise ConfigError("config must be a JSON object")
        known = {"n_range", "max_weight", "kappa", "a", "numeric", "seed", "output", "checks"}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        cfg = cls()
        if "n_range" in d:
            nr = d["n_range"]
            if isinstance(nr, int):
                nr = [nr]
            if not (isinstance(nr, list) and nr and all(isinstance(x, int) and x >= 1 for x in nr)):
                raise ConfigError("n_range must be a positive integer or a list of them")
            cfg.n_range = sorted(set(nr))
        if "max_weight" in d:
            if not isinstance(d["max_weight"], int) or d["max_weight"] < 0:
                raise ConfigError("max_weight must be a nonnegative integer")
            cfg.max_weight = d["max_weight"]
        cfg.kappa = _parse_param(d.get("kappa"), "kappa")
        cfg.a = _parse_param(d.get("a"), "a")
        cfg.numeric = bool(d.get("numeric", False))
        seed = d.get("seed", 0)
        if not isinstance(seed, int) or not 0 <= seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        cfg.seed = seed
        cfg.output = d.get("output")
        if "checks" in d:
            bad = [c for c in d["checks"] if c not in CHECKS]
            if bad:
                raise ConfigError(f"unknown checks: {bad}")
            cfg.checks = list(d["checks"])
        return cfg

    def to_dict(self) -> dict:
        return {"n_range": self.n_range, "max_weight": self.max_weight,
                "kappa": "symbolic" if self.kappa is None else str(self.kappa),
                "a": "symbolic" if self.a is None else str(self.a),
                "numeric": self.numeric, "seed": self.seed}


def _rep(case, ok, lhs, rhs, t0, tag, **detail):
    return VerificationReport(case, "pass" if ok else "fail", str(lhs), str(rhs),
                              (time.perf_counter() - t0) * 1e3, tag, detail)


def _lab(p) -> str:
    return "[" + ",".join(map(str, p)) + "]"


# -- individual checks; each returns a list of reports ----------------------------

def check_theorem(n, w, cfg):
    """Orthogonality and the diagonal ratio law, optionally at specialised parameters."""
    return verify_theorem(n, w, a=cfg.a, k=cfg.kappa)


def check_moments(n, w, cfg):
    return [moment_consistency(nu, n) for nu in enumerate_partitions(w, n)]


def check_jack_norms(n, w, cfg):
    """Constant-term pairing of Jack polynomials at integer k against the closed norm."""
    if cfg.kappa is not None:
        if cfg.kappa.denominator != 1 or cfg.kappa < 1:
            return []
        kappas = [int(cfg.kappa)]
    else:
        kappas = [1, 2, 3]
    out = []
    parts = enumerate_partitions(w, n)
    for kap in kappas:
        for i, lam in enumerate(parts):
            P_lam = jack_polynomial(lam, n, kap)
            for mu in parts[i:]:
                t0 = time.perf_counter()
                val = torus_pairing_integer_kappa(P_lam, jack_polynomial(mu, n, kap), kap)
                if lam == mu:
                    ref = jack_norm_closed(lam, n).subs(k=kap).as_rational().to_fraction()
                else:
                    ref = Fraction(0)
                out.append(_rep(f"jack-norms/n={n}/k={kap}/{_lab(lam)}x{_lab(mu)}", val == ref, val, ref,
                                t0, "jack-torus-norm"))
    return out


def check_zero(n, w, cfg):
    """Constant coefficient of Y_lam against the closed value at x = 0."""
    out = []
    for lam in enumerate_partitions(w, n):
        t0 = time.perf_counter()
        ct = bessel_polynomial(lam, n).constant_term()
        closed = bessel_at_zero(lam, n).as_rational()
        printed = bessel_at_zero_unshifted(lam, n).as_rational()
        out.append(_rep(f"zero/n={n}/{_lab(lam)}", ct == closed, ct, closed, t0, "zero-specialisation",
                        unshifted_form_agrees=ct == printed))
    return out


def check_rationality(n, w, cfg):
    """Pole certificates for every Y_lam and for every pairing / G0."""
    out = []
    parts = enumerate_partitions(w, n)
    for lam in parts:
        t0 = time.perf_counter()
        cert = pole_certificate(bessel_polynomial(lam, n))
        out.append(_rep(f"rationality/n={n}/{_lab(lam)}", cert.passed, cert.leftover, 1, t0,
                        "rationality", factors=cert.to_json()["factors"]))
    for i, lam in enumerate(parts):
        for mu in parts[i:]:
            t0 = time.perf_counter()
            cert = pairing_rationality(lam, mu, n)
            out.append(_rep(f"pairing-rationality/n={n}/{_lab(lam)}x{_lab(mu)}", cert.passed, cert.leftover, 1,
                            t0, "pairing-rationality"))
    return out


def check_integral_equality(n, w, cfg):
    """Bridge identity; passes when lhs/rhs equals K(n), which is 1 only for n = 1.

    The literal outcome is kept in the detail field.
    """
    K = norm_constant(n)
    out = []
    for nu in enumerate_partitions(w, n):
        t0 = time.perf_counter()
        r = integral_equality_check(nu, n)
        ratio = torus_moment(nu, n) / (bridge_factor(n) * f2_closed(nu, n))
        out.append(_rep(r.case, ratio == K, r.lhs, r.rhs, t0, "integral-equality",
                        literal=r.status, ratio=str(ratio), expected_ratio=str(K)))
        out.append(f2_laguerre_chain(nu, n))
    return out


def check_integrality(n, w, cfg):
    out = []
    for lam in enumerate_partitions(w, n):
        t0 = time.perf_counter()
        ok, coeffs = integral_form_integrality(lam, n)
        shown = {_lab(mu): [str(x) for x in cs] if cs is not None else None for mu, cs in coeffs.items()}
        out.append(_rep(f"integrality/n={n}/{_lab(lam)}", ok, shown, "N[1/k]", t0, "jack-integral-form"))
    return out


def check_structure(n, w, cfg):
    """Triangularity of D, stability of D^B on sub-diagrams, complements, the column shift."""
    out = []
    for lam in enumerate_partitions(w, n):
        t0 = time.perf_counter()
        imgs = operator_images(lam, n)
        tri = all(dominance_leq(nu, lam) for key in ("euler2", "sutherland") for nu in imgs[key])
        out.append(_rep(f"structure/triangular/n={n}/{_lab(lam)}", tri, tri, True, t0, "jack-operator"))
        t0 = time.perf_counter()
        try:
            db_in_jack_basis(lam, n)
            ok = True
        except StructuralError:
            ok = False
        out.append(_rep(f"structure/containment/n={n}/{_lab(lam)}", ok, ok, True, t0, "bessel-operator"))
        t0 = time.perf_counter()
        N = lam[0] if lam else 0
        ok = all(reciprocal_complement_check(lam, NN, n) for NN in (N, N + 1))
        out.append(_rep(f"structure/complement/n={n}/{_lab(lam)}", ok, ok, True, t0, "reciprocal-complement"))
        t0 = time.perf_counter()
        ok = shift_identity_check(lam, n)
        out.append(_rep(f"structure/shift/n={n}/{_lab(lam)}", ok, ok, True, t0, "column-shift"))
    return out


def check_numeric(cfg):
    from .numeric import (
        QuadratureConfig,
        WeightSeriesEvaluator,
        contour_orthogonality_numeric,
        integral_equality_numeric,
        kadell_numeric,
        l2_orthogonality_numeric,
        laguerre_limit,
        laguerre_numeric,
    )
    q = QuadratureConfig(seed=cfg.seed)
    out = []
    ev = WeightSeriesEvaluator(1, 3, 1)
    for m in range(6):
        for mp in range(m, 6):
            out.append(contour_orthogonality_numeric(Partition([m] if m else []), Partition([mp] if mp else []),
                                                     1, 3, 1, QuadratureConfig(tolerance=1e-8 if m == mp else 1e-10), ev))
    out.append(kadell_numeric((2,), 1, 1.5, 2.5, 1, q))
    out.append(kadell_numeric((1,), 2, 2, 3, 1, q))
    out.append(kadell_numeric((1,), 2, 2, 3, 1, q, mode="mc"))
    out.append(laguerre_numeric((2,), 1, 2, 1, q))
    out.append(laguerre_numeric((1,), 2, 2, 1, q))
    out.append(laguerre_limit((2,), 1, 2, 1))
    out.append(laguerre_limit((1,), 2, 2, 1))
    parts = enumerate_partitions(2, 2)
    for i, lam in enumerate(parts):
        for mu in parts[i + 1:]:
            out.append(l2_orthogonality_numeric(lam, mu, 2, -10, 1, QuadratureConfig(tolerance=1e-6)))
    out.append(integral_equality_numeric((1,), 1, -10.5, 1))
    out.append(integral_equality_numeric((1,), 2, -10.5, 1))
    return out


CHECKS = {
    "orthogonality": check_theorem,
    "moments": check_moments,
    "jack-norms": check_jack_norms,
    "zero": check_zero,
    "rationality": check_rationality,
    "integral-equality": check_integral_equality,
    "integrality": check_integrality,
    "structure": check_structure,
}


def run_check(name: str, n: int, w: int, cfg: SuiteConfig | None = None) -> list[VerificationReport]:
    cfg = cfg or SuiteConfig()
    try:
        return CHECKS[name](n, w, cfg)
    except ParameterDegeneracyError as exc:
        return [VerificationReport(f"{name}/n={n}", "fail", "degenerate parameters", str(exc), 0.0, name)]


def run_suite(cfg: SuiteConfig, timings: bool = False) -> tuple[int, dict]:
    """Run every selected check; exit code 0 iff all reports pass."""
    reports = []
    for name in cfg.checks or list(CHECKS):
        for n in cfg.n_range:
            reports += run_check(name, n, cfg.max_weight, cfg)
    if cfg.numeric:
        reports += check_numeric(cfg)
    failed = sum(not r.passed for r in reports)
    doc = {"config": cfg.to_dict(), "summary": {"cases": len(reports), "failed": failed},
           "reports": [r.to_json(timings) for r in reports]}
    return (0 if failed == 0 else 1), doc
