"""Jack polynomials P_lam(x; k), basis changes, torus pairing and norms."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import factorial

from .field import ONE, ZERO, K, LinearForm, ParamRational, as_param, to_fraction
from .gammaprod import GammaProduct
from .partitions import Partition, complement_in_box, dominance_leq, partitions_of
from .sympoly import (
    SymmetricPolynomial,
    expand_to_exponents,
    operator_images,
    symmetrize,
    ExponentPolynomial,
)

__all__ = [
    "DegeneracyError",
    "JackExpansion",
    "jack_polynomial",
    "jack_eigenvalue",
    "to_jack_basis",
    "from_jack_basis",
    "jack_norm_closed",
    "torus_pairing_integer_kappa",
    "jack_integral_form",
    "jack_at_ones_closed",
    "hook_product",
    "reciprocal_complement_check",
    "inverse_kappa_coefficients",
    "integral_form_integrality",
]


class DegeneracyError(ArithmeticError):
    """Two eigenvalues that must differ coincide identically in Q(a, k)."""


@dataclass
class JackExpansion:
    """Coordinates in the Jack basis {P_mu}."""

    n: int
    coeffs: dict = field(default_factory=dict)
    kappa: Fraction | None = None

    def __post_init__(self):
        self.coeffs = {Partition(mu): as_param(c) for mu, c in self.coeffs.items()
                       if not as_param(c).is_zero()}

    def coefficient(self, mu) -> ParamRational:
        return self.coeffs.get(Partition(mu), ZERO)

    def to_json(self) -> dict:
        items = sorted(self.coeffs.items(), key=lambda kv: (-kv[0].weight, tuple(-x for x in kv[0])))
        return {"n": self.n, "basis": "jack",
                "terms": [{"mu": list(mu), "coeff": str(c)} for mu, c in items]}


def _kappa_value(kappa) -> ParamRational:
    return K if kappa is None else as_param(kappa)


def _norm_kappa(kappa):
    return None if kappa is None else to_fraction(kappa)


def _d_entry(imgs: dict, nu: Partition, k: ParamRational) -> ParamRational:
    return imgs["euler2"].get(nu, 0) + 2 * k * imgs["sutherland"].get(nu, 0)


def jack_eigenvalue(lam, n: int, kappa=None) -> ParamRational:
    """Diagonal entry of D on m_lam, i.e. the eigenvalue of P_lam."""
    lam = Partition(lam)
    return _d_entry(operator_images(lam, n), lam, _kappa_value(kappa))


_lock = threading.Lock()
_jack_cache: dict = {}


def jack_polynomial(lam, n: int, kappa=None) -> SymmetricPolynomial:
    """P_lam in n variables, monic in m_lam.

    ``kappa=None`` keeps k symbolic; a rational value specialises it before
    solving, which is much cheaper for large weights.
    """
    lam = Partition(lam)
    if len(lam) > n:
        raise ValueError(f"{lam} has more than n={n} parts")
    key = (lam, n, _norm_kappa(kappa))
    hit = _jack_cache.get(key)
    if hit is not None:
        return hit
    P = _solve_jack(lam, n, kappa)
    with _lock:
        _jack_cache.setdefault(key, P)
    return _jack_cache[key]


def _solve_jack(lam: Partition, n: int, kappa) -> SymmetricPolynomial:
    k = _kappa_value(kappa)
    # lex-descending order is a linear extension of dominance
    basis = [mu for mu in partitions_of(lam.weight, n) if dominance_leq(mu, lam)]
    eps = jack_eigenvalue(lam, n, kappa)
    u = {lam: ONE}
    images = {mu: operator_images(mu, n) for mu in basis}
    for nu in basis[1:]:
        rhs = ZERO
        for mu, c in u.items():
            d = _d_entry(images[mu], nu, k)
            if d:
                rhs = rhs + c * d
        gap = eps - _d_entry(images[nu], nu, k)
        if gap.is_zero():
            if rhs.is_zero():
                continue
            raise DegeneracyError(f"eigenvalues of m{list(lam)} and m{list(nu)} coincide")
        u[nu] = rhs / gap
    return SymmetricPolynomial(n, u)


def to_jack_basis(f: SymmetricPolynomial, kappa=None) -> JackExpansion:
    """Triangular change of basis monomial -> Jack."""
    rest = dict(f.coeffs)
    out = {}
    while rest:
        # largest weight, then lex-largest: its m-coefficient is its P-coefficient
        top = max(rest, key=lambda p: (p.weight, tuple(p)))
        c = rest[top]
        out[top] = c
        P = jack_polynomial(top, f.n, kappa)
        for mu, v in P.coeffs.items():
            new = rest.get(mu, ZERO) - c * v
            if new.is_zero():
                rest.pop(mu, None)
            else:
                rest[mu] = new
    return JackExpansion(f.n, out, _norm_kappa(kappa))


def from_jack_basis(e: JackExpansion) -> SymmetricPolynomial:
    total = SymmetricPolynomial(e.n)
    for mu, c in e.coeffs.items():
        total = total + jack_polynomial(mu, e.n, e.kappa).scale(c)
    return total


def jack_norm_closed(lam, n: int) -> GammaProduct:
    """Closed form of <P_lam, P_lam>'_n as a normalised Gamma product."""
    lam = Partition(lam)
    p = lam.padded(n)
    numer, denom = [], []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            d = p[i - 1] - p[j - 1]
            numer += [LinearForm(d, 0, j - i + 1), LinearForm(d + 1, 0, j - i - 1)]
            denom += [LinearForm(d, 0, j - i), LinearForm(d + 1, 0, j - i)]
    return GammaProduct.build(ONE, numer, denom)


@lru_cache(maxsize=None)
def _sutherland_kernel(n: int, kappa: int) -> dict:
    """Laurent expansion of prod_{i != j} (1 - x_i/x_j)^kappa as {exponent: int}."""
    poly = {(0,) * n: 1}
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            step = [0] * n
            step[i], step[j] = 1, -1
            for _ in range(kappa):
                nxt: dict = {}
                for e, c in poly.items():
                    nxt[e] = nxt.get(e, 0) + c
                    f = tuple(x + s for x, s in zip(e, step))
                    nxt[f] = nxt.get(f, 0) - c
                poly = {e: c for e, c in nxt.items() if c}
    return poly


def torus_pairing_integer_kappa(f: SymmetricPolynomial, g: SymmetricPolynomial, kappa_int: int) -> Fraction:
    """(1/n!) CT[f(x) g(1/x) prod_{i != j}(1 - x_i/x_j)^k] with k a positive integer."""
    if int(kappa_int) != kappa_int or kappa_int < 1:
        raise ValueError("torus pairing is exact only for positive integer kappa")
    kappa_int = int(kappa_int)
    f._check_n(g)
    n = f.n

    def exact(poly):
        out = {}
        for e, c in expand_to_exponents(poly.subs(k=kappa_int)).terms.items():
            if not c.is_constant():
                raise ValueError(f"coefficient {c} still depends on a parameter after k={kappa_int}")
            out[e] = c.to_fraction()
        return out

    F, G = exact(f), exact(g)
    kern = _sutherland_kernel(n, kappa_int)
    total = Fraction(0)
    for alpha, cf in F.items():
        for beta, cg in G.items():
            w = kern.get(tuple(b - a for a, b in zip(alpha, beta)))
            if w:
                total += cf * cg * w
    return total / factorial(n)


def hook_product(lam) -> ParamRational:
    """h^lam = prod over boxes (lam_i - j + k (lam'_j - i + 1))."""
    lam = Partition(lam)
    conj = lam.conjugate()
    out = ONE
    for i, j in lam.boxes():
        out = out * (lam[i - 1] - j + K * (conj[j - 1] - i + 1))
    return out


def jack_integral_form(lam, n: int) -> tuple[SymmetricPolynomial, ParamRational]:
    """(J_lam, h^lam) with J_lam = k^{-|lam|} h^lam P_lam."""
    lam = Partition(lam)
    h = hook_product(lam)
    J = jack_polynomial(lam, n).scale(h / K ** lam.weight)
    return J, h


def jack_at_ones_closed(lam, n: int) -> ParamRational:
    """J_lam(1^n) = k^{-|lam|} prod over boxes (j - 1 + k (n - i + 1))."""
    lam = Partition(lam)
    out = ONE
    for i, j in lam.boxes():
        out = out * (j - 1 + K * (n - i + 1))
    return out / K ** lam.weight


def reciprocal_complement_check(nu, N: int, n: int) -> bool:
    """(y_1..y_n)^N P_nu(1/y) == P_nu_hat(y), exactly in Q(k)."""
    nu = Partition(nu)
    nu_hat = complement_in_box(nu, N, n)
    E = expand_to_exponents(jack_polynomial(nu, n))
    flipped = ExponentPolynomial(n, {tuple(N - x for x in e): c for e, c in E.terms.items()})
    return symmetrize(flipped) == jack_polynomial(nu_hat, n)


def inverse_kappa_coefficients(c: ParamRational):
    """Coefficients [c_0, c_1, ...] with c = sum_j c_j k^{-j}, or None if c is not of that shape."""
    if "a" in c.free_symbols():
        return None
    den = c.den.terms
    if len(den) != 1:
        return None
    ((_, d), lead), = den.items()
    num = c.num.terms
    if any(j > d for _, j in num):
        return None
    out = [0] * (d + 1)
    for (_, j), v in num.items():
        out[d - j] = v / lead
    return out


def integral_form_integrality(lam, n: int) -> tuple[bool, dict]:
    """Monomial coefficients of J_lam are polynomials in 1/k with nonnegative integer coefficients."""
    J, _ = jack_integral_form(lam, n)
    coeffs = {}
    ok = True
    for mu, c in J.coeffs.items():
        cs = inverse_kappa_coefficients(c)
        coeffs[mu] = cs
        if cs is None or any(x.denominator != 1 or x < 0 for x in map(Fraction, cs)):
            ok = False
    return ok, coeffs
