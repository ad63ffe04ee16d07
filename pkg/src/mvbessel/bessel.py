"""Multivariable Bessel polynomials Y_lam(x; a, k).

Y_lam = P_lam + sum_{mu strictly inside lam} u_mu P_mu is found by solving the
D^B eigenproblem in the Jack basis over Q(a, k).  D^B acts on P_mu as
``eps_mu P_mu + 2 sum_i d_i P_mu`` so the system is triangular in weight.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .field import ONE, ZERO, A, K, LinearForm, ParamPolynomial, ParamRational, pochhammer
from .gammaprod import GammaProduct
from .jack import (
    DegeneracyError,
    JackExpansion,
    from_jack_basis,
    to_jack_basis,
)
from .partitions import Partition, contained, sub_partitions
from .sympoly import SymmetricPolynomial, apply_DB

__all__ = [
    "StructuralError",
    "BesselPolynomial",
    "PoleCertificate",
    "bessel_polynomial",
    "bessel_at_zero",
    "bessel_at_zero_unshifted",
    "constant_term_consistency",
    "interpolation_diagonal",
    "implied_interpolation_ratios",
    "pole_certificate",
    "certify_denominators",
    "db_in_jack_basis",
]


class StructuralError(ArithmeticError):
    """D^B(P_lam) left the span of {P_mu : mu inside lam}."""


@dataclass
class BesselPolynomial:
    lam: Partition
    n: int
    jack_coeffs: JackExpansion
    monomial_form: SymmetricPolynomial
    eigenvalue: ParamRational

    def constant_term(self) -> ParamRational:
        return self.monomial_form.constant_term()

    def to_json(self) -> dict:
        d = self.jack_coeffs.to_json()
        return {"lambda": list(self.lam), "n": self.n, **{k: d[k] for k in ("basis", "terms")},
                "eigenvalue": str(self.eigenvalue)}


_db_cache: dict = {}
_bessel_cache: dict = {}
_lock = threading.Lock()


def db_in_jack_basis(mu, n: int) -> JackExpansion:
    """D^B(P_mu) in the Jack basis; checks that only sub-partitions of mu occur."""
    mu = Partition(mu)
    key = (mu, n)
    if key in _db_cache:
        return _db_cache[key]
    from .jack import jack_polynomial

    img = to_jack_basis(apply_DB(jack_polynomial(mu, n)))
    bad = [nu for nu in img.coeffs if not contained(nu, mu)]
    if bad:
        raise StructuralError(f"D^B(P{list(mu)}) has components outside mu: {bad}")
    with _lock:
        _db_cache.setdefault(key, img)
    return _db_cache[key]


def bessel_polynomial(lam, n: int, verify: bool = True) -> BesselPolynomial:
    """Y_lam in n variables, monic in P_lam.

    With ``verify`` the eigen-residual D^B Y - eps Y is recomputed in the
    monomial basis and must vanish identically.
    """
    lam = Partition(lam)
    if len(lam) > n:
        raise ValueError(f"{lam} has more than n={n} parts")
    key = (lam, n)
    if key in _bessel_cache:
        return _bessel_cache[key]

    subs = sub_partitions(lam)  # ascending weight
    images = {mu: db_in_jack_basis(mu, n) for mu in subs}
    eps = images[lam].coefficient(lam)
    u = {lam: ONE}
    for nu in reversed(subs[:-1]):
        rhs = ZERO
        for rho, c in u.items():
            b = images[rho].coefficient(nu)
            if b:
                rhs = rhs + c * b
        gap = eps - images[nu].coefficient(nu)
        if gap.is_zero():
            if rhs.is_zero():
                continue
            raise DegeneracyError(f"D^B eigenvalues of P{list(lam)} and P{list(nu)} coincide")
        if not rhs.is_zero():
            u[nu] = rhs / gap
    jexp = JackExpansion(n, u)
    mono = from_jack_basis(jexp)
    if verify:
        residual = apply_DB(mono) - mono.scale(eps)
        if not residual.is_zero():
            raise ArithmeticError(f"eigen-residual of Y{list(lam)} does not vanish")
    Y = BesselPolynomial(lam, n, jexp, mono, eps)
    with _lock:
        _bessel_cache.setdefault(key, Y)
    return _bessel_cache[key]


def _zero_value(lam, n: int, shift) -> ParamRational:
    lam = Partition(lam)
    p = lam.padded(n)
    val = ParamRational(2) ** lam.weight
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            d, s = p[i - 1] - p[j - 1], p[i - 1] + p[j - 1]
            val = val * pochhammer(LinearForm(0, 0, j - i + 1), d) \
                * pochhammer(shift + LinearForm(0, 0, 2 * n - i - j + 1), s) \
                / (pochhammer(LinearForm(0, 0, j - i), d)
                   * pochhammer(shift + LinearForm(0, 0, 2 * n - i - j), s))
    for i in range(1, n + 1):
        li = p[i - 1]
        val = val * pochhammer(LinearForm(-1, 1, n - i), li) / pochhammer(LinearForm(-1, 1, 2 * (n - i)), 2 * li)
    return val


def bessel_at_zero(lam, n: int) -> GammaProduct:
    """Closed form of Y_lam(0^n); purely rational in (a, k).

    2^|lam| prod_{i<j} [k(j-i+1)]_{l_i-l_j} [a-1+k(2n-i-j+1)]_{l_i+l_j}
    / ([k(j-i)]_{l_i-l_j} [a-1+k(2n-i-j)]_{l_i+l_j})
    * prod_i [a-1+k(n-i)]_{l_i} / [a-1+2k(n-i)]_{2 l_i}
    """
    return GammaProduct(_zero_value(lam, n, LinearForm(-1, 1, 0)))


def bessel_at_zero_unshifted(lam, n: int) -> GammaProduct:
    """Variant whose second pair factor is [k(2n-i-j+1)]_s / [k(2n-i-j)]_s.

    Agrees with :func:`bessel_at_zero` for n = 1 only; kept so the
    discrepancy stays testable.
    """
    return GammaProduct(_zero_value(lam, n, LinearForm()))


def constant_term_consistency(lam, n: int) -> tuple[bool, ParamRational, ParamRational]:
    """(ok, constant coefficient of Y_lam, closed-form Y_lam(0^n))."""
    Y = bessel_polynomial(lam, n)
    lhs = Y.constant_term()
    rhs = bessel_at_zero(lam, n).as_rational()
    return lhs == rhs, lhs, rhs


def interpolation_diagonal(mu, n: int) -> ParamPolynomial:
    """I_mu(mu; k, (a-1)/2 + k n) as the product over the boxes of mu."""
    mu = Partition(mu)
    conj = mu.conjugate()
    out = ParamPolynomial.constant(1)
    for i, j in mu.boxes():
        first = LinearForm(1 + mu[i - 1] - j, 0, conj[j - 1] - i)
        second = LinearForm(-2 + mu[i - 1] + j, 1, 2 * n - conj[j - 1] - i)
        out = out * first.to_poly() * second.to_poly()
    return out


def implied_interpolation_ratios(lam, n: int) -> dict:
    """I_mu(lam)/I_mu(mu) implied by the Jack coefficients of Y_lam.

    Diagnostic only: u_{lam mu} Y_mu(0) / Y_lam(0) for every mu inside lam.
    """
    lam = Partition(lam)
    Y = bessel_polynomial(lam, n)
    y_lam0 = bessel_at_zero(lam, n).as_rational()
    out = {}
    for mu in sub_partitions(lam):
        out[mu] = Y.jack_coeffs.coefficient(mu) * bessel_at_zero(mu, n).as_rational() / y_lam0
    return out


@dataclass
class PoleCertificate:
    allowed_factors: list = field(default_factory=list)  # [(LinearForm, multiplicity)]
    leftover: ParamPolynomial = field(default_factory=lambda: ParamPolynomial.constant(1))

    @property
    def passed(self) -> bool:
        return self.leftover.is_constant() and not self.leftover.is_zero()

    def to_json(self) -> dict:
        return {"pass": self.passed,
                "factors": [str(L) if m == 1 else f"({L})^{m}" for L, m in self.allowed_factors],
                "leftover": str(self.leftover)}


def _candidate_forms(n: int, weight: int, deg_a: int, deg_k: int, kappa_zero: bool) -> list[LinearForm]:
    cands = []
    p_max = weight + n
    for q in range(1, max(deg_k, 1) + 1):
        for p in range(0 if kappa_zero else 1, p_max + 1):
            if p == 0 and q != 1:
                continue
            if p and Fraction(p, q).denominator != q:
                continue
            cands.append(LinearForm(p, 0, q))
    for i in range(0, 2 * (n - 1) + 1):
        for m in range(0, deg_a + 2 * weight + 1):
            cands.append(LinearForm(m - 1, 1, i))
    return cands


def certify_denominators(values, n: int, weight: int, kappa_zero: bool = False) -> PoleCertificate:
    """Strip every denominator factor of the form (q k + p) or (a - 1 + i k + m).

    ``kappa_zero`` additionally admits the factor k itself.
    """
    den = None
    for v in values:
        d = v.zpoly_den
        den = d if den is None else den * d // den.gcd(d)
    if den is None:
        return PoleCertificate()
    da, dk = (int(x) for x in den.degrees())
    found = []
    for L in _candidate_forms(n, weight, da, dk, kappa_zero):
        f = L.to_rational().zpoly_num
        mult = 0
        while not den.is_constant():
            q, r = divmod(den, f)
            if not r.is_zero():
                break
            den = q
            mult += 1
        if mult:
            found.append((L, mult))
    return PoleCertificate(found, ParamPolynomial(den))


def pole_certificate(Y: BesselPolynomial) -> PoleCertificate:
    """Certificate that all Jack coefficients of Y have poles only on the excluded locus."""
    return certify_denominators(Y.jack_coeffs.coeffs.values(), Y.n, Y.lam.weight)
