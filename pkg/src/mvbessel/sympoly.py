"""Symmetric polynomials in the monomial basis and the operators D and D^B.

Operators are applied through full exponent expansions.  The Sutherland term
``sum_{i != j} x_i^2/(x_i - x_j) d_i`` is evaluated pairwise as
``(x_i^2 d_i f - x_j^2 d_j f) / (x_i - x_j)`` with exact polynomial division.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

from .field import ONE, ZERO, A, K, ParamRational, as_param
from .partitions import Partition

__all__ = [
    "ExponentPolynomial",
    "SymmetricPolynomial",
    "NotDivisibleError",
    "expand_to_exponents",
    "symmetrize",
    "multiply",
    "apply_D",
    "apply_DB",
    "monomial",
    "operator_images",
]


class NotDivisibleError(ArithmeticError):
    """Exact division by (x_i - x_j) left a remainder."""


@dataclass
class ExponentPolynomial:
    """Polynomial in x_1..x_n stored as {exponent tuple: coefficient}."""

    n: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {tuple(e): c for e, c in self.terms.items() if c != 0}

    def __add__(self, other: "ExponentPolynomial") -> "ExponentPolynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return ExponentPolynomial(self.n, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "ExponentPolynomial":
        return ExponentPolynomial(self.n, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: "ExponentPolynomial") -> "ExponentPolynomial":
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return ExponentPolynomial(self.n, out)

    def diff(self, i: int) -> "ExponentPolynomial":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return ExponentPolynomial(self.n, out)

    def shift(self, i: int, power: int) -> "ExponentPolynomial":
        """Multiply by x_i**power."""
        out = {}
        for e, c in self.terms.items():
            f = list(e)
            f[i] += power
            out[tuple(f)] = c
        return ExponentPolynomial(self.n, out)

    def divide_by_difference(self, i: int, j: int) -> "ExponentPolynomial":
        """Exact quotient by (x_i - x_j); raises NotDivisibleError otherwise."""
        # group by the exponent vector with x_i removed, then synthetic division in x_i
        groups: dict = {}
        for e, c in self.terms.items():
            rest = e[:i] + (0,) + e[i + 1:]
            groups.setdefault(rest, {})[e[i]] = c
        # coefficients of x_i^d are polynomials in the other variables; propagate
        # q_{d-1} = g_d + x_j q_d from the top degree down
        coeffs: dict = {}
        for rest, by_deg in groups.items():
            for d, c in by_deg.items():
                coeffs.setdefault(d, {})[rest] = c
        if not coeffs:
            return ExponentPolynomial(self.n, {})
        top = max(coeffs)
        quotient: dict = {}
        carry: dict = {}
        for d in range(top, 0, -1):
            cur = dict(coeffs.get(d, {}))
            for rest, c in carry.items():
                cur[rest] = cur.get(rest, 0) + c
            cur = {r: c for r, c in cur.items() if c != 0}
            for rest, c in cur.items():
                e = list(rest)
                e[i] = d - 1
                quotient[tuple(e)] = c
            carry = {}
            for rest, c in cur.items():
                r = list(rest)
                r[j] += 1
                carry[tuple(r)] = c
        remainder = dict(coeffs.get(0, {}))
        for rest, c in carry.items():
            remainder[rest] = remainder.get(rest, 0) + c
        if any(c != 0 for c in remainder.values()):
            raise NotDivisibleError(f"polynomial not divisible by (x{i + 1} - x{j + 1})")
        return ExponentPolynomial(self.n, quotient)

    def is_symmetric(self) -> bool:
        for e, c in self.terms.items():
            for p in set(permutations(e)):
                if self.terms.get(p, 0) != c:
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, ExponentPolynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def evaluate(self, x):
        total = 0
        for e, c in self.terms.items():
            t = c
            for xi, ei in zip(x, e):
                t = t * xi**ei
            total = total + t
        return total


@dataclass
class SymmetricPolynomial:
    """Coordinates in the monomial basis {m_lambda}, lambda with at most n parts."""

    n: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for lam, c in self.coeffs.items():
            lam = Partition(lam)
            if len(lam) > self.n:
                raise ValueError(f"{lam} has more than n={self.n} parts")
            c = as_param(c)
            if not c.is_zero():
                clean[lam] = c
        self.coeffs = clean

    @classmethod
    def one(cls, n: int) -> "SymmetricPolynomial":
        return cls(n, {Partition(): ONE})

    def __add__(self, other):
        self._check_n(other)
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out.get(lam, ZERO) + c
        return SymmetricPolynomial(self.n, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "SymmetricPolynomial":
        c = as_param(c)
        if c.is_zero():
            return SymmetricPolynomial(self.n)
        return SymmetricPolynomial(self.n, {lam: c * v for lam, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, SymmetricPolynomial):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def _check_n(self, other):
        if self.n != other.n:
            raise ValueError(f"variable counts differ: {self.n} vs {other.n}")

    def __eq__(self, other):
        if not isinstance(other, SymmetricPolynomial):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max((lam.weight for lam in self.coeffs), default=-1)

    def coefficient(self, lam) -> ParamRational:
        return self.coeffs.get(Partition(lam), ZERO)

    def constant_term(self) -> ParamRational:
        return self.coefficient(())

    def map_coefficients(self, fn) -> "SymmetricPolynomial":
        return SymmetricPolynomial(self.n, {lam: fn(c) for lam, c in self.coeffs.items()})

    def subs(self, a=None, k=None) -> "SymmetricPolynomial":
        return self.map_coefficients(lambda c: c.subs(a=a, k=k))

    def numeric_terms(self, a_val=None, k_val=None) -> list:
        """[(exponent tuple, complex coeff)] after substituting parameter values."""
        out = []
        for e, c in expand_to_exponents(self).terms.items():
            if c.is_constant():
                v = complex(c.to_fraction())
            else:
                v = complex(c(a_val, k_val))
            out.append((e, v))
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "basis": "monomial",
            "terms": [{"mu": list(lam), "coeff": str(c)} for lam, c in _ordered(self.coeffs)],
        }

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*m{list(lam)}" for lam, c in _ordered(self.coeffs))


def _ordered(coeffs: dict):
    return sorted(coeffs.items(), key=lambda kv: (-kv[0].weight, tuple(-x for x in kv[0])))


def monomial(lam, n: int, coeff=1) -> SymmetricPolynomial:
    return SymmetricPolynomial(n, {Partition(lam): coeff})


@lru_cache(maxsize=None)
def _distinct_permutations(exps: tuple) -> tuple:
    return tuple(sorted(set(permutations(exps)), reverse=True))


def expand_to_exponents(f: SymmetricPolynomial) -> ExponentPolynomial:
    terms = {}
    for lam, c in f.coeffs.items():
        for alpha in _distinct_permutations(lam.padded(f.n)):
            terms[alpha] = c
    return ExponentPolynomial(f.n, terms)


def symmetrize(E: ExponentPolynomial, check: bool = True) -> SymmetricPolynomial:
    """Collect the coefficients of dominant (decreasing) exponents.

    With ``check`` the input must be permutation invariant.
    """
    if check and not E.is_symmetric():
        raise ValueError("exponent polynomial is not symmetric")
    coeffs = {}
    for e, c in E.terms.items():
        if all(e[i] >= e[i + 1] for i in range(len(e) - 1)):
            coeffs[Partition(e)] = c
    return SymmetricPolynomial(E.n, coeffs)


def multiply(f: SymmetricPolynomial, g: SymmetricPolynomial) -> SymmetricPolynomial:
    """Exact product; only dominant exponents of the product are accumulated."""
    f._check_n(g)
    Ef = expand_to_exponents(f).terms
    Eg = expand_to_exponents(g).terms
    out: dict = {}
    for e1, c1 in Ef.items():
        for e2, c2 in Eg.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            if all(e[i] >= e[i + 1] for i in range(len(e) - 1)):
                key = Partition(e)
                prod = c1 * c2
                out[key] = out[key] + prod if key in out else prod
    return SymmetricPolynomial(f.n, out)


@lru_cache(maxsize=None)
def operator_images(lam: Partition, n: int) -> dict:
    """Integer images of m_lam under the building blocks of D and D^B.

    Keys: ``"euler2"`` (sum x_i^2 d_i^2), ``"sutherland"`` (sum_{i<j}
    (x_i^2 d_i - x_j^2 d_j)/(x_i - x_j)), ``"grad"`` (sum d_i).  Each value maps
    Partition -> int.  The Euler operator sum x_i d_i acts as |lam|.
    """
    lam = Partition(lam)
    E = ExponentPolynomial(n, {alpha: 1 for alpha in _distinct_permutations(lam.padded(n))})
    euler2 = ExponentPolynomial(n, {})
    grad = ExponentPolynomial(n, {})
    suth = ExponentPolynomial(n, {})
    firsts = [E.diff(i) for i in range(n)]
    for i in range(n):
        euler2 = euler2 + firsts[i].diff(i).shift(i, 2)
        grad = grad + firsts[i]
    for i in range(n):
        for j in range(i + 1, n):
            numer = firsts[i].shift(i, 2) - firsts[j].shift(j, 2)
            suth = suth + numer.divide_by_difference(i, j)

    def dominant(P: ExponentPolynomial) -> dict:
        return {Partition(e): c for e, c in P.terms.items()
                if all(e[t] >= e[t + 1] for t in range(n - 1))}

    for P in (euler2, grad, suth):
        if not P.is_symmetric():
            raise ArithmeticError(f"operator image of m{list(lam)} is not symmetric")
    return {"euler2": dominant(euler2), "sutherland": dominant(suth), "grad": dominant(grad)}


def _assemble(f: SymmetricPolynomial, weights: dict) -> SymmetricPolynomial:
    """sum_lam c_lam * sum_part weight_part * image_part(lam)."""
    out: dict = {}
    for lam, c in f.coeffs.items():
        imgs = operator_images(lam, f.n)
        for part, w in weights.items():
            if part == "euler":
                contributions = {lam: lam.weight}
            else:
                contributions = imgs[part]
            for mu, v in contributions.items():
                term = c * w * v
                out[mu] = out[mu] + term if mu in out else term
    return SymmetricPolynomial(f.n, out)


def apply_D(f: SymmetricPolynomial, kappa=None) -> SymmetricPolynomial:
    """D = sum x_i^2 d_i^2 + 2k sum_{i != j} x_i^2/(x_i - x_j) d_i."""
    k = K if kappa is None else as_param(kappa)
    return _assemble(f, {"euler2": ONE, "sutherland": 2 * k})


def apply_DB(f: SymmetricPolynomial, kappa=None, a=None) -> SymmetricPolynomial:
    """D^B = sum x_i^2 d_i^2 + sum (a x_i + 2) d_i + 2k sum_{i != j} x_i^2/(x_i - x_j) d_i."""
    k = K if kappa is None else as_param(kappa)
    av = A if a is None else as_param(a)
    return _assemble(f, {"euler2": ONE, "euler": av, "grad": as_param(2), "sutherland": 2 * k})
