"""Exact arithmetic in Q(a, k).

Rationals are plain :class:`fractions.Fraction`.  Polynomials and rational
functions in the two parameters ``a`` and ``k`` (kappa) are backed by FLINT
integer multivariate polynomials, which supply the bivariate gcd needed for a
canonical reduced form.
"""

from __future__ import annotations

from dataclasses import dataclass
import math
from fractions import Fraction
from math import lcm
from numbers import Rational as _RationalABC
from typing import Union

import flint

__all__ = [
    "VARIABLES",
    "ParameterDegeneracyError",
    "ParamPolynomial",
    "ParamRational",
    "LinearForm",
    "ratfunc_normalize",
    "pochhammer",
    "A",
    "K",
    "ONE",
    "ZERO",
    "as_param",
    "to_fraction",
]

VARIABLES = ("a", "k")

# deglex with a > k: leading coefficients refer to this order
_ZCTX = flint.fmpz_mpoly_ctx.get(VARIABLES, "deglex")
_QCTX = flint.fmpq_mpoly_ctx.get(VARIABLES, "deglex")


class ParameterDegeneracyError(ZeroDivisionError):
    """Raised when a value is evaluated on a pole of the parameter field."""


def to_fraction(x) -> Fraction:
    """Convert an int / Fraction / flint rational / numeric string to Fraction.

    Finite floats go through their shortest repr, so 0.1 becomes 1/10.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, (flint.fmpz, flint.fmpq)):
        return Fraction(str(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float) and math.isfinite(x):
        return Fraction(repr(x))
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _zpoly_from_fracs(terms: dict) -> tuple[flint.fmpz_mpoly, int]:
    """Integer polynomial and common denominator for a dict of rational terms."""
    terms = {m: to_fraction(c) for m, c in terms.items() if c != 0}
    d = lcm(*(c.denominator for c in terms.values())) if terms else 1
    zt = {m: int(c * d) for m, c in terms.items()}
    return _ZCTX.from_dict(zt), d


def _zdict(p) -> dict:
    """Native-int view of a FLINT polynomial: {(i, j): coefficient}."""
    return {(int(m[0]), int(m[1])): c for m, c in p.to_dict().items()}


def _fmt_monomial(exps) -> str:
    parts = []
    for var, e in zip(VARIABLES, exps):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return "*".join(parts)


def _fmt_terms(items) -> str:
    """Render (monomial, coefficient) pairs, already sorted, as a compact string."""
    out = []
    for exps, c in items:
        mono = _fmt_monomial(exps)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        out.append((sign, body))
    if not out:
        return "0"
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        s += sign + body
    return s


def _sorted_items(d: dict):
    # deglex descending, a before k
    return sorted(d.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)


class ParamPolynomial:
    """A polynomial in ``a`` and ``k`` with rational coefficients."""

    __slots__ = ("_p",)

    def __init__(self, terms=None):
        if isinstance(terms, flint.fmpq_mpoly):
            self._p = terms
            return
        if isinstance(terms, flint.fmpz_mpoly):
            self._p = _QCTX.from_dict({m: flint.fmpq(int(c)) for m, c in _zdict(terms).items()})
            return
        terms = terms or {}
        qt = {}
        for m, c in terms.items():
            c = to_fraction(c)
            if c:
                qt[tuple(m)] = flint.fmpq(c.numerator, c.denominator)
        self._p = _QCTX.from_dict(qt)

    @classmethod
    def constant(cls, c) -> "ParamPolynomial":
        return cls({(0, 0): c})

    @property
    def terms(self) -> dict:
        """Map (deg_a, deg_k) -> Fraction, zero coefficients omitted."""
        return {m: Fraction(str(c)) for m, c in _zdict(self._p).items() if c != 0}

    def degree(self, var: str) -> int:
        t = self.terms
        if not t:
            return -1
        idx = VARIABLES.index(var)
        return max(m[idx] for m in t)

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def is_constant(self) -> bool:
        return self._p.is_constant()

    def _coerce(self, other) -> "ParamPolynomial":
        if isinstance(other, ParamPolynomial):
            return other
        return ParamPolynomial.constant(to_fraction(other))

    def __add__(self, other):
        if isinstance(other, ParamRational):
            return NotImplemented
        return ParamPolynomial(self._p + self._coerce(other)._p)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, ParamRational):
            return NotImplemented
        return ParamPolynomial(self._p - self._coerce(other)._p)

    def __rsub__(self, other):
        return ParamPolynomial(self._coerce(other)._p - self._p)

    def __neg__(self):
        return ParamPolynomial(-self._p)

    def __mul__(self, other):
        if isinstance(other, ParamRational):
            return NotImplemented
        return ParamPolynomial(self._p * self._coerce(other)._p)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return ParamPolynomial(self._p ** e)

    def __truediv__(self, other):
        return self.to_rational() / other

    def __eq__(self, other):
        if isinstance(other, ParamRational):
            return other == self
        try:
            return self._p == self._coerce(other)._p
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def integer_form(self) -> tuple[flint.fmpz_mpoly, int]:
        """(integer polynomial P, d) with self = P / d."""
        return _zpoly_from_fracs(self.terms)

    def to_rational(self) -> "ParamRational":
        p, d = self.integer_form()
        return ParamRational._raw(p, _ZCTX.from_dict({(0, 0): d}))

    def __call__(self, a_val, k_val):
        return _eval_terms(self.terms, a_val, k_val)

    def __str__(self):
        return _fmt_terms(_sorted_items(self.terms))

    def __repr__(self):
        return f"ParamPolynomial({self})"


def _eval_terms(terms: dict, a_val, k_val):
    total = 0
    for (i, j), c in terms.items():
        total += c * a_val**i * k_val**j
    return total


Scalar = Union[int, Fraction]


class ParamRational:
    """An element of Q(a, k) in canonical reduced form.

    ``num`` and ``den`` are coprime integer polynomials; the integer contents
    are coprime and the deglex-leading coefficient of ``den`` is positive.
    With that normalisation equality is structural.
    """

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, num=0, den=1):
        n = _as_zpoly_pair(num)
        d = _as_zpoly_pair(den)
        # n = n0/n1, d = d0/d1  ->  (n0*d1)/(n1*d0)
        self._set(n[0] * d[1], n[1] * d[0])

    @classmethod
    def _raw(cls, num: flint.fmpz_mpoly, den: flint.fmpz_mpoly) -> "ParamRational":
        obj = cls.__new__(cls)
        obj._set(num, den)
        return obj

    def _set(self, num, den):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in rational function")
        if num.is_zero():
            num, den = _ZCTX.from_dict({}), _ZCTX.from_dict({(0, 0): 1})
        elif not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
            if den.leading_coefficient() < 0:
                num, den = -num, -den
        self._num = num
        self._den = den
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def from_terms(cls, num_terms: dict, den_terms: dict | None = None) -> "ParamRational":
        n, dn = _zpoly_from_fracs(num_terms)
        if den_terms is None:
            d, dd = _ZCTX.from_dict({(0, 0): 1}), 1
        else:
            d, dd = _zpoly_from_fracs(den_terms)
        return cls._raw(n * dd, d * dn)

    # -- accessors ----------------------------------------------------
    @property
    def num(self) -> ParamPolynomial:
        return ParamPolynomial(self._num)

    @property
    def den(self) -> ParamPolynomial:
        return ParamPolynomial(self._den)

    @property
    def zpoly_num(self) -> flint.fmpz_mpoly:
        return self._num

    @property
    def zpoly_den(self) -> flint.fmpz_mpoly:
        return self._den

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def is_constant(self) -> bool:
        return self._num.is_constant() and self._den.is_constant()

    def is_polynomial(self) -> bool:
        return self._den.is_constant()

    def degree(self, var: str) -> tuple[int, int]:
        """(degree of numerator, degree of denominator) in ``var``."""
        idx = VARIABLES.index(var)
        return (self._num.degrees()[idx] if not self._num.is_zero() else -1,
                self._den.degrees()[idx])

    def free_symbols(self) -> set[str]:
        out = set()
        for p in (self._num, self._den):
            if p.is_zero():
                continue
            for var, deg in zip(VARIABLES, p.degrees()):
                if deg > 0:
                    out.add(var)
        return out

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        n = _zdict(self._num).get((0, 0), 0)
        d = _zdict(self._den)[(0, 0)]
        return Fraction(int(n), int(d))

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self._den == o._den:
            return ParamRational._raw(self._num + o._num, self._den)
        return ParamRational._raw(self._num * o._den + o._num * self._den, self._den * o._den)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self._den == o._den:
            return ParamRational._raw(self._num - o._num, self._den)
        return ParamRational._raw(self._num * o._den - o._num * self._den, self._den * o._den)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        obj = ParamRational.__new__(ParamRational)
        obj._num, obj._den, obj._hash = -self._num, self._den, None
        return obj

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return ZERO
        # cross-cancel first to keep the final gcd small
        g1 = self._num.gcd(o._den)
        g2 = o._num.gcd(self._den)
        n = (self._num / g1) * (o._num / g2)
        d = (self._den / g2) * (o._den / g1)
        obj = ParamRational.__new__(ParamRational)
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        obj._num, obj._den, obj._hash = n, d, None
        return obj

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return self * ParamRational._raw(o._den, o._num)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        if e < 0:
            return (ONE / self) ** (-e)
        return ParamRational._raw(self._num ** e, self._den ** e)

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._num == o._num and self._den == o._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(sorted((m, int(c)) for m, c in _zdict(self._num).items())),
                               tuple(sorted((m, int(c)) for m, c in _zdict(self._den).items()))))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # -- substitution -------------------------------------------------
    def subs(self, a=None, k=None) -> "ParamRational":
        """Exact substitution of rational values for ``a`` and/or ``k``."""
        a = None if a is None else to_fraction(a)
        k = None if k is None else to_fraction(k)

        def sub(poly):
            out: dict = {}
            for (i, j), c in _zdict(poly).items():
                c = Fraction(int(c))
                if a is not None:
                    c *= a**i
                    i = 0
                if k is not None:
                    c *= k**j
                    j = 0
                out[(i, j)] = out.get((i, j), 0) + c
            return out

        n_terms, d_terms = sub(self._num), sub(self._den)
        if all(c == 0 for c in d_terms.values()):
            raise ParameterDegeneracyError(
                f"denominator of {self} vanishes at a={a}, k={k}; "
                f"offending factor {self._vanishing_factor(a, k)}"
            )
        return ParamRational.from_terms(n_terms, d_terms)

    def _vanishing_factor(self, a_val, k_val, tol=1e-12) -> str:
        _, factors = self._den.factor()
        for f, _mult in factors:
            terms = {m: int(c) for m, c in _zdict(f).items()}
            av = 0 if a_val is None else a_val
            kv = 0 if k_val is None else k_val
            if a_val is None and any(m[0] for m in terms):
                continue
            if k_val is None and any(m[1] for m in terms):
                continue
            if abs(complex(_eval_terms(terms, av, kv))) <= tol:
                return _fmt_terms(_sorted_items(terms))
        return str(self.den)

    def __call__(self, a_val, k_val):
        """Numeric evaluation; rational inputs are evaluated exactly first."""
        exact = all(isinstance(v, (int, Fraction)) for v in (a_val, k_val))
        if exact:
            return float(self.subs(a=a_val, k=k_val).to_fraction())
        n = _eval_terms({m: int(c) for m, c in _zdict(self._num).items()}, a_val, k_val)
        d = _eval_terms({m: int(c) for m, c in _zdict(self._den).items()}, a_val, k_val)
        if d == 0:
            raise ParameterDegeneracyError(
                f"denominator of {self} vanishes at a={a_val}, k={k_val}; "
                f"offending factor {self._vanishing_factor(a_val, k_val)}"
            )
        return n / d

    # -- formatting ---------------------------------------------------
    def __str__(self):
        ns = _fmt_terms(_sorted_items({m: int(c) for m, c in _zdict(self._num).items()}))
        if self._den.is_one():
            return ns
        dd = {m: int(c) for m, c in _zdict(self._den).items()}
        ds = _fmt_terms(_sorted_items(dd))
        if len(self._num) > 1:
            ns = f"({ns})"
        if not (len(dd) == 1 and (0, 0) in dd):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"ParamRational({self})"


def _as_zpoly_pair(x) -> tuple[flint.fmpz_mpoly, flint.fmpz_mpoly]:
    one = _ZCTX.from_dict({(0, 0): 1})
    if isinstance(x, ParamRational):
        return x._num, x._den
    if isinstance(x, ParamPolynomial):
        p, d = x.integer_form()
        return p, _ZCTX.from_dict({(0, 0): d})
    if isinstance(x, flint.fmpz_mpoly):
        return x, one
    f = to_fraction(x)
    return _ZCTX.from_dict({(0, 0): f.numerator}), _ZCTX.from_dict({(0, 0): f.denominator})


def _coerce(x) -> ParamRational | None:
    if isinstance(x, ParamRational):
        return x
    if isinstance(x, ParamPolynomial):
        return x.to_rational()
    if isinstance(x, (int, Fraction)):
        f = Fraction(x)
        return ParamRational._raw(_ZCTX.from_dict({(0, 0): f.numerator}),
                                  _ZCTX.from_dict({(0, 0): f.denominator}))
    return None


def as_param(x) -> ParamRational:
    r = _coerce(x)
    if r is None:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(a,k)")
    return r


def ratfunc_normalize(num: ParamPolynomial, den: ParamPolynomial) -> ParamRational:
    """Canonical reduced form of num/den; raises ZeroDivisionError on den == 0."""
    if den.is_zero():
        raise ZeroDivisionError("ratfunc_normalize: zero denominator")
    return ParamRational(num, den)


ZERO = ParamRational(0)
ONE = ParamRational(1)
A = ParamRational(_ZCTX.gens()[0])
K = ParamRational(_ZCTX.gens()[1])


@dataclass(frozen=True, order=True)
class LinearForm:
    """c0 + ca*a + ck*k with rational coefficients."""

    c0: Fraction = Fraction(0)
    ca: Fraction = Fraction(0)
    ck: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("c0", "ca", "ck"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))

    @classmethod
    def of(cls, x) -> "LinearForm":
        if isinstance(x, LinearForm):
            return x
        return cls(to_fraction(x))

    def is_constant(self) -> bool:
        return self.ca == 0 and self.ck == 0

    def __add__(self, other):
        if isinstance(other, LinearForm):
            return LinearForm(self.c0 + other.c0, self.ca + other.ca, self.ck + other.ck)
        if isinstance(other, (int, Fraction)):
            return LinearForm(self.c0 + other, self.ca, self.ck)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return LinearForm(-self.c0, -self.ca, -self.ck)

    def __sub__(self, other):
        if isinstance(other, (LinearForm, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            return LinearForm(self.c0 * c, self.ca * c, self.ck * c)
        return NotImplemented

    __rmul__ = __mul__

    def to_poly(self) -> ParamPolynomial:
        return ParamPolynomial({(0, 0): self.c0, (1, 0): self.ca, (0, 1): self.ck})

    def to_rational(self) -> ParamRational:
        return ParamRational.from_terms({(0, 0): self.c0, (1, 0): self.ca, (0, 1): self.ck})

    def subs(self, a=None, k=None) -> "LinearForm":
        c0, ca, ck = self.c0, self.ca, self.ck
        if a is not None:
            c0, ca = c0 + ca * to_fraction(a), Fraction(0)
        if k is not None:
            c0, ck = c0 + ck * to_fraction(k), Fraction(0)
        return LinearForm(c0, ca, ck)

    def __call__(self, a_val, k_val):
        return self.c0 + self.ca * a_val + self.ck * k_val

    def __str__(self):
        items = [((1, 0), self.ca), ((0, 1), self.ck), ((0, 0), self.c0)]
        items = [(m, c) for m, c in items if c != 0]
        if not items:
            return "0"
        out = []
        for m, c in items:
            mono = _fmt_monomial(m)
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            out.append(("-" if c < 0 else "+", body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += sign + body
        return s


def pochhammer(L, m: int) -> ParamPolynomial:
    """Rising factorial L (L+1) ... (L+m-1); the empty product for m = 0."""
    if m < 0:
        raise ValueError("pochhammer length must be nonnegative")
    L = LinearForm.of(L)
    out = ParamPolynomial.constant(1)
    for s in range(m):
        out = out * (L + s).to_poly()
    return out
