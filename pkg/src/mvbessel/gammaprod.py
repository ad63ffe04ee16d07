"""Symbolic products of Gamma functions with arguments linear in ``a`` and ``k``.

A :class:`GammaProduct` is ``prefactor * 2**exp2 * prod Gamma(L)**e_L`` where
the ``L`` are :class:`~mvbessel.field.LinearForm` values.  Normalisation only
uses the shift rule ``Gamma(L + m) = [L]_m Gamma(L)`` for integer ``m``; every
Gamma is moved to the base point of its integer-shift class (constant part in
``[0, 1)``) so two products are equal iff their normal forms coincide.
"""

from __future__ import annotations

import cmath
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, floor

from .field import (
    ONE,
    ZERO,
    LinearForm,
    ParameterDegeneracyError,
    ParamRational,
    as_param,
    pochhammer,
)
from .special import GammaPoleError, log_gamma, pow2

__all__ = ["GammaProduct", "gamma_normalize", "gamma_equal", "substitute", "NotRationalError"]


class NotRationalError(ValueError):
    """A GammaProduct still carries Gamma or exponential content."""


def _base_and_shift(L: LinearForm) -> tuple[LinearForm, int]:
    s = floor(L.c0)
    return LinearForm(L.c0 - s, L.ca, L.ck), s


@dataclass(frozen=True)
class GammaProduct:
    prefactor: ParamRational = ONE
    numer: tuple = ()
    denom: tuple = ()
    exp2: LinearForm = field(default_factory=LinearForm)

    def __post_init__(self):
        object.__setattr__(self, "prefactor", as_param(self.prefactor))
        object.__setattr__(self, "numer", tuple(LinearForm.of(x) for x in self.numer))
        object.__setattr__(self, "denom", tuple(LinearForm.of(x) for x in self.denom))
        object.__setattr__(self, "exp2", LinearForm.of(self.exp2))

    @classmethod
    def build(cls, prefactor=ONE, numer=(), denom=(), exp2=None) -> "GammaProduct":
        """Construct and normalise."""
        return gamma_normalize(cls(prefactor, tuple(numer), tuple(denom),
                                   exp2 if exp2 is not None else LinearForm()))

    @classmethod
    def rational(cls, r) -> "GammaProduct":
        return cls(as_param(r))

    # -- algebra -----------------------------------------------------------
    def __mul__(self, other):
        if not isinstance(other, GammaProduct):
            try:
                other = GammaProduct.rational(other)
            except TypeError:
                return NotImplemented
        return GammaProduct.build(self.prefactor * other.prefactor,
                                  self.numer + other.numer,
                                  self.denom + other.denom,
                                  self.exp2 + other.exp2)

    __rmul__ = __mul__

    def inverse(self) -> "GammaProduct":
        if self.prefactor.is_zero():
            raise ZeroDivisionError("inverse of a zero GammaProduct")
        return GammaProduct.build(ONE / self.prefactor, self.denom, self.numer, -self.exp2)

    def __truediv__(self, other):
        if not isinstance(other, GammaProduct):
            other = GammaProduct.rational(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GammaProduct.rational(other) * self.inverse()

    def __neg__(self):
        return GammaProduct(-self.prefactor, self.numer, self.denom, self.exp2)

    def __eq__(self, other):
        if not isinstance(other, GammaProduct):
            try:
                other = GammaProduct.rational(other)
            except TypeError:
                return NotImplemented
        return gamma_equal(self, other)

    def __hash__(self):
        g = gamma_normalize(self)
        return hash((g.prefactor, g.numer, g.denom, g.exp2))

    # -- queries -------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.prefactor.is_zero()

    def is_rational(self) -> bool:
        g = gamma_normalize(self)
        return not g.numer and not g.denom and g.exp2 == LinearForm()

    def as_rational(self) -> ParamRational:
        g = gamma_normalize(self)
        if g.numer or g.denom or g.exp2 != LinearForm():
            raise NotRationalError(f"{g} is not a rational function of (a, k)")
        return g.prefactor

    def subs(self, a=None, k=None) -> "GammaProduct":
        """Exact substitution of rational parameter values."""
        return GammaProduct.build(self.prefactor.subs(a=a, k=k),
                                  [L.subs(a, k) for L in self.numer],
                                  [L.subs(a, k) for L in self.denom],
                                  self.exp2.subs(a, k))

    def __str__(self):
        g = gamma_normalize(self)
        if g.is_rational():
            return str(g.prefactor)
        parts = [f"({g.prefactor})"]
        if g.exp2 != LinearForm():
            parts.append(f"2^({g.exp2})")
        parts += [f"G({L})" for L in g.numer]
        s = "*".join(parts)
        if g.denom:
            s += "/(" + "*".join(f"G({L})" for L in g.denom) + ")"
        return s

    def __repr__(self):
        return f"GammaProduct({self})"


def gamma_normalize(g: GammaProduct) -> GammaProduct:
    """Fold integer shifts into the prefactor and cancel across numerator/denominator."""
    pref = g.prefactor
    if pref.is_zero():
        return GammaProduct(ZERO)
    net: Counter = Counter()
    for sign, args in ((1, g.numer), (-1, g.denom)):
        for L in args:
            if L.is_constant():
                c = L.c0
                if c.denominator == 1:
                    if c <= 0:
                        raise GammaPoleError(f"Gamma({c}) is a pole")
                    f = factorial(int(c) - 1)
                    pref = pref * f if sign > 0 else pref / f
                    continue
            base, s = _base_and_shift(L)
            if s > 0:
                poch = pochhammer(base, s)
                pref = pref * poch if sign > 0 else pref / poch
            elif s < 0:
                poch = pochhammer(base + s, -s)
                pref = pref / poch if sign > 0 else pref * poch
            net[base] += sign
    numer = tuple(sorted(L for L, e in net.items() for _ in range(max(e, 0))))
    denom = tuple(sorted(L for L, e in net.items() for _ in range(max(-e, 0))))
    e2 = g.exp2
    whole = floor(e2.c0)
    if whole:
        pref = pref * (Fraction(2) ** whole)
        e2 = LinearForm(e2.c0 - whole, e2.ca, e2.ck)
    return GammaProduct(pref, numer, denom, e2)


def gamma_equal(g1: GammaProduct, g2: GammaProduct) -> bool:
    n1, n2 = gamma_normalize(g1), gamma_normalize(g2)
    return (n1.prefactor == n2.prefactor and n1.numer == n2.numer
            and n1.denom == n2.denom and n1.exp2 == n2.exp2)


def substitute(v, a_val, k_val):
    """Floating evaluation of a ParamRational or GammaProduct at (a, k).

    Raises ParameterDegeneracyError at a pole of a denominator or of Gamma.
    """
    if isinstance(v, GammaProduct):
        g = gamma_normalize(v)
        if g.prefactor.is_zero():
            return 0.0
        pref = substitute(g.prefactor, a_val, k_val)
        logs = 0j
        for L in g.numer:
            z = complex(L(a_val, k_val))
            try:
                logs += log_gamma(z)
            except GammaPoleError:
                raise ParameterDegeneracyError(f"Gamma({L}) has a pole at a={a_val}, k={k_val}")
        for L in g.denom:
            z = complex(L(a_val, k_val))
            try:
                logs -= log_gamma(z)
            except GammaPoleError:
                # 1/Gamma at a pole is an exact zero
                return 0.0
        val = pref * cmath.exp(logs)
        if g.exp2 != LinearForm():
            val *= pow2(complex(g.exp2(a_val, k_val)))
        return _realify(val)
    v = as_param(v)
    return _realify(v(a_val, k_val))


def _realify(z):
    z = complex(z)
    if z.imag == 0 or abs(z.imag) <= 1e-15 * max(1.0, abs(z.real)):
        return z.real
    return z
