"""Numeric Gamma function used to evaluate symbolic Gamma products."""

from __future__ import annotations

import cmath
import math

import numpy as np
from scipy import special as _sp


class GammaPoleError(ValueError):
    """Gamma evaluated at a non-positive integer."""


def _is_pole(z: complex, tol: float = 1e-12) -> bool:
    z = complex(z)
    if abs(z.imag) > tol or z.real > 0.5:
        return False
    return abs(z.real - round(z.real)) <= tol


def gamma_eval(z) -> complex | float:
    """Gamma(z) for real or complex z (scipy backend; reflection handled there)."""
    if _is_pole(z):
        raise GammaPoleError(f"Gamma has a pole at {z}")
    if isinstance(z, complex) and z.imag != 0:
        return complex(_sp.gamma(z))
    return float(_sp.gamma(float(np.real(z))))


def log_gamma(z) -> complex:
    """Principal branch of log Gamma(z); exp(log_gamma(z)) == Gamma(z)."""
    if _is_pole(z):
        raise GammaPoleError(f"Gamma has a pole at {z}")
    return complex(_sp.loggamma(complex(z)))


def gamma_ratio(num_args, den_args) -> complex:
    """prod Gamma(num) / prod Gamma(den) evaluated in log space."""
    s = sum(log_gamma(z) for z in num_args) - sum(log_gamma(z) for z in den_args)
    return cmath.exp(s)


def pow2(x) -> complex | float:
    if isinstance(x, complex):
        return cmath.exp(x * math.log(2.0))
    return 2.0 ** float(x)
