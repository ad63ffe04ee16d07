"""Exact and numeric verification of multivariable Bessel polynomial orthogonality."""

from .bessel import BesselPolynomial, bessel_at_zero, bessel_polynomial, pole_certificate
from .field import LinearForm, ParamPolynomial, ParamRational
from .gammaprod import GammaProduct
from .jack import jack_eigenvalue, jack_norm_closed, jack_polynomial
from .ortho import VerificationReport, moment_table, verify_theorem, w_pairing
from .partitions import Partition, enumerate_partitions
from .sympoly import SymmetricPolynomial, apply_D, apply_DB, monomial

__version__ = "0.1.0"

__all__ = [
    "BesselPolynomial",
    "GammaProduct",
    "LinearForm",
    "ParamPolynomial",
    "ParamRational",
    "Partition",
    "SymmetricPolynomial",
    "VerificationReport",
    "apply_D",
    "apply_DB",
    "bessel_at_zero",
    "bessel_polynomial",
    "enumerate_partitions",
    "jack_eigenvalue",
    "jack_norm_closed",
    "jack_polynomial",
    "moment_table",
    "monomial",
    "pole_certificate",
    "verify_theorem",
    "w_pairing",
]
