from fractions import Fraction

import pytest
import sympy as sp

from conftest import k_sym, to_sympy
from mvbessel.field import K, ONE
from mvbessel.gammaprod import GammaProduct
from mvbessel.jack import (
    DegeneracyError,
    JackExpansion,
    from_jack_basis,
    integral_form_integrality,
    inverse_kappa_coefficients,
    jack_at_ones_closed,
    jack_eigenvalue,
    jack_integral_form,
    jack_norm_closed,
    jack_polynomial,
    reciprocal_complement_check,
    to_jack_basis,
    torus_pairing_integer_kappa,
)
from mvbessel.partitions import Partition, enumerate_partitions
from mvbessel.sympoly import SymmetricPolynomial, apply_D, monomial
from test_sympoly import D_oracle, as_expr, same, xs


def schur(lam, n):
    """Bialternant a_{lam+delta}/a_delta."""
    x = xs(n)
    p = Partition(lam).padded(n)
    num = sp.Matrix(n, n, lambda i, j: x[j] ** (p[i] + n - 1 - i))
    den = sp.Matrix(n, n, lambda i, j: x[j] ** (n - 1 - i))
    return sp.cancel(num.det() / den.det())


def brute_torus_pairing(f, g, kappa):
    """(1/n!) CT of f(x) g(1/x) prod_{i != j} (1 - x_i/x_j)^kappa by sympy expansion."""
    n = f.n
    x = xs(n)
    gx = as_expr(g).subs({xi: 1 / xi for xi in x}, simultaneous=True)
    w = sp.Mul(*[(1 - x[i] / x[j]) ** kappa for i in range(n) for j in range(n) if i != j])
    e = sp.expand(as_expr(f) * gx * w)
    return sp.Rational(sum(t for t in e.as_ordered_terms() if not t.free_symbols)) / sp.factorial(n)


def test_examples():
    assert jack_polynomial((1, 1), 2) == monomial((1, 1), 2)
    assert jack_polynomial((2,), 2) == monomial((2,), 2) + monomial((1, 1), 2).scale(2 * K / (K + 1))
    for m in range(5):
        assert jack_polynomial((m,), 1) == monomial((m,), 1)


@pytest.mark.parametrize("n,w", [(1, 4), (2, 4), (3, 4)])
def test_schur_at_kappa_one(n, w):
    for lam in enumerate_partitions(w, n):
        assert same(as_expr(jack_polynomial(lam, n, 1)), schur(lam, n)), lam


@pytest.mark.parametrize("n,w", [(2, 4), (3, 3)])
def test_eigen_residual_against_operator_oracle(n, w):
    for lam in enumerate_partitions(w, n):
        P = jack_polynomial(lam, n)
        ev = to_sympy(jack_eigenvalue(lam, n))
        assert same(D_oracle(as_expr(P), n), ev * as_expr(P)), lam
        assert apply_D(P) == P.scale(jack_eigenvalue(lam, n))


def test_specialised_matches_symbolic():
    for lam in enumerate_partitions(4, 3):
        assert jack_polynomial(lam, 3, Fraction(3, 2)) == jack_polynomial(lam, 3).subs(k=Fraction(3, 2))


def test_degeneracy_is_reported():
    with pytest.raises(DegeneracyError):
        jack_polynomial((2,), 2, -1)


def test_jack_basis_examples():
    P2 = jack_polynomial((2,), 2)
    assert to_jack_basis(P2).coeffs == {Partition((2,)): ONE}
    assert to_jack_basis(monomial((1, 1), 2)).coeffs == {Partition((1, 1)): ONE}
    e = to_jack_basis(monomial((2,), 2))
    assert e.coeffs == {Partition((2,)): ONE, Partition((1, 1)): -2 * K / (K + 1)}


def test_jack_basis_round_trip():
    f = monomial((2, 1), 3) + monomial((1, 1, 1), 3).scale(K) + SymmetricPolynomial.one(3)
    assert from_jack_basis(to_jack_basis(f)) == f
    assert isinstance(to_jack_basis(f), JackExpansion)


def test_norm_closed_examples():
    for lam in [(), (1,), (5,)]:
        assert jack_norm_closed(lam, 1) == GammaProduct.rational(1)
    # n = 2, empty: Gamma(2k) Gamma(1) / (Gamma(k) Gamma(k+1))
    from mvbessel.field import LinearForm
    ref = GammaProduct.build(ONE, [LinearForm(0, 0, 2), LinearForm(1, 0, 0)],
                             [LinearForm(0, 0, 1), LinearForm(1, 0, 1)])
    assert jack_norm_closed((), 2) == ref


@pytest.mark.parametrize("kappa", [1, 2])
def test_torus_pairing_against_brute_force(kappa):
    n = 2
    parts = enumerate_partitions(2, n)
    for i, lam in enumerate(parts):
        for mu in parts[i:]:
            P, Q = jack_polynomial(lam, n, kappa), jack_polynomial(mu, n, kappa)
            got = torus_pairing_integer_kappa(P, Q, kappa)
            assert got == brute_torus_pairing(P, Q, kappa)
            if lam == mu:
                ref = jack_norm_closed(lam, n).subs(k=kappa).as_rational().to_fraction()
                assert got == ref
            else:
                assert got == 0


def test_torus_pairing_rejects_bad_input():
    from mvbessel.field import A
    P = jack_polynomial((1,), 2)
    with pytest.raises(ValueError):
        torus_pairing_integer_kappa(P.scale(A), P, 1)
    with pytest.raises(ValueError):
        torus_pairing_integer_kappa(P, P, Fraction(1, 2))


def test_integral_form_and_value_at_ones():
    J, h = jack_integral_form((), 3)
    assert J == SymmetricPolynomial.one(3) and h == ONE
    for lam in enumerate_partitions(4, 3):
        J, _ = jack_integral_form(lam, 3)
        at_ones = sum((c * len(set(__import__("itertools").permutations(mu.padded(3))))
                       for mu, c in J.coeffs.items()), start=0 * ONE)
        assert at_ones == jack_at_ones_closed(lam, 3), lam


def test_integral_form_examples():
    # J_(1^m) = m! e_m in this normalisation
    J, _ = jack_integral_form((1, 1), 2)
    assert J == monomial((1, 1), 2).scale(2)
    J, _ = jack_integral_form((2,), 2)
    # (1 + 1/k) m_2 + 2 m_11, i.e. (1 + alpha) m_2 + 2 m_11 with alpha = 1/k
    assert J == monomial((2,), 2).scale(1 + 1 / K) + monomial((1, 1), 2).scale(2)


def test_inverse_kappa_coefficients():
    assert inverse_kappa_coefficients(1 + 2 / K + 3 / K**2) == [1, 2, 3]
    assert inverse_kappa_coefficients(1 / (K + 1)) is None


@pytest.mark.parametrize("n", [1, 2, 3])
def test_integrality(n):
    for lam in enumerate_partitions(4, n):
        ok, _ = integral_form_integrality(lam, n)
        assert ok, lam


@pytest.mark.parametrize("nu,N,n", [((), 1, 2), ((1,), 1, 2), ((2,), 2, 2), ((2, 1), 3, 2), ((2, 1), 2, 3)])
def test_reciprocal_complement(nu, N, n):
    assert reciprocal_complement_check(nu, N, n)


def test_reciprocal_complement_sympy_oracle():
    # (y1 y2)^2 P_(1)(1/y) = y1 y2 (y1 + y2) = P_(2,1) in two variables
    y = xs(2)
    P1 = as_expr(jack_polynomial((1,), 2))
    flipped = sp.expand((y[0] * y[1]) ** 2 * P1.subs({y[0]: 1 / y[0], y[1]: 1 / y[1]}, simultaneous=True))
    assert same(flipped, as_expr(jack_polynomial((2, 1), 2)))
