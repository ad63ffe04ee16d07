import json

import pytest
import sympy as sp

from conftest import a_sym, to_sympy
from mvbessel.bessel import bessel_polynomial
from mvbessel.field import A, K, ONE, LinearForm, ParamRational
from mvbessel.gammaprod import GammaProduct, gamma_equal
from mvbessel.jack import jack_norm_closed
from mvbessel.ortho import (
    VerificationReport,
    bridge_factor,
    f2_closed,
    f2_laguerre_chain,
    integral_equality_check,
    kadell_closed,
    laguerre_closed,
    moment_consistency,
    moment_ratio,
    moment_table,
    norm_constant,
    normfactor_rhs,
    pairing_rationality,
    shift_identity_check,
    torus_moment,
    verify_theorem,
    w_pairing,
    weight_coefficient,
)
from mvbessel.partitions import Partition, enumerate_partitions
from mvbessel.sympoly import SymmetricPolynomial
from test_bessel import krall_frink

G = lambda *args: [LinearForm(*t) for t in args]  # noqa: E731


def M1(m):
    """One-variable moment (-2)^{m+1}/[a]_m."""
    return (-2) ** (m + 1) / sp.rf(a_sym, m)


def pairing_oracle(m1, m2):
    c1 = krall_frink(m1)
    c2 = krall_frink(m2)
    y1 = [c / c1[m1] for c in c1]
    y2 = [c / c2[m2] for c in c2]
    return sp.simplify(sum(u * v * M1(i + j) for i, u in enumerate(y1) for j, v in enumerate(y2)))


# -- closed forms ----------------------------------------------------------------------

def test_weight_coefficient_examples():
    for m in range(5):
        ref = GammaProduct.build(ONE, G((0, 1, 0)), G((m - 1, 1, 0)))
        assert weight_coefficient((m,), 1) == ref
    assert weight_coefficient((), 1).as_rational() == A - 1


def test_torus_moment_examples():
    for m in range(6):
        assert sp.simplify(to_sympy(torus_moment((m,), 1).as_rational()) - M1(m)) == 0
    assert torus_moment((), 1).as_rational() == -2
    ref = GammaProduct.build(ParamRational(4), G((0, 0, 2), (0, 0, 2)), G((0, 0, 1), (0, 0, 1)))
    assert torus_moment((), 2) == ref
    assert gamma_equal(torus_moment((2,), 1), GammaProduct.rational(-8 / (A * (A + 1))))


@pytest.mark.parametrize("n,w", [(1, 5), (2, 5), (3, 5)])
def test_moment_consistency(n, w):
    for nu in enumerate_partitions(w, n):
        r = moment_consistency(nu, n)
        assert r.passed, r.case
        # same identity assembled here from its pieces
        shifted = nu.add_column(n)
        rhs = (weight_coefficient(shifted, n) * jack_norm_closed(shifted, n)
               * GammaProduct.rational(ParamRational(-2) ** (nu.weight + n)))
        assert torus_moment(nu, n) == rhs


@pytest.mark.parametrize("n", [1, 2, 3])
def test_moment_table_is_rational(n):
    T = moment_table(n)
    for nu in enumerate_partitions(4, n):
        assert T.entry(nu) == T.g0 * GammaProduct.rational(T.ratio(nu))
        assert moment_ratio(nu, n) == T.ratio(nu)


# -- pairings -------------------------------------------------------------------------

def test_pairing_examples():
    one = SymmetricPolynomial.one(1)
    Y1 = bessel_polynomial((1,), 1).monomial_form
    assert w_pairing(one, one, 1).as_rational() == -2
    assert w_pairing(Y1, one, 1).is_zero()
    assert w_pairing(Y1, Y1, 1).as_rational() == 8 / (A**2 * (A + 1))


@pytest.mark.parametrize("m1,m2", [(i, j) for i in range(5) for j in range(i, 5)])
def test_one_variable_pairings_against_moment_oracle(m1, m2):
    f = bessel_polynomial((m1,), 1).monomial_form
    g = bessel_polynomial((m2,), 1).monomial_form
    got = to_sympy(w_pairing(f, g, 1).as_rational())
    assert sp.simplify(got - pairing_oracle(m1, m2)) == 0
    if m1 == m2:
        assert w_pairing(f, f, 1).as_rational() == normfactor_rhs((m1,), 1)


def test_pairing_dimension_mismatch():
    with pytest.raises(ValueError):
        w_pairing(SymmetricPolynomial.one(1), SymmetricPolynomial.one(1), 2)


def test_normfactor_examples():
    assert normfactor_rhs((1,), 1) == 8 / (A**2 * (A + 1))
    assert normfactor_rhs((), 1) == -2
    assert normfactor_rhs((), 2) == 4


def test_norm_constant():
    assert norm_constant(1) == GammaProduct.rational(1)
    assert norm_constant(2) == GammaProduct.build(ONE, G((0, 0, 2), (0, 0, 2)), G((0, 0, 1), (0, 0, 1)))
    # at k = 2: (Gamma(4)/Gamma(2))^2 = 36
    assert norm_constant(2).subs(k=2).as_rational() == 36


# -- theorem battery --------------------------------------------------------------------

@pytest.mark.parametrize("n,w", [(1, 6), (2, 3), (3, 2)])
def test_verify_theorem(n, w):
    reps = verify_theorem(n, w)
    assert reps and all(r.passed for r in reps)
    parts = enumerate_partitions(w, n)
    off = [r for r in reps if r.tag == "orthogonality-relation"]
    diag = [r for r in reps if r.tag == "norm-factor-formula"]
    assert len(off) == len(parts) * (len(parts) - 1) // 2 and len(diag) == len(parts)
    # the lambda-independent ratio is the constant predicted from the moments
    assert all(r.lhs == str(norm_constant(n)) for r in diag)


def test_verify_theorem_specialised():
    reps = verify_theorem(2, 2, a=7, k=2)
    assert all(r.passed for r in reps)
    diag = [r for r in reps if r.tag == "norm-factor-formula"]
    assert diag[0].lhs == "36"


def test_report_json_is_stable():
    r = verify_theorem(1, 1)[0]
    assert isinstance(r, VerificationReport)
    d = r.to_json()
    assert "ms" not in d and d["status"] == "pass"
    assert "ms" in r.to_json(timings=True)
    json.dumps(d)


@pytest.mark.parametrize("n,w", [(1, 4), (2, 3)])
def test_pairing_rationality(n, w):
    parts = enumerate_partitions(w, n)
    for i, lam in enumerate(parts):
        for mu in parts[i:]:
            assert pairing_rationality(lam, mu, n).passed


@pytest.mark.parametrize("n", [1, 2, 3])
def test_shift_identity(n):
    for nu in enumerate_partitions(3, n):
        assert shift_identity_check(nu, n)


# -- half-line forms ----------------------------------------------------------------

def test_f2_examples():
    for m in range(4):
        ref = GammaProduct.build(ONE, G((1 - m, -1, 0)), (), LinearForm(m - 1, 1, 0))
        assert f2_closed((m,), 1) == ref


@pytest.mark.parametrize("m", range(6))
def test_integral_equality_one_variable(m):
    assert integral_equality_check((m,), 1).passed


@pytest.mark.parametrize("n", [2, 3])
def test_integral_equality_ratio_is_norm_constant(n):
    for nu in enumerate_partitions(3, n):
        r = integral_equality_check(nu, n)
        assert not r.passed
        ratio = torus_moment(nu, n) / (bridge_factor(n) * f2_closed(nu, n))
        assert ratio == norm_constant(n)


def test_reciprocal_single_variable_factor_closes_the_bridge():
    """Replacing Gamma(k i)/Gamma(k) by its reciprocal in the bridge makes it exact."""
    for n in (2, 3):
        for nu in enumerate_partitions(3, n):
            assert torus_moment(nu, n) == bridge_factor(n) * norm_constant(n) * f2_closed(nu, n)


def test_kadell_and_laguerre_examples():
    al, be = LinearForm(0, 1, 0), LinearForm(0, 0, 1)  # symbolic slots
    for m in range(4):
        ref = GammaProduct.build(ONE, [al + m, be], [al + be + m])
        assert kadell_closed((m,), 1, al, be) == ref
        assert laguerre_closed((m,), 1, al) == GammaProduct.build(ONE, [al + m])
    assert kadell_closed((), 1, 1, 1).as_rational() == 1
    assert laguerre_closed((), 1, 1).as_rational() == 1
    # n = 2, k symbolic, nu empty: Gamma(2k)/Gamma(k) Gamma(alpha + k) Gamma(alpha)
    al2 = LinearForm(2, 0, 0)
    ref = GammaProduct.build(ONE, G((0, 0, 2), (2, 0, 1), (2, 0, 0)), G((0, 0, 1)))
    assert laguerre_closed((), 2, al2) == ref
    assert laguerre_closed((), 2, al2).subs(k=1).as_rational() == 2


@pytest.mark.parametrize("n,w", [(1, 3), (2, 3)])
def test_f2_laguerre_chain(n, w):
    for nu in enumerate_partitions(w, n):
        assert f2_laguerre_chain(nu, n).passed
        N = (nu[0] if nu else 0) + 1
        assert f2_laguerre_chain(nu, n, N).passed
