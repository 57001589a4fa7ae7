import cmath
import math

import mpmath
import numpy as np
import pytest
from scipy.special import roots_jacobi

from qdeform.errors import DomainError, PoleError
from qdeform.specfun import (gamma, gamma_ratio, hyp2f1, hyp2f1_regularized, jacobi_p,
                             legendre_p, loggamma)


def test_gamma_classical_values():
    assert gamma(5) == pytest.approx(24.0, rel=1e-13)
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-13)


def test_gamma_reflection():
    z = 0.3 + 0.2j
    assert gamma(z) * gamma(1 - z) == pytest.approx(math.pi / cmath.sin(math.pi * z), rel=1e-12)


@pytest.mark.parametrize("z", [0.1, 2.5, 17.3, 49.0, -3.5, 1 + 7j, -4.2 + 0.5j, 30 - 20j])
def test_gamma_against_mpmath(z):
    assert complex(gamma(z)) == pytest.approx(complex(mpmath.gamma(z)), rel=1e-12)


def test_loggamma_large_argument():
    z = 200.0 + 3j
    assert complex(loggamma(z)) == pytest.approx(complex(mpmath.loggamma(z)), rel=1e-13)


def test_gamma_poles():
    for n in (0, -1, -7):
        with pytest.raises(PoleError):
            gamma(n)


def test_gamma_ratio_matches_quotient():
    assert gamma_ratio([3.5, 1.2], [2.0]) == pytest.approx(gamma(3.5) * gamma(1.2) / gamma(2.0),
                                                           rel=1e-13)


def test_hyp2f1_identities():
    a, b, z = 0.7, 2.3, 0.4
    assert hyp2f1(a, b, b, z) == pytest.approx((1 - z) ** (-a), rel=1e-12)
    assert hyp2f1(1.3, -0.4 + 1j, 2.2 - 0.5j, 0) == 1
    assert hyp2f1(1, 1, 2, 0.5) == pytest.approx(-math.log(0.5) / 0.5, rel=1e-12)


CASES = [
    (0.5, 1.5, 2.5, 0.3), (1.2, -0.7, 3.1, 0.55), (2.5, 3.5, 1.5, -0.8), (0.3, 0.4, 2.0, 0.95),
    (1 + 1j, 2 - 0.5j, 3.3 + 0.2j, 0.6), (-3, 4.5, 1.5, 0.99), (0.25, 0.75, 1.5, 0.5),
    (3.0, 2.5, 7.2, 0.8 + 0.3j), (4.7, -2.2, 0.6, -3.0), (0.2, 1.1, 1.8, 0.999),
]


@pytest.mark.parametrize("a,b,c,z", CASES)
def test_hyp2f1_against_mpmath(a, b, c, z):
    assert complex(hyp2f1(a, b, c, z)) == pytest.approx(complex(mpmath.hyp2f1(a, b, c, z)),
                                                        rel=1e-10, abs=1e-13)


def test_hyp2f1_regularized_at_nonpositive_c():
    # F(a, b; -m; z)/Gamma(-m) = (a)_{m+1} (b)_{m+1} z^{m+1}/(m+1)! F(a+m+1, b+m+1; m+2; z)
    a, b, m, z = 1.5, 2.5, 2, 0.3
    got = hyp2f1_regularized(a, b, -m, z)
    want = (mpmath.rf(a, m + 1) * mpmath.rf(b, m + 1) * z ** (m + 1) / mpmath.factorial(m + 1)
            * mpmath.hyp2f1(a + m + 1, b + m + 1, m + 2, z))
    assert complex(got) == pytest.approx(complex(want), rel=1e-10)


def test_hyp2f1_contiguous_relation():
    # (c - a) F(a-1) + (2a - c + (b - a) z) F(a) + a (z - 1) F(a+1) = 0
    rng = np.random.default_rng(7)
    for _ in range(40):
        a, b = rng.uniform(-2, 3, 2)
        c = rng.uniform(0.5, 4)
        z = rng.uniform(-0.6, 0.6)
        r = ((c - a) * hyp2f1(a - 1, b, c, z) + (2 * a - c + (b - a) * z) * hyp2f1(a, b, c, z)
             + a * (z - 1) * hyp2f1(a + 1, b, c, z))
        assert abs(r) < 1e-10


def test_hyp2f1_out_of_domain():
    with pytest.raises(DomainError):
        hyp2f1(0.5, 0.5, 1.0, 2.0)


def test_legendre_simple_values():
    assert legendre_p(0, 0, 0.3) == pytest.approx(1.0, abs=1e-15)
    assert legendre_p(1, 0, -0.6) == pytest.approx(-0.6, abs=1e-15)


def test_legendre_against_partial_sums():
    # P_{3/2}^{-1/2}(0) = ((1-z)/(1+z))^{1/4} F(-3/2, 5/2; 3/2; (1-z)/2) / Gamma(3/2)
    t = 0.5
    total, term = 0.0, 1.0
    for k in range(200):
        total += term
        term *= (-1.5 + k) * (2.5 + k) / ((1.5 + k) * (k + 1)) * t
    want = total / math.gamma(1.5)
    assert legendre_p(1.5, -0.5, 0.0) == pytest.approx(want, rel=1e-14)


@pytest.mark.parametrize("nu,mu,z", [(2.3, 0.4, 0.2), (3.7, -1.5, -0.7), (0.6, 0.0, 0.9),
                                     (5.5, 2.5, 0.1)])
def test_legendre_against_mpmath(nu, mu, z):
    want = float(mpmath.legenp(nu, mu, z, type=2))
    assert legendre_p(nu, mu, z) == pytest.approx(want, rel=1e-10)


def test_legendre_endpoint_rules():
    assert legendre_p(2.5, -1.0, 1.0) == 0.0
    with pytest.raises(DomainError):
        legendre_p(2.5, 1.0, 1.0)


def test_jacobi_low_degrees():
    assert jacobi_p(0, 0.3 + 1j, -0.2, 0.7) == 1
    a, b, x = 1.0, 2.0, 0.5
    assert jacobi_p(1, a, b, x) == pytest.approx((a + 1) + (a + b + 2) * (x - 1) / 2, rel=1e-15)
    x = 0.4
    assert jacobi_p(3, 0, 0, x) == pytest.approx((5 * x ** 3 - 3 * x) / 2, rel=1e-14)


@pytest.mark.parametrize("n,a,b,x", [(4, 0.5, 1.5, 0.3), (7, -0.4, 2.2, -0.8),
                                     (3, 1 + 2j, 1 - 2j, 0.5j), (5, 2.0, 3.0, 1.7)])
def test_jacobi_against_mpmath(n, a, b, x):
    assert complex(jacobi_p(n, a, b, x)) == pytest.approx(complex(mpmath.jacobi(n, a, b, x)),
                                                          rel=1e-12)


def test_jacobi_orthogonality():
    a, b = 0.5, 1.5
    x, w = roots_jacobi(20, a, b)
    P = np.array([[complex(jacobi_p(n, a, b, t)).real for t in x] for n in range(7)])
    G = (P * w) @ P.T
    off = G - np.diag(np.diag(G))
    assert np.max(np.abs(off)) < 1e-8


def test_terminating_series_matches_jacobi():
    # P_n^{(a,b)}(x) = (a+1)_n / n! F(-n, n+a+b+1; a+1; (1-x)/2)
    n, a, b, x = 5, 0.8, 1.3, -0.35
    poch = math.prod(a + 1 + k for k in range(n)) / math.factorial(n)
    assert poch * hyp2f1(-n, n + a + b + 1, a + 1, (1 - x) / 2) == pytest.approx(
        complex(jacobi_p(n, a, b, x)).real, rel=1e-12)


def test_legendre_jacobi_specialization():
    for l in range(6):
        for m in range(l + 1):
            for x in (-0.5, 0.2, 0.75):
                jac = ((1 - x * x) ** (m / 2) / 2 ** m * math.factorial(l - m)
                       / math.factorial(l) * complex(jacobi_p(l - m, m, m, x)).real)
                assert legendre_p(l, -m, x) == pytest.approx(jac, abs=1e-10)
