"""Special functions: Gamma, Gauss 2F1, associated Legendre and Jacobi functions.

Everything works on Python complex numbers. The 2F1 evaluator combines

* terminating sums (a, b, c-a or c-b a non-positive integer, via Euler's transformation),
* the Gauss power series for |z| <= 0.75,
* the 1-z linear transformation for real z close to 1,
* Taylor-series continuation of the hypergeometric ODE along the ray from the
  origin for every other z off the cut [1, inf).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numba

from .errors import DomainError, PoleError

# Lanczos approximation, g = 7, n = 9 (the coefficient set popularised by
# Numerical Recipes / Godfrey); relative accuracy ~1e-15 on the right half plane.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

_SERIES_RADIUS = 0.75
_SERIES_MAX_TERMS = 20000
_INT_TOL = 1e-12


def _nonpositive_int(z) -> int | None:
    """Return -n if z equals a non-positive integer -n (to rounding), else None."""
    z = complex(z)
    if abs(z.imag) > _INT_TOL * max(1.0, abs(z.real)):
        return None
    r = round(z.real)
    if r <= 0 and abs(z.real - r) <= _INT_TOL * max(1.0, abs(r)):
        return int(r)
    return None


def _lanczos_log(z: complex) -> complex:
    # log Gamma(z) for Re z >= 1/2
    z = z - 1.0
    acc = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def loggamma(z) -> complex:
    """log Gamma(z) for complex z; the imaginary part is defined only modulo 2*pi."""
    z = complex(z)
    n = _nonpositive_int(z)
    if n is not None:
        raise PoleError(f"Gamma has a pole at {n}", where=n)
    if z.real < 0.5:
        return math.log(math.pi) - cmath.log(cmath.sin(math.pi * z)) - _lanczos_log(1.0 - z)
    return _lanczos_log(z)


def gamma(z) -> complex:
    """Gamma(z) for complex z off the non-positive integers."""
    z = complex(z)
    n = _nonpositive_int(z)
    if n is not None:
        raise PoleError(f"Gamma has a pole at {n}", where=n)
    if z.imag == 0.0 and z.real == round(z.real) and 0 < z.real <= 171:
        return complex(math.factorial(int(z.real) - 1))
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * gamma(1.0 - z))
    return cmath.exp(_lanczos_log(z))


def rgamma(z) -> complex:
    """1/Gamma(z); entire, so the poles of Gamma map to zeros."""
    if _nonpositive_int(z) is not None:
        return 0j
    return 1.0 / gamma(z)


def gamma_ratio(num, den) -> complex:
    """prod Gamma(num) / prod Gamma(den), via log Gamma to avoid overflow.

    A pole in the numerator raises PoleError; a pole in the denominator gives 0.
    """
    for d in den:
        if _nonpositive_int(d) is not None:
            for a in num:
                if _nonpositive_int(a) is not None:
                    raise PoleError("indeterminate Gamma ratio", where=a)
            return 0j
    s = sum(loggamma(a) for a in num) - sum(loggamma(d) for d in den)
    return cmath.exp(s)


def pochhammer(a, n: int) -> complex:
    out = 1 + 0j
    for k in range(n):
        out *= a + k
    return out


@dataclass(frozen=True)
class HypergeometricArgs:
    a: complex
    b: complex
    c: complex
    z: complex


@dataclass(frozen=True)
class LegendreArgs:
    degree: float
    order: float
    z: float


@dataclass(frozen=True)
class JacobiArgs:
    n: int
    alpha: complex
    beta: complex
    x: complex


def _terminating(a, b, c, z, n: int) -> complex:
    # sum_{k=0}^{n} (a)_k (b)_k / ((c)_k k!) z^k where a = -n
    term = 1 + 0j
    acc = 1 + 0j
    for k in range(n):
        den = (c + k) * (k + 1)
        if den == 0:
            raise PoleError("2F1 denominator parameter hits a pole before termination", where=c)
        term *= (a + k) * (b + k) / den * z
        acc += term
    return acc


def _series(a, b, c, z) -> complex:
    term = 1 + 0j
    acc = 1 + 0j
    small = 0
    for k in range(_SERIES_MAX_TERMS):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        acc += term
        if abs(term) <= 1e-17 * abs(acc):
            small += 1
            if small >= 3:
                return acc
        else:
            small = 0
    raise DomainError(f"2F1 power series did not converge at z = {z}")


def _series_with_derivative(a, b, c, z) -> tuple[complex, complex]:
    f = _series(a, b, c, z)
    df = a * b / c * _series(a + 1, b + 1, c + 1, z)
    return f, df


@numba.njit(cache=True)
def _taylor_step(f, df, z0, t, ab, apb1, c):
    # Taylor coefficients of F around z0 from the hypergeometric ODE, summed at z0 + t
    p0 = z0 * (1 - z0)
    p1 = 1 - 2 * z0
    q0 = c - apb1 * z0
    fm, fn = f, df
    val = fm + fn * t
    der = fn
    tp = t
    small = 0
    big_v = max(abs(fm), abs(fn * t))
    big_d = abs(fn)
    for n in range(600):
        fnext = -((p1 * n * (n + 1) + q0 * (n + 1)) * fn
                  + (-n * (n - 1) - apb1 * n - ab) * fm) / (p0 * (n + 1) * (n + 2))
        der += (n + 2) * fnext * tp
        tp = tp * t
        inc = fnext * tp
        val += inc
        fm, fn = fn, fnext
        big_v = max(big_v, abs(inc))
        big_d = max(big_d, abs((n + 2) * inc / t))
        # measured against the largest term so that a cancelling sum still terminates
        if abs(inc) <= 1e-17 * max(abs(val), big_v) and abs((n + 2) * inc) <= 1e-17 * abs(t) * max(abs(der), big_d):
            small += 1
            if small >= 3:
                return val, der, True
        else:
            small = 0
    return val, der, False


def _continue(a, b, c, z) -> complex:
    """Analytic continuation of 2F1 along the ray from the origin by Taylor steps."""
    r = abs(z)
    z0 = z * (0.5 / r)
    f, df = _series_with_derivative(a, b, c, z0)
    ab = a * b
    apb1 = a + b + 1
    steps = 0
    while z0 != z:
        rad = min(abs(z0), abs(1 - z0))
        remaining = z - z0
        if abs(remaining) <= 0.4 * rad:
            t = remaining
        else:
            t = remaining * (0.4 * rad / abs(remaining))
        for _ in range(12):
            # large parameters make the Taylor terms grow fast; shorten the step until it converges
            val, der, ok = _taylor_step(complex(f), complex(df), complex(z0), complex(t),
                                        complex(ab), complex(apb1), complex(c))
            if ok:
                break
            t = t / 4
        else:
            raise DomainError("2F1 continuation step failed to converge")
        f, df = val, der
        z0 = z0 + t
        if abs(z - z0) <= 1e-15 * abs(z):
            z0 = z
        steps += 1
        if steps > 20000:
            raise DomainError(f"2F1 continuation to z = {z} needs too many steps")
    return f


def _one_minus_z(a, b, c, z) -> complex:
    w = 1 - z
    s = c - a - b
    t1 = gamma_ratio([c, s], [c - a, c - b]) * _series(a, b, 1 - s, w)
    t2 = gamma_ratio([c, -s], [a, b]) * w ** s * _series(c - a, c - b, s + 1, w)
    return t1 + t2


def _near_one(a, b, c, z) -> complex:
    s = c - a - b
    m = round(s.real)
    delta = s - m
    d = 2e-3
    if abs(delta) >= d:
        return _one_minus_z(a, b, c, z)
    # c-a-b (nearly) integer: the two terms carry cancelling Gamma poles. F is
    # analytic in c, so interpolate it from nodes placed away from the degenerate
    # value (cubic Lagrange, error O(d^4)).
    c0 = a + b + m
    nodes = (-2 * d, -d, d, 2 * d)
    # interpolate F/Gamma(c), which stays smooth even if c sits near a pole of Gamma
    vals = [_one_minus_z(a, b, c0 + h, z) * rgamma(c0 + h) for h in nodes]
    acc = 0j
    for i, hi in enumerate(nodes):
        w = 1 + 0j
        for j, hj in enumerate(nodes):
            if j != i:
                w *= (delta - hj) / (hi - hj)
        acc += w * vals[i]
    return acc * gamma(c)


def _hyp2f1(a, b, c, z) -> complex:
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    if z == 0:
        return 1 + 0j
    na, nb = _nonpositive_int(a), _nonpositive_int(b)
    if na is not None or nb is not None:
        n = max(x for x in (na, nb) if x is not None)  # closest to zero terminates first
        aa, bb = (a, b) if n == na else (b, a)
        return _terminating(aa, bb, c, z, -n)
    if _nonpositive_int(c) is not None:
        raise PoleError(f"2F1 with c = {c} is undefined", where=c)
    nca, ncb = _nonpositive_int(c - a), _nonpositive_int(c - b)
    if nca is not None or ncb is not None:
        # Euler: F(a,b;c;z) = (1-z)^(c-a-b) F(c-a,c-b;c;z), which terminates
        if z == 1:
            raise DomainError("2F1 Euler form is singular at z = 1")
        n = max(x for x in (nca, ncb) if x is not None)
        aa, bb = (c - a, c - b) if n == nca else (c - b, c - a)
        return (1 - z) ** (c - a - b) * _terminating(aa, bb, c, z, -n)
    if abs(z) <= _SERIES_RADIUS:
        return _series(a, b, c, z)
    if abs(z.imag) <= 1e-14 * abs(z) and z.real >= 1.0:
        raise DomainError(f"2F1 evaluated on its branch cut, z = {z}")
    if abs(1 - z) <= 0.4:
        return _near_one(a, b, c, z)
    return _continue(a, b, c, z)


def hyp2f1(a, b=None, c=None, z=None) -> complex:
    """Gauss hypergeometric function 2F1(a, b; c; z).

    Accepts either four numbers or a single :class:`HypergeometricArgs`.
    """
    if isinstance(a, HypergeometricArgs):
        a, b, c, z = a.a, a.b, a.c, a.z
    return _hyp2f1(a, b, c, z)


def hyp2f1_regularized(a, b, c, z) -> complex:
    """2F1(a, b; c; z) / Gamma(c), finite for every c."""
    m = _nonpositive_int(c)
    if m is None:
        return rgamma(c) * _hyp2f1(a, b, c, z)
    m = 1 - m  # c = 1 - m with m >= 1
    if _nonpositive_int(a) is not None and _nonpositive_int(a) > -m:
        return 0j
    if _nonpositive_int(b) is not None and _nonpositive_int(b) > -m:
        return 0j
    coef = pochhammer(a, m) * pochhammer(b, m) / math.factorial(m)
    return coef * complex(z) ** m * _hyp2f1(a + m, b + m, m + 1, z)


def hyp2f1_derivative(a, b, c, z) -> complex:
    return a * b / c * _hyp2f1(a + 1, b + 1, c + 1, z)


def legendre_p(nu, mu=None, z=None) -> float | complex:
    """Associated Legendre function of the first kind on the cut, ``P_nu^mu(z)``, |z| < 1.

    Uses ``P = ((1+z)/(1-z))^(mu/2) 2F1(-nu, nu+1; 1-mu; (1-z)/2) / Gamma(1-mu)``.
    Returns a float when the degree and order are real.
    """
    if isinstance(nu, LegendreArgs):
        nu, mu, z = nu.degree, nu.order, nu.z
    zr = complex(z)
    real_input = all(abs(complex(v).imag) == 0 for v in (nu, mu, z))
    if abs(zr.real) >= 1.0:
        if abs(zr.real) == 1.0 and complex(mu).real < 0:
            return 0.0
        if abs(zr.real) == 1.0 and mu == 0:
            return 1.0 if zr.real == 1.0 else math.cos(math.pi * complex(nu).real)
        raise DomainError(f"legendre_p needs |z| < 1 on the cut, got {z}")
    ratio = (1 + zr) / (1 - zr)
    val = ratio ** (mu / 2) * hyp2f1_regularized(-nu, nu + 1, 1 - mu, (1 - zr) / 2)
    return val.real if real_input else val


def jacobi_p(n, alpha=None, beta=None, x=None) -> complex:
    """Jacobi polynomial P_n^(alpha, beta)(x) for complex parameters and argument."""
    if isinstance(n, JacobiArgs):
        n, alpha, beta, x = n.n, n.alpha, n.beta, n.x
    if n < 0 or int(n) != n:
        raise DomainError(f"Jacobi degree must be a non-negative integer, got {n}")
    n = int(n)
    alpha, beta, x = complex(alpha), complex(beta), complex(x)
    if n == 0:
        return 1 + 0j
    p0 = 1 + 0j
    p1 = (alpha + 1) + (alpha + beta + 2) * (x - 1) / 2
    ab = alpha + beta
    for k in range(2, n + 1):
        a1 = 2 * k * (k + ab) * (2 * k + ab - 2)
        if abs(a1) < 1e-14:
            return _jacobi_sum(n, alpha, beta, x)
        b1 = (2 * k + ab - 1) * ((2 * k + ab) * (2 * k + ab - 2) * x + alpha * alpha - beta * beta)
        c1 = 2 * (k + alpha - 1) * (k + beta - 1) * (2 * k + ab)
        p0, p1 = p1, (b1 * p1 - c1 * p0) / a1
    return p1


def _jacobi_sum(n, alpha, beta, x) -> complex:
    # explicit sum, valid for every alpha, beta: sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s)
    xm, xp = (x - 1) / 2, (x + 1) / 2
    acc = 0j
    for s in range(n + 1):
        c1 = pochhammer(alpha + s + 1, n - s) / math.factorial(n - s)
        c2 = pochhammer(beta + n - s + 1, s) / math.factorial(s)
        acc += c1 * c2 * xm ** s * xp ** (n - s)
    return acc
