"""Hypergeometric solution kernels shared by the Green-function and wave-function code.

Two model problems carry every closed form in the package, both written for the
unit operator ``-d^2/du^2 + U(u) + k^2``:

* the modified Poschl-Teller well ``U = (eta^2-1/4)/sinh^2 u - (nu^2-1/4)/cosh^2 u``
  on u > 0 (V2 directly, V5 and V7 after a change of variable);
* the Scarf II well ``U = (c_s sinh u + c_c)/cosh^2 u`` on the line (V6 directly,
  V8 after a change of variable), solved with the substitution x = i sinh u, which
  turns the equation into a hypergeometric one with complex parameters.
"""
from __future__ import annotations

import cmath
import math

from .errors import NumericError, PoleError
from .specfun import gamma_ratio, hyp2f1, hyp2f1_derivative, rgamma


def log_sinh(y: float) -> float:
    return y + math.log(-math.expm1(-2.0 * y)) - math.log(2.0)


def log_cosh(y: float) -> float:
    y = abs(y)
    return y + math.log1p(math.exp(-2.0 * y)) - math.log(2.0)


# --- modified Poschl-Teller --------------------------------------------------------------

def mpt_green(eta, nu, k, y1: float, y2: float) -> complex:
    """Green function of -d^2/dy^2 + U + k^2 on y > 0 (regular at 0, decaying at infinity).

    G = Gamma(m1-L) Gamma(m1+L+1) / (2 Gamma(m1+m2+1) Gamma(m1-m2+1))
        (cosh y1 cosh y2)^-k (tanh y1 tanh y2)^(eta+1/2)
        F(m1-L, m1+L+1; k+1; 1/cosh^2 y>) F(m1-L, m1+L+1; eta+1; tanh^2 y<)
    with m1,2 = (eta +- k)/2 and L = (nu-1)/2.
    """
    m1, m2, L = (eta + k) / 2, (eta - k) / 2, (nu - 1) / 2
    a, b = m1 - L, m1 + L + 1
    lo, hi = min(y1, y2), max(y1, y2)
    pre = 0.5 * gamma_ratio([a, b], [m1 + m2 + 1, m1 - m2 + 1])
    logs = -k * (log_cosh(y1) + log_cosh(y2)) + (eta + 0.5) * (
        math.log(math.tanh(y1)) + math.log(math.tanh(y2)))
    f_hi = hyp2f1(a, b, k + 1, 1.0 / math.cosh(hi) ** 2)
    f_lo = hyp2f1(a, b, eta + 1, math.tanh(lo) ** 2)
    return pre * cmath.exp(logs) * f_hi * f_lo


def mpt_state(eta: float, nu: float, n: int, y: float) -> float:
    """Unnormalized level n of the modified Poschl-Teller well:
    sinh^(eta+1/2) y cosh^(2n-nu+1/2) y 2F1(-n, nu-n; 1+eta; tanh^2 y)."""
    if y <= 0:
        return 0.0
    logs = (eta + 0.5) * log_sinh(y) + (2 * n - nu + 0.5) * log_cosh(y)
    return math.exp(logs) * hyp2f1(-n, nu - n, 1 + eta, math.tanh(y) ** 2).real


# --- Scarf II ----------------------------------------------------------------------------

_FAR = 4.0  # sinh u beyond which the expansion about x = infinity is used


class ScarfII:
    """Solutions of -phi'' + [(c_s sinh u + c_c)/cosh^2 u + k^2] phi = 0.

    With x = i sinh u and z = (1-x)/2 the solutions are
    (1-x)^p (1+x)^r 2F1(A, B; C; z), p = 1/4 + lam/2, r = 1/4 + lam'/2,
    lam^2 = 1/4 - c_c + i c_s, lam'^2 = 1/4 - c_c - i c_s,
    A, B = p + r -+ k, C = 2p + 1/2. The solution decaying as u -> +infinity is
    (1-x)^p (1+x)^r z^-B 2F1(B, B-C+1; B-A+1; 1/z); it is evaluated directly for
    sinh u >= 4 and continued inward through the basis about z = 0.
    """

    def __init__(self, c_s, c_c, k):
        self.c_s, self.c_c, self.k = complex(c_s), complex(c_c), complex(k)
        lam = cmath.sqrt(0.25 - self.c_c + 1j * self.c_s)
        lamp = cmath.sqrt(0.25 - self.c_c - 1j * self.c_s)
        self.p, self.r = 0.25 + lam / 2, 0.25 + lamp / 2
        self.A = self.p + self.r - self.k
        self.B = self.p + self.r + self.k
        self.C = 2 * self.p + 0.5
        self._coef = None

    def _prefactor(self, s, ch):
        x = 1j * s
        pre = (1 - x) ** self.p * (1 + x) ** self.r
        dlog = (-self.p / (1 - x) + self.r / (1 + x)) * (1j * ch)
        return pre, dlog

    def far(self, u: float):
        """Decaying solution and its u-derivative from the expansion at infinity."""
        s, ch = math.sinh(u), math.cosh(u)
        z = (1 - 1j * s) / 2
        dz = -0.5j * ch
        pre, dlog = self._prefactor(s, ch)
        a, b, c = self.B, self.B - self.C + 1, self.B - self.A + 1
        w = 1 / z
        f = hyp2f1(a, b, c, w)
        df = hyp2f1_derivative(a, b, c, w)
        zb = z ** (-self.B)
        g = zb * f
        dg = (-self.B / z * zb * f - zb * df / (z * z)) * dz
        return pre * g, pre * (dg + dlog * g)

    def basis(self, u: float):
        """The two solutions about z = 0 with their u-derivatives."""
        s, ch = math.sinh(u), math.cosh(u)
        z = (1 - 1j * s) / 2
        dz = -0.5j * ch
        pre, dlog = self._prefactor(s, ch)
        A, B, C = self.A, self.B, self.C
        f1 = hyp2f1(A, B, C, z)
        d1 = hyp2f1_derivative(A, B, C, z) * dz
        a2, b2, c2 = A - C + 1, B - C + 1, 2 - C
        zc = z ** (1 - C)
        g2 = hyp2f1(a2, b2, c2, z)
        f2 = zc * g2
        d2 = ((1 - C) / z * zc * g2 + zc * hyp2f1_derivative(a2, b2, c2, z)) * dz
        return ((pre * f1, pre * (d1 + dlog * f1)), (pre * f2, pre * (d2 + dlog * f2)))

    def _coefficients(self):
        if self._coef is None:
            um = math.asinh(_FAR)
            v, dv = self.far(um)
            (f1, d1), (f2, d2) = self.basis(um)
            det = f1 * d2 - f2 * d1
            if det == 0:
                raise NumericError("degenerate hypergeometric basis")
            self._coef = ((v * d2 - dv * f2) / det, (f1 * dv - d1 * v) / det)
        return self._coef

    def decaying(self, u: float):
        """Solution decaying as u -> +infinity, with its derivative."""
        if math.sinh(u) >= _FAR:
            return self.far(u)
        c1, c2 = self._coefficients()
        (f1, d1), (f2, d2) = self.basis(u)
        return c1 * f1 + c2 * f2, c1 * d1 + c2 * d2


class ScarfIIGreen:
    """Green function of the Scarf II problem on the line, G = -u_-(u<) u_+(u>)/W."""

    def __init__(self, c_s, c_c, k):
        self.right = ScarfII(c_s, c_c, k)
        self.left = ScarfII(-complex(c_s), c_c, k)  # u -> -u flips the odd term

    def plus(self, u):
        return self.right.decaying(u)

    def minus(self, u):
        v, d = self.left.decaying(-u)
        return v, -d

    def wronskian(self, u: float = 0.0) -> complex:
        vm, dm = self.minus(u)
        vp, dp = self.plus(u)
        return vm * dp - dm * vp

    def __call__(self, u1: float, u2: float) -> complex:
        lo, hi = min(u1, u2), max(u1, u2)
        w = self.wronskian(0.5 * (lo + hi))
        if w == 0:
            raise PoleError("Scarf II Wronskian vanishes", where=None)
        return -self.minus(lo)[0] * self.plus(hi)[0] / w

    def dirichlet(self, u1: float, u2: float, wall: float = 0.0) -> complex:
        """Green function on u > wall vanishing at the wall.

        The solution vanishing at the wall is u_D = u_+(w) u_- - u_-(w) u_+, so
        G_D = -u_D(u<) u_+(u>) / (u_+(w) W).
        """
        mw, dmw = self.minus(wall)
        pw, dpw = self.plus(wall)
        w = mw * dpw - dmw * pw
        if w == 0 or pw == 0:
            raise PoleError("Dirichlet Green function pole", where=None)
        lo, hi = min(u1, u2), max(u1, u2)
        reg = pw * self.minus(lo)[0] - mw * self.plus(lo)[0]
        return -reg * self.plus(hi)[0] / (pw * w)


def scarf2_state(lam: complex, n: int, s: float) -> complex:
    """Unnormalized bound state of the Scarf II well in s = sinh u:
    (1+is)^((1/2-lam)/2) (1-is)^((1/2-conj lam)/2) P_n^(-conj lam, -lam)(is)."""
    from .specfun import jacobi_p

    x = 1j * s
    lc = lam.conjugate()
    return (1 + x) ** ((0.5 - lam) / 2) * (1 - x) ** ((0.5 - lc) / 2) * jacobi_p(n, -lc, -lam, x)


__all__ = ["mpt_green", "mpt_state", "ScarfII", "ScarfIIGreen", "scarf2_state",
           "log_sinh", "log_cosh", "rgamma"]
