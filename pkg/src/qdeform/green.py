"""Energy-dependent Green functions G(x1, x2; E) = <x1|(H - E)^-1|x2> and pole scanning.

Coordinates are raw-frame x; each kind is evaluated in the shifted frame. The
normalization is that of the resolvent, so the x1-derivative of G jumps by
-1/kappa across x1 = x2 and a free particle gives exp(-k|x1-x2|)/(2 kappa k).
"""
from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from ._engines import ScarfIIGreen, log_cosh, mpt_green
from .errors import ContractError, DomainError, NumericError, PoleError
from .potentials import (Kind, PotentialSpec, check_conditional, check_domain,
                         decay, effective_params, reduce_to_shifted)
from .specfun import gamma_ratio, hyp2f1, legendre_p

POLE_TOL = 1e-9


@dataclass(frozen=True)
class GreenEval:
    x1: float
    x2: float
    E: complex
    value: complex

    @property
    def ordered(self) -> tuple[float, float]:
        """(x_<, x_>)"""
        return min(self.x1, self.x2), max(self.x1, self.x2)


def _v1(spec, sp, y1, y2, E):
    lt = effective_params(spec).lambda_t
    k = decay(E, 0.0, spec.kappa)
    lo, hi = min(y1, y2), max(y1, y2)
    pre = 0.5 * gamma_ratio([k - lt + 0.5, k + lt + 0.5], [])
    return pre * legendre_p(lt - 0.5, -k, math.tanh(hi)) * legendre_p(lt - 0.5, -k, -math.tanh(lo))


def _v2(spec, sp, y1, y2, E):
    ep = effective_params(spec)
    return mpt_green(ep.eta_t, ep.nu_t, decay(E, 0.0, spec.kappa), y1, y2)


def _v3(spec, sp, y1, y2, E):
    ep = effective_params(spec, E)
    m1, m2, L = ep.m1, ep.m2, ep.L
    a, b = m1 - L, L + m1 + 1
    lo, hi = min(y1, y2), max(y1, y2)
    pre = 0.5 * gamma_ratio([a, b], [m1 + m2 + 1, m1 - m2 + 1])
    w1, w2 = -math.expm1(-2 * y1), -math.expm1(-2 * y2)
    logs = (m1 + m2 + 1) / 2 * (math.log(w1) + math.log(w2)) - (m1 - m2) * (y1 + y2)
    return (pre * cmath.exp(logs) * hyp2f1(a, b, m1 - m2 + 1, math.exp(-2 * hi))
            * hyp2f1(a, b, m1 + m2 + 1, -math.expm1(-2 * lo)))


def _v4(spec, sp, y1, y2, E):
    ep = effective_params(spec, E)
    m1, m2, L = ep.m1, ep.m2, ep.L
    a, b = m1 - L, L + m1 + 1
    lo, hi = min(y1, y2), max(y1, y2)
    pre = 0.5 * gamma_ratio([a, b], [m1 + m2 + 1, m1 - m2 + 1])

    def logs(y):
        # (1 -+ tanh y)/2 = e^(-+y) / (2 cosh y)
        lc = log_cosh(y) + math.log(2.0)
        return -y - lc, y - lc

    (lm1, lp1), (lm2, lp2) = logs(y1), logs(y2)
    pref = cmath.exp((m1 - m2) / 2 * (lm1 + lm2) + (m1 + m2) / 2 * (lp1 + lp2))
    return (pre * pref * hyp2f1(a, b, m1 - m2 + 1, (1 - math.tanh(hi)) / 2)
            * hyp2f1(a, b, m1 + m2 + 1, (1 + math.tanh(lo)) / 2))


def _v5(spec, sp, y1, y2, E):
    # y = 2t maps V5 onto the modified Poschl-Teller well; G_y = 2 G_t
    ep = effective_params(spec)
    k = decay(E, sp.threshold, spec.kappa)
    return 2.0 * mpt_green(ep.eta_t, ep.nu_t, 2 * k, y1 / 2, y2 / 2)


def _v6(spec, sp, y1, y2, E):
    c = sp.coeffs
    return ScarfIIGreen(c["V1"], -c["V2"], decay(E, sp.threshold, spec.kappa))(y1, y2)


def _v7(spec, sp, y1, y2, E):
    # sinh u = e^y gives the hyperbolic Scarf well in u, and u = 2t the modified
    # Poschl-Teller well; G_y = sqrt(coth u1 coth u2) * 2 G_t
    ep = effective_params(spec, E)
    eta = decay(E, -ep.B_t, spec.kappa)
    nu = decay(E, ep.B_t, spec.kappa)
    kt = 2 * decay(E, ep.extra["a"], spec.kappa)
    u1, u2 = math.asinh(math.exp(y1)), math.asinh(math.exp(y2))
    jac = math.sqrt(1 / (math.tanh(u1) * math.tanh(u2)))
    return jac * 2.0 * mpt_green(eta, nu, kt, u1 / 2, u2 / 2)


def _v8_engine(spec, sp, E):
    c = sp.coeffs
    e = complex(E) / spec.kappa
    return ScarfIIGreen(c["h"], -(c["f"] + 0.75 - e), cmath.sqrt(1 - e))


def _wall_u(z):
    # acosh(e^z) without cancellation for small z
    t = math.expm1(z)
    return math.log1p(t + math.sqrt(t * (t + 2.0)))


def _v8(spec, sp, z1, z2, E):
    # e^z = cosh u maps V8 onto the Scarf II well on u > 0; Dirichlet at the wall u = 0
    u1, u2 = _wall_u(z1), _wall_u(z2)
    jac = math.sqrt(math.tanh(u1) * math.tanh(u2))
    for nudge in (0.0, 1e-13, -1e-13):
        # integer hypergeometric parameters make the basis degenerate at isolated E
        try:
            return jac * _v8_engine(spec, sp, E + nudge * max(1.0, abs(E))).dirichlet(u1, u2)
        except (NumericError, DomainError):
            if nudge < 0:
                raise


_KERNELS = {Kind.V1: _v1, Kind.V2: _v2, Kind.V3: _v3, Kind.V4: _v4, Kind.V5: _v5,
            Kind.V6: _v6, Kind.V7: _v7, Kind.V8: _v8}


def _check_pole(spec, E):
    from .spectra import spectrum

    E = complex(E)
    if abs(E.imag) > POLE_TOL or spec.kind is Kind.V8:
        return
    for lv in spectrum(spec).levels:
        if abs(E.real - lv.energy) <= POLE_TOL * max(1.0, abs(lv.energy)):
            raise PoleError(f"E = {E.real!r} is the bound-state pole n = {lv.n}", where=lv.energy)


def green(spec: PotentialSpec, x1: float, x2: float, E, check_poles: bool = True) -> complex:
    """G(x1, x2; E) for V1..V8 (V8 on its half space with the Dirichlet wall)."""
    try:
        kernel = _KERNELS[spec.kind]
    except KeyError:
        raise ContractError(f"no closed-form Green function for {spec.kind.value}") from None
    if spec.kind in (Kind.V7, Kind.V8):
        check_conditional(spec)
    if spec.kind is Kind.V8:
        # the Dirichlet wall itself is a valid argument (G = 0 there)
        check_domain(spec, [x for x in (x1, x2) if x != spec.shift])
    else:
        check_domain(spec, [x1, x2])
    if check_poles:
        _check_pole(spec, E)
    sp, shift = reduce_to_shifted(spec)
    try:
        val = kernel(spec, sp, x1 - shift, x2 - shift, complex(E))
    except PoleError as exc:
        if spec.kind is Kind.V8:
            raise
        from .spectra import spectrum

        levels = spectrum(spec).energies
        near = float(levels[np.argmin(np.abs(levels - complex(E).real))]) if len(levels) else exc.where
        raise PoleError(f"Green function pole near E = {near!r}", where=near) from exc
    return complex(val) / spec.kappa


def green_eval(spec: PotentialSpec, x1: float, x2: float, E) -> GreenEval:
    return GreenEval(x1, x2, complex(E), green(spec, x1, x2, E))


def inverse_green(spec: PotentialSpec, x0: float, E: float) -> float:
    """Re 1/G(x0, x0; E) on the real axis, 0 exactly at a Gamma pole."""
    try:
        g = green(spec, x0, x0, E, check_poles=False)
    except PoleError:
        return 0.0
    return (1.0 / g).real if g != 0 else math.inf


def _sample(sp):
    y = np.linspace(1e-3, 30, 6001) if sp.half_line else np.linspace(-30, 30, 6001)
    with np.errstate(all="ignore"):
        v = np.asarray(sp(y), dtype=float)
    return y, np.where(np.isfinite(v), v, np.inf)


def probe_points(spec: PotentialSpec) -> tuple[float, float, float]:
    """Probe at the bottom of the well and its two neighbours at +-0.5 (raw frame).

    Deeply bound levels are concentrated near the well bottom, so a probe there
    sees a pole residue that is not swamped by the smooth background.
    """
    sp, shift = reduce_to_shifted(spec)
    if spec.kind is Kind.V8:
        # the wall well is unbounded below; deep levels sit within the oscillator
        # length (|f|+1)^(-1/4) of the wall in u, shallow ones further out
        z = math.log(math.cosh((abs(sp.coeffs["f"]) + 1.0) ** -0.25))
        return shift + z, shift + 1.0, shift + 2.0
    y, v = _sample(sp)
    i = int(np.argmin(v))
    if 0 < i < len(y) - 1:
        mid = float(y[i])
    else:
        mid = 1.5 if sp.half_line else 0.0
    lo = max(mid - 0.5, mid / 2) if sp.half_line else mid - 0.5
    return shift + mid, shift + lo, shift + mid + 0.5


def default_window(spec: PotentialSpec) -> tuple[float, float]:
    """From just below the potential minimum to just below the continuum threshold.

    V8 is unbounded below at its wall, so its window is the one used by the spectra module.
    """
    if spec.kind is Kind.V8:
        from .spectra import default_v8_window

        return default_v8_window(spec)
    sp, _ = reduce_to_shifted(spec)
    vmin = float(np.min(_sample(sp)[1]))
    thr = sp.threshold
    scale = max(1.0, abs(thr), abs(vmin))
    return vmin - 1e-6 * scale, thr - 1e-7 * scale


def _scan_probe(spec, x0, grid, xtol):
    vals = [inverse_green(spec, x0, E) for E in grid]
    out = []
    for i in range(len(grid) - 1):
        f0, f1 = vals[i], vals[i + 1]
        if not (math.isfinite(f0) and math.isfinite(f1)):
            continue
        if f0 == 0.0:
            out.append(grid[i])
            continue
        if f0 * f1 > 0:
            continue
        if f1 == 0.0:
            continue  # picked up as the left end of the next interval
        root = brentq(lambda E: inverse_green(spec, x0, E), grid[i], grid[i + 1], xtol=xtol, rtol=1e-15)
        # a sign change through a zero of G leaves |1/G| large; a pole leaves it ~ 0
        if abs(inverse_green(spec, x0, root)) <= 1e-6 * max(abs(f0), abs(f1)):
            out.append(root)
    return out


def pole_scan(spec: PotentialSpec, E_window=None, resolution: int = 400,
              probes=None, merge_tol: float = 1e-7) -> list[float]:
    """Bound-state energies located as zeros of 1/G(x0, x0; E) on a real window.

    Three probe points are scanned so that a level with a node at one probe is
    still found at another; estimates closer than ``merge_tol`` are merged.
    """
    lo, hi = E_window or default_window(spec)
    if not lo < hi:
        return []
    grid = np.linspace(lo, hi, resolution)
    xtol = 1e-12 * max(1.0, abs(lo), abs(hi))
    found = []
    for x0 in probes or probe_points(spec):
        found.extend(_scan_probe(spec, x0, grid, xtol))
    found.sort()
    merged: list[list[float]] = []
    for e in found:
        if merged and abs(e - merged[-1][-1]) <= merge_tol * max(1.0, abs(e)):
            merged[-1].append(e)
        else:
            merged.append([e])
    return [float(np.median(group)) for group in merged]


def scan_table(spec: PotentialSpec, x0: float, E_window, resolution: int = 400) -> str:
    """CSV of E, Re 1/G, Im 1/G along a real window at probe x0."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["E", "re_invG", "im_invG"])
    for E in np.linspace(E_window[0], E_window[1], resolution):
        try:
            g = green(spec, x0, x0, E, check_poles=False)
            inv = 1 / g if g != 0 else complex(math.inf)
        except PoleError:
            inv = 0j
        w.writerow([repr(float(E)), repr(inv.real), repr(inv.imag)])
    return buf.getvalue()
