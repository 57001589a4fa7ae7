"""Bound-state spectra: closed forms for V1..V6, the cubic for V7, a root search for V8.

All energies are total energies in absolute units, directly comparable with the
oracle. An empty spectrum is an ordinary result; ``diagnostics`` says which
existence condition failed.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from ._engines import ScarfII
from .errors import ContractError, DomainError, NumericError, PoleError
from .potentials import (Kind, PotentialSpec, check_conditional, effective_params,
                         equivalent_undeformed, reduce_to_shifted)
from .specfun import hyp2f1

RESIDUAL_TOL = 1e-10


class Method(str, Enum):
    CLOSED_FORM = "closed_form"
    CARDANO = "cardano"
    TRANSCENDENTAL = "transcendental"
    NUMERIC_ORACLE = "numeric_oracle"


@dataclass(frozen=True)
class Level:
    n: int
    energy: float
    residual: float = 0.0


@dataclass(frozen=True)
class Spectrum:
    kind: Kind
    levels: tuple
    n_max: int
    method: Method
    spec: PotentialSpec | None = None
    diagnostics: tuple = ()

    @property
    def energies(self) -> np.ndarray:
        return np.array([lv.energy for lv in self.levels])

    def __len__(self):
        return len(self.levels)

    def to_dict(self) -> dict:
        d = {"kind": self.kind.value, "levels": [{"n": lv.n, "E": lv.energy} for lv in self.levels],
             "n_max": self.n_max, "method": self.method.value}
        if self.spec is not None:
            d["q"] = self.spec.q
            d["params"] = dict(self.spec.params)
        if self.diagnostics:
            d["diagnostics"] = list(self.diagnostics)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "energy"])
        for lv in self.levels:
            w.writerow([lv.n, repr(lv.energy)])
        return buf.getvalue()


def _make(spec, energies, method, diagnostics=(), residuals=None):
    residuals = residuals or [0.0] * len(energies)
    levels = tuple(Level(n, float(e), float(r)) for n, (e, r) in enumerate(zip(energies, residuals)))
    return Spectrum(spec.kind, levels, len(levels) - 1, method, spec, tuple(diagnostics))


def _require(spec, kind):
    if spec.kind is not kind:
        raise ContractError(f"expected a {kind.value} spec, got {spec.kind.value}")


def _closed(spec, depths, offset=0.0, diagnostics=()):
    # E_n = offset - kappa * d_n^2 for the positive entries d_n
    k = spec.kappa
    return _make(spec, [offset - k * d * d for d in depths], Method.CLOSED_FORM, diagnostics)


def _count(start: float, step: float, ok) -> list:
    out = []
    n = 0
    while ok(start + step * n, n):
        out.append(start + step * n)
        n += 1
        if n > 100000:
            raise DomainError("level count does not terminate")
    return out


def spectrum_v1(spec: PotentialSpec) -> Spectrum:
    """E_n = -kappa (n - lam + 1/2)^2 for n < lam - 1/2."""
    _require(spec, Kind.V1)
    sp, _ = reduce_to_shifted(spec)
    if sp.coeffs["g"] + 0.25 <= 0:
        return _closed(spec, [], diagnostics=("deformed index is not real: no well",))
    lt = effective_params(spec).lambda_t
    depths = _count(lt - 0.5, -1.0, lambda d, n: d > 0)
    return _closed(spec, depths, diagnostics=() if depths else ("lambda~ <= 1/2: no bound states",))


def spectrum_v2(spec: PotentialSpec) -> Spectrum:
    """E_n = -kappa (2n + eta - nu + 1)^2 for 2n < nu - eta - 1."""
    _require(spec, Kind.V2)
    sp, _ = reduce_to_shifted(spec)
    if sp.coeffs["g_s"] + 0.25 < 0 or sp.coeffs["g_c"] + 0.25 < 0:
        return _closed(spec, [], diagnostics=("deformed index is not real",))
    ep = effective_params(spec)
    depths = _count(ep.nu_t - ep.eta_t - 1, -2.0, lambda d, n: d > 0)
    return _closed(spec, depths, diagnostics=() if depths else ("nu~ - eta~ <= 1: no bound states",))


def spectrum_v3(spec: PotentialSpec) -> Spectrum:
    """E_n = -kappa N^2 - alpha^2/(4 kappa N^2), N = n + lam + 1/2, bound while N^2 < alpha/(2 kappa)."""
    _require(spec, Kind.V3)
    alpha, k = spec["alpha"], spec.kappa
    if alpha <= 0:
        return _make(spec, [], Method.CLOSED_FORM, ("alpha <= 0: no bound states",))
    sp, _ = reduce_to_shifted(spec)
    if sp.coeffs["g_s"] + 0.25 < 0:
        return _make(spec, [], Method.CLOSED_FORM, ("deformed index is not real",))
    lt = effective_params(spec).lambda_t
    Ns = _count(lt + 0.5, 1.0, lambda N, n: N * N < alpha / (2 * k))
    es = [-k * N * N - alpha ** 2 / (4 * k * N * N) for N in Ns]
    return _make(spec, es, Method.CLOSED_FORM, () if es else ("alpha too weak for the barrier",))


def spectrum_v4(spec: PotentialSpec) -> Spectrum:
    """E_n = -kappa N^2 - beta^2/(4 kappa N^2), N = lam - 1/2 - n, bound while N^2 > |beta|/(2 kappa)."""
    _require(spec, Kind.V4)
    beta, k = spec["beta"], spec.kappa
    sp, _ = reduce_to_shifted(spec)
    if sp.coeffs["g_c"] + 0.25 < 0:
        return _make(spec, [], Method.CLOSED_FORM, ("deformed index is not real",))
    lt = effective_params(spec).lambda_t
    Ns = _count(lt - 0.5, -1.0, lambda N, n: N > 0 and N * N > abs(beta) / (2 * k))
    es = [-k * N * N - beta ** 2 / (4 * k * N * N) for N in Ns]
    return _make(spec, es, Method.CLOSED_FORM, () if es else ("well too shallow for the tilt",))


def spectrum_v5(spec: PotentialSpec) -> Spectrum:
    """E_n = kappa (V0+V1) - kappa ((nu - eta - 1)/2 - n)^2 with
    eta, nu = sqrt(V1 +- V2/sqrt(q) + 1/4)."""
    _require(spec, Kind.V5)
    sp, _ = reduce_to_shifted(spec)
    c = sp.coeffs
    if spec["V2"] >= 0:
        return _make(spec, [], Method.CLOSED_FORM, ("V2 >= 0: no bound states",))
    if c["V1"] + c["V2"] + 0.25 < 0:
        return _make(spec, [], Method.CLOSED_FORM,
                     ("V1 + V2/sqrt(q) < -1/4: the wall is attractive and the problem is not bounded below",))
    ep = effective_params(spec)
    depths = _count((ep.nu_t - ep.eta_t - 1) / 2, -1.0, lambda d, n: d > 0)
    return _closed(spec, depths, sp.threshold, () if depths else ("k1 - k2 <= 1/2: no bound states",))


def spectrum_v6(spec: PotentialSpec) -> Spectrum:
    """E_n = kappa (V0+V2) - kappa (n + 1/2 - Re lam)^2, lam^2 = V2 + 1/4 + i V1/sqrt(q)."""
    _require(spec, Kind.V6)
    sp, _ = reduce_to_shifted(spec)
    a = effective_params(spec).lambda_t
    depths = _count(a - 0.5, -1.0, lambda d, n: d > 0)
    return _closed(spec, depths, sp.threshold, () if depths else ("Re lambda <= 1/2: no bound states",))


# --- V7 -----------------------------------------------------------------------------------

@dataclass(frozen=True)
class CubicCoefficients:
    """Auxiliaries of u^3 + R u^2 + S u + T = 0 reduced to t^3 + P t + Q = 0, u = t - R/3."""

    R: float
    S: float
    T: float
    P: float
    Q: float
    D: float

    @classmethod
    def from_rst(cls, R, S, T):
        P = (3 * S - R * R) / 3
        Q = 2 * R ** 3 / 27 - R * S / 3 + T
        D = (P / 3) ** 3 + (Q / 2) ** 2
        return cls(R, S, T, P, Q, D)

    def reconstruct(self) -> tuple[float, float, float]:
        """R, S, T recovered from R, P, Q."""
        R = self.R
        S = (3 * self.P + R * R) / 3
        T = self.Q - 2 * R ** 3 / 27 + R * S / 3
        return R, S, T


@dataclass(frozen=True)
class CubicRoots:
    roots: tuple
    coefficients: CubicCoefficients
    complex_pair: bool


def _polish(u, R, S, T):
    for _ in range(4):
        f = ((u + R) * u + S) * u + T
        d = (3 * u + 2 * R) * u + S
        if d == 0:
            break
        step = f / d
        u -= step
        if abs(step) <= 1e-16 * max(1.0, abs(u)):
            break
    return u


def cardano_cubic(R: float, S: float, T: float) -> CubicRoots:
    """Real roots of u^3 + R u^2 + S u + T = 0 by Cardano's reduction.

    D > 0 gives one real root and a discarded complex pair; D <= 0 gives three
    real roots (trigonometric form). Roots are polished by Newton steps and
    returned in increasing order.
    """
    co = CubicCoefficients.from_rst(R, S, T)
    P, Q, D = co.P, co.Q, co.D
    if D > 0:
        sd = math.sqrt(D)
        ts = [float(np.cbrt(-Q / 2 + sd) + np.cbrt(-Q / 2 - sd))]
        pair = True
    elif P == 0:
        ts = [0.0]
        pair = False
    else:
        m = 2 * math.sqrt(-P / 3)
        arg = 3 * Q / (P * m)
        th = math.acos(max(-1.0, min(1.0, arg))) / 3
        ts = [m * math.cos(th - 2 * math.pi * j / 3) for j in range(3)]
        pair = False
    roots = sorted(_polish(t - R / 3, R, S, T) for t in ts)
    return CubicRoots(tuple(roots), co, pair)


def v7_cubic(spec: PotentialSpec, n: int) -> tuple[CubicCoefficients, tuple]:
    """Cubic in u = -E for level n (energy units): returns the auxiliaries and the
    raw coefficients (c3, c2, c1, c0)."""
    ep = effective_params(spec, n=n)
    a = ep.extra["a"]
    nt2 = ep.n_t ** 2
    lam = ep.cubic_lambda
    bt = ep.B_t
    K = lam * lam + bt * bt / 4 + 4 * nt2 * a
    c3 = 4 * nt2
    c2 = 12 * nt2 * lam - 20 * nt2 * nt2 - lam * lam
    c1 = 16 * nt2 * lam * (a + lam) - 2 * (lam + 4 * nt2) * K
    c0 = 16 * nt2 * lam * lam * a - K * K
    return CubicCoefficients.from_rst(c2 / c3, c1 / c3, c0 / c3), (c3, c2, c1, c0)


def v7_quantization_residual(spec: PotentialSpec, n: int, E: float) -> float:
    """sqrt(a - E) - (sqrt(B~ - E) - sqrt(-B~ - E))/2 + n~, divided by sqrt(kappa).

    Returns inf where a radicand is negative (principal branches only).
    """
    ep = effective_params(spec, n=n)
    a, bt = ep.extra["a"], ep.B_t
    if a - E < 0 or bt - E < 0 or -bt - E < 0:
        return math.inf
    r = math.sqrt(a - E) - 0.5 * (math.sqrt(bt - E) - math.sqrt(-bt - E)) + ep.n_t
    return abs(r) / math.sqrt(spec.kappa)


def _v7_root(spec, n, u0):
    # refine a cubic root directly on the quantization condition
    ep = effective_params(spec, n=n)
    a, bt, nt = ep.extra["a"], ep.B_t, ep.n_t

    def g(E):
        return math.sqrt(a - E) - 0.5 * (math.sqrt(bt - E) - math.sqrt(-bt - E)) + nt

    E = -u0
    top = min(a, -bt)
    lo, hi = E - 1e-6 * max(1.0, abs(E)), min(E + 1e-6 * max(1.0, abs(E)), top)
    try:
        if g(lo) * g(hi) < 0:
            return brentq(g, lo, hi, xtol=1e-15, rtol=1e-15)
    except ValueError:
        pass
    return E


def spectrum_v7(spec: PotentialSpec) -> Spectrum:
    """Levels of V7 from the cubic in -E, filtered by the square-root quantization condition."""
    _require(spec, Kind.V7)
    check_conditional(spec)
    ep = effective_params(spec, n=0)
    a, bt = ep.extra["a"], ep.B_t
    top = min(a, -bt)
    energies, residuals, diags = [], [], []
    if not (spec["B"] < 0 and 0 < bt < abs(spec.kappa * spec["B"])):
        diags.append("outside the stated existence region B < 0, 0 < A/sqrt(q) < |B|; "
                     "levels come from the quantization filter alone")
    n = 0
    while True:
        co, _ = v7_cubic(spec, n)
        cr = cardano_cubic(co.R, co.S, co.T)
        passing = []
        for u in cr.roots:
            E = _v7_root(spec, n, u)
            if not E < top:
                continue
            r = v7_quantization_residual(spec, n, E)
            if r < RESIDUAL_TOL:
                passing.append((r, E))
        if not passing:
            break
        if len(passing) > 1:
            diags.append(f"n={n}: {len(passing)} cubic roots pass the quantization filter")
        r, E = min(passing)
        energies.append(E)
        residuals.append(r)
        n += 1
    if not energies:
        diags.append("no cubic root satisfies the quantization condition at n = 0")
    return _make(spec, energies, Method.CARDANO, diags, residuals)


# --- V8 -----------------------------------------------------------------------------------

def _v8_engine(spec, E):
    sp, _ = reduce_to_shifted(spec)
    c = sp.coeffs
    e = E / spec.kappa
    return ScarfII(c["h"], -(c["f"] + 0.75 - e), math.sqrt(max(1.0 - e, 0.0)))


def v8_condition(spec: PotentialSpec, E: float) -> tuple[complex, complex, float]:
    """Wall values of the decaying V8 solution.

    On the mapped coordinate (e^z = cosh u) the wall z = 0 is u = 0, which is the
    point z = 1/2 of the hypergeometric variable, so the bound-state condition is
    c1 2F1(A, B; C; 1/2) + c2 2^(C-1) 2F1(A-C+1, B-C+1; 2-C; 1/2) = 0 with c1, c2
    the connection coefficients of the decaying solution. Returns the wall value,
    the wall derivative, and the normalized residual |u(0)| / |(u(0), u'(0))|.
    """
    eng = _v8_engine(spec, E)
    c1, c2 = eng._coefficients()
    (f1, d1), (f2, d2) = eng.basis(0.0)
    v = c1 * f1 + c2 * f2
    dv = c1 * d1 + c2 * d2
    scale = math.hypot(abs(v), abs(dv))
    return v, dv, abs(v) / scale if scale else math.inf


def v8_closed_h0(spec: PotentialSpec) -> list:
    """Closed form at h1 = 0: the condition reduces to
    2F1(k+1/2-w, k+1/2+w; k+1; 1/2) = 0 with w = sqrt(f+1-e), k = sqrt(1-e), whose
    zeros (Gauss's second summation theorem) are w - k = c = 3/2 + 2j, i.e.
    e = f + 1 - ((f/c + c)/2)^2 for every c with c^2 < f."""
    if spec["h1"] != 0:
        raise ContractError("closed form needs h1 = 0")
    f = spec["f"]
    out = []
    c = 1.5
    while c * c < f:
        w = (f / c + c) / 2
        out.append(spec.kappa * (f + 1 - w * w))
        c += 2.0
    return out


def v8_h0_hypergeometric(spec: PotentialSpec, E: float) -> complex:
    """2F1(k+1/2-w, k+1/2+w; k+1; 1/2) for h1 = 0."""
    e = E / spec.kappa
    w = math.sqrt(spec["f"] + 1 - e)
    k = math.sqrt(1 - e)
    return hyp2f1(k + 0.5 - w, k + 0.5 + w, k + 1, 0.5)


def default_v8_window(spec: PotentialSpec) -> tuple[float, float]:
    k = spec.kappa
    return -10.0 * (abs(spec["f"]) + 1.0) * k, k - 1e-6 * k


def spectrum_v8(spec: PotentialSpec, search_window=None, n_roots: int | None = None,
                resolution: int = 2000) -> Spectrum:
    """Real roots of the V8 wall condition in ``search_window`` (default below threshold).

    The real function u_+(0)/u_+'(0) is scanned for sign changes, each bracket is
    refined with Brent's method, and brackets at poles (where u_+'(0) vanishes) are
    rejected by the wall residual.
    """
    _require(spec, Kind.V8)
    check_conditional(spec)
    lo, hi = search_window or default_v8_window(spec)
    thr = spec.kappa
    diags = []
    if hi >= thr:
        hi = thr - 1e-9 * spec.kappa
        diags.append("window clipped to the continuum threshold")
    if not lo < hi:
        return _make(spec, [], Method.TRANSCENDENTAL, ["empty search window"])

    def ratio(E):
        for nudge in (0.0, 1e-12, -1e-12):
            try:
                v, dv, _ = v8_condition(spec, E + nudge * max(1.0, abs(E)))
                return (v / dv).real
            except (PoleError, DomainError, NumericError, ZeroDivisionError):
                continue
        diags.append(f"parameter singularity near E = {E:.12g}; point skipped")
        return math.nan

    grid = np.linspace(lo, hi, resolution)
    vals = [ratio(E) for E in grid]
    roots, residuals = [], []
    for (e0, v0), (e1, v1) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
        if not (math.isfinite(v0) and math.isfinite(v1)) or v0 * v1 > 0:
            continue
        if v0 == 0:
            E = e0
        else:
            try:
                E = brentq(ratio, e0, e1, xtol=1e-13 * max(1.0, abs(e0)), rtol=1e-15)
            except ValueError:
                continue
        _, _, res = v8_condition(spec, E)
        if res < 1e-8:  # a pole bracket leaves an O(1) residual
            if not roots or abs(E - roots[-1]) > 1e-7:
                roots.append(E)
                residuals.append(res)
        if n_roots is not None and len(roots) >= n_roots:
            break
    if not roots:
        diags.append("no sign change of the wall condition in the window")
    return _make(spec, roots, Method.TRANSCENDENTAL, diags, residuals)


# --- dispatch -----------------------------------------------------------------------------

_SOLVERS = {Kind.V1: spectrum_v1, Kind.V2: spectrum_v2, Kind.V3: spectrum_v3, Kind.V4: spectrum_v4,
            Kind.V5: spectrum_v5, Kind.V6: spectrum_v6, Kind.V7: spectrum_v7, Kind.V8: spectrum_v8}


def spectrum(spec: PotentialSpec, **options) -> Spectrum:
    """Spectrum for any kind with a closed-form or semi-closed solution."""
    try:
        solver = _SOLVERS[spec.kind]
    except KeyError:
        raise ContractError(f"{spec.kind.value} has no closed-form spectrum; use the oracle") from None
    return solver(spec, **options) if spec.kind is Kind.V8 else solver(spec)


def numeric_spectrum(spec: PotentialSpec, n_points: int = 6000, span: float | None = None) -> Spectrum:
    """Spectrum from the finite-difference oracle (any kind, including V7' and V8')."""
    from . import oracle

    es = oracle.bound_levels(spec, n_points, span)
    return _make(spec, list(es), Method.NUMERIC_ORACLE)


@dataclass(frozen=True)
class ReductionReport:
    ok: bool
    deformed: tuple
    undeformed: tuple
    max_diff: float
    details: list = field(default_factory=list)


def q_reduction_check(spec: PotentialSpec, tol: float = 1e-12) -> ReductionReport:
    """Compare the spectrum at q with the q = 1 spectrum of the shifted-frame parameters."""
    if spec.kind not in (Kind.V1, Kind.V2, Kind.V3, Kind.V4, Kind.V5, Kind.V6):
        raise ContractError("q-reduction check covers V1..V6")
    a = spectrum(spec).energies
    b = spectrum(equivalent_undeformed(spec)).energies
    details = []
    if len(a) != len(b):
        details.append(f"level count differs: {len(a)} at q={spec.q} vs {len(b)} undeformed")
        return ReductionReport(False, tuple(a), tuple(b), math.inf, details)
    diffs = np.abs(a - b) / np.maximum(1.0, np.abs(a))
    for n, d in enumerate(diffs):
        if d > tol:
            details.append(f"n={n}: {a[n]!r} vs {b[n]!r} (diff {d:.3g})")
    return ReductionReport(not details, tuple(a), tuple(b), float(diffs.max(initial=0.0)), details)
