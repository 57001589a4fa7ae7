"""Bound-state wave functions for V1..V6.

Each level is evaluated from its closed form in the shifted frame y = x - ln sqrt(q)
and normalized numerically. Where a textbook normalization constant is available
(V1, V2) it is computed as well and logged next to the numerical one, but the
numerical value is the one used.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import simpson

from ._engines import log_cosh, mpt_state, scarf2_state
from .errors import ContractError, NumericError
from .potentials import Kind, PotentialSpec, check_domain, decay, effective_params, reduce_to_shifted
from .specfun import hyp2f1_regularized, jacobi_p, legendre_p, loggamma

log = logging.getLogger(__name__)

MIN_SPAN = 40.0
STEP = 0.005
EDGE_RATIO = 1e-16
WALL_STEPS = 25
WAVE_KINDS = (Kind.V1, Kind.V2, Kind.V3, Kind.V4, Kind.V5, Kind.V6)


@dataclass(frozen=True)
class NormCount:
    norm: float
    nodes: int


@dataclass(frozen=True)
class BoundState:
    """Level ``n`` of ``spec``; ``psi`` takes raw-frame x (scalar or array)."""

    spec: PotentialSpec
    n: int
    energy: float
    shape: Callable = field(repr=False)
    scale: float = 1.0
    norm_method: str = "numeric"
    paper_norm: float | None = None
    window: tuple[float, float] = (0.0, 0.0)

    @property
    def kind(self) -> Kind:
        return self.spec.kind

    def psi_shifted(self, y):
        y = np.asarray(y, dtype=float)
        out = self.scale * _vector(self.shape)(y)
        return float(out) if out.ndim == 0 else out

    def psi(self, x):
        check_domain(self.spec, x)
        return self.psi_shifted(np.asarray(x, dtype=float) - self.spec.shift)

    __call__ = psi

    def grid(self, step: float = STEP) -> np.ndarray:
        """Shifted-frame grid covering the truncated domain."""
        lo, hi = self.window
        return np.linspace(lo, hi, int(round((hi - lo) / step)) + 1)

    def sample(self, step: float = STEP) -> tuple[np.ndarray, np.ndarray]:
        """Raw-frame coordinates and psi values on the truncated domain."""
        y = self.grid(step)
        return y + self.spec.shift, self.psi_shifted(y)


def _vector(f):
    return np.vectorize(f, otypes=[float])


# --- closed forms in the shifted frame ----------------------------------------------------

def _shape_v1(spec, n):
    lt = effective_params(spec).lambda_t
    order = lt - 0.5 - n
    sign = -1.0 if n % 2 else 1.0

    def p(y):
        # P^-order_(lt-1/2)(tanh y) written with (1 - tanh y)/(1 + tanh y) = e^-2y and
        # (1 - tanh y)/2 = 1/(1 + e^2y), which stay accurate where tanh y rounds to 1
        if y < 1.0:
            return legendre_p(lt - 0.5, -order, math.tanh(y))
        z = 1.0 / (1.0 + math.exp(2 * y))
        return math.exp(-order * y) * hyp2f1_regularized(0.5 - lt, lt + 0.5, 1 + order, z).real

    def f(y):
        # continued to y < 0 by the parity (-1)^n
        return sign * p(-y) if y < 0 else p(y)

    return f


def _shape_v2(spec, n):
    ep = effective_params(spec)
    return lambda y: mpt_state(ep.eta_t, ep.nu_t, n, y)


def _shape_v3(spec, n, E):
    ep = effective_params(spec)
    s = ep.s
    b = decay(E, -spec["alpha"], spec.kappa).real

    def f(y):
        if y <= 0:
            return 0.0
        e2 = math.exp(-2 * y)
        w = -math.expm1(-2 * y)
        return w ** ((s + 1) / 2) * math.exp(-b * y) * jacobi_p(n, b, s, 1 - 2 * e2).real

    return f


def _shape_v4(spec, n, E):
    a = decay(E, spec["beta"], spec.kappa).real
    b = decay(E, -spec["beta"], spec.kappa).real

    def f(y):
        # (1 -+ tanh y) = e^(-+y) / cosh y
        lc = log_cosh(y)
        pre = math.exp(a / 2 * (-y - lc) + b / 2 * (y - lc))
        return pre * jacobi_p(n, a, b, math.tanh(y)).real

    return f


def _shape_v5(spec, n):
    ep = effective_params(spec)
    return lambda y: mpt_state(ep.eta_t, ep.nu_t, n, y / 2)


def _shape_v6(spec, n):
    # the state is built on lam^2 = V2 + 1/4 - i V1/sqrt(q), the conjugate of the
    # index that fixes the spectrum
    lam = effective_params(spec).extra["lambda"].conjugate()
    return lambda y: scarf2_state(lam, n, math.sinh(y))


# --- closed-form normalization constants (logged, not used) -----------------------------

def _closed_norm(spec, n):
    if spec.kind is Kind.V1:
        lt = effective_params(spec).lambda_t
        s = lt - 0.5 - n
        return math.sqrt(s * math.exp((loggamma(2 * lt - n) - loggamma(n + 1)).real))
    if spec.kind is Kind.V2:
        ep = effective_params(spec)
        et, nt = ep.eta_t, ep.nu_t
        lg = (loggamma(n + 1 + et) + loggamma(nt - n) - loggamma(nt - et - n) - loggamma(n + 1)).real
        return math.sqrt(2 * (nt - et - 2 * n - 1) * math.exp(lg)) * math.exp(-loggamma(1 + et).real)
    return None


# --- truncation and normalization --------------------------------------------------------

def _window(shape, half_line, step=STEP):
    half = MIN_SPAN / 2
    for _ in range(8):
        lo, hi = (0.0, 2 * half) if half_line else (-half, half)
        y = np.linspace(lo, hi, int(round((hi - lo) / step)) + 1)
        v = _vector(shape)(y) ** 2
        if not np.all(np.isfinite(v)):
            bad = int(np.argmax(~np.isfinite(v)))
            raise NumericError(f"wave function is not finite at y = {y[bad]:.6g}")
        peak = v.max()
        if peak <= 0:
            raise NumericError("wave function vanishes on the sample grid")
        tail = v[-1] if half_line else max(v[0], v[-1])
        if tail <= EDGE_RATIO * peak:
            return lo, hi, y, v
        half *= 2
    raise NumericError("wave function does not decay within the search span")


def normalize_and_count(state_or_values, grid=None) -> NormCount:
    """Simpson norm of |psi|^2 and the number of sign changes strictly inside the grid.

    Accepts a :class:`BoundState` (sampled on its own grid) or sample values plus
    their grid. Samples below 1e-10 of the peak are ignored when counting nodes.
    """
    if isinstance(state_or_values, BoundState):
        x, v = state_or_values.sample()
    else:
        if grid is None:
            raise ContractError("sample values need their grid")
        x, v = np.asarray(grid, dtype=float), np.asarray(state_or_values, dtype=float)
    bad = ~np.isfinite(v)
    if bad.any():
        raise NumericError(f"non-finite wave function sample at x = {x[np.argmax(bad)]:.6g}")
    norm = float(simpson(v * v, x=x))
    big = v[np.abs(v) > 1e-10 * np.abs(v).max()] if v.size else v
    nodes = int(np.count_nonzero(np.sign(big[1:]) != np.sign(big[:-1])))
    return NormCount(norm, nodes)


def _levels(spec):
    from .spectra import spectrum

    return spectrum(spec).levels


def bound_state(spec: PotentialSpec, n: int) -> BoundState:
    """Normalized level ``n`` of a V1..V6 spec."""
    if spec.kind not in WAVE_KINDS:
        raise ContractError(f"no closed-form wave functions for {spec.kind.value}")
    if n < 0 or int(n) != n:
        raise ContractError("level index must be a non-negative integer")
    levels = _levels(spec)
    if n >= len(levels):
        raise ContractError(f"{spec.kind.value} has {len(levels)} bound states, no level n = {n}")
    n = int(n)
    E = levels[n].energy
    k = spec.kind
    if k is Kind.V1:
        shape = _shape_v1(spec, n)
    elif k is Kind.V2:
        shape = _shape_v2(spec, n)
    elif k is Kind.V3:
        shape = _shape_v3(spec, n, E)
    elif k is Kind.V4:
        shape = _shape_v4(spec, n, E)
    elif k is Kind.V5:
        shape = _shape_v5(spec, n)
    else:
        raw = _shape_v6(spec, n)
        shape = _phase_fixed(raw, spec.half_line)
    lo, hi, y, v = _window(shape, spec.half_line)
    norm = float(simpson(v, x=y))
    scale = 1.0 / math.sqrt(norm)
    closed = _closed_norm(spec, n)
    if closed is not None:
        log.debug("%s n=%d: numeric norm constant %.12g, closed-form constant %.12g",
                  k.value, n, scale, closed)
    return BoundState(spec, n, E, shape, scale, "numeric", closed, (lo, hi))


def _phase_fixed(raw, half_line):
    # multiply by the conjugate phase at the largest sample, then require a real result
    y = np.linspace(-20, 20, 4001)
    vals = np.array([raw(t) for t in y])
    i = int(np.argmax(np.abs(vals)))
    phase = np.conj(vals[i]) / abs(vals[i])
    imag = np.max(np.abs((vals * phase).imag)) / abs(vals[i])
    if imag > 1e-9:
        raise NumericError(f"wave function is not real after phase fixing (|Im|/max = {imag:.2e})")

    def f(t):
        return (raw(t) * phase).real

    return f


def _psi(kind):
    def psi(spec: PotentialSpec, n: int, x):
        if spec.kind is not kind:
            raise ContractError(f"expected a {kind.value} spec, got {spec.kind.value}")
        return bound_state(spec, n).psi(x)

    psi.__name__ = f"psi_{kind.value.lower()}"
    psi.__doc__ = f"Normalized level n of a {kind.value} spec at raw-frame x."
    return psi


psi_v1 = _psi(Kind.V1)
psi_v2 = _psi(Kind.V2)
psi_v3 = _psi(Kind.V3)
psi_v4 = _psi(Kind.V4)
psi_v5 = _psi(Kind.V5)
psi_v6 = _psi(Kind.V6)


def bound_states(spec: PotentialSpec) -> list[BoundState]:
    return [bound_state(spec, n) for n in range(len(_levels(spec)))]


# --- checks ------------------------------------------------------------------------------

def gram_matrix(states: list[BoundState], step: float = STEP) -> np.ndarray:
    """Overlaps <psi_i|psi_j> on the union of the truncation windows."""
    if not states:
        return np.zeros((0, 0))
    lo = min(s.window[0] for s in states)
    hi = max(s.window[1] for s in states)
    y = np.linspace(lo, hi, int(round((hi - lo) / step)) + 1)
    vals = np.array([s.psi_shifted(y) for s in states])
    return np.array([[simpson(a * b, x=y) for b in vals] for a in vals])


def schrodinger_residual(state: BoundState, step: float = 1e-3) -> float:
    """||(H - E) psi|| / ||psi|| (energy units) by fourth-order central differences.

    On the half line psi ~ y^p at the wall is not smooth enough for the stencil within a
    few steps of y = 0, so the check starts WALL_STEPS steps away from it.
    """
    sp, _ = reduce_to_shifted(state.spec)
    lo, hi = state.window
    if state.spec.half_line:
        lo = max(lo, WALL_STEPS * step)
    y = np.linspace(lo, hi, int(round((hi - lo) / step)) + 1)
    v = state.psi_shifted(y)
    lap = (-v[4:] + 16 * v[3:-1] - 30 * v[2:-2] + 16 * v[1:-3] - v[:-4]) / (12 * step ** 2)
    yi, vi = y[2:-2], v[2:-2]
    with np.errstate(all="ignore"):
        r = -state.spec.kappa * lap + (sp(yi) - state.energy) * vi
    return float(np.sqrt(simpson(r * r, x=yi)) / math.sqrt(simpson(vi * vi, x=yi)))


def oracle_overlap(state: BoundState, n_points: int = 20001) -> float:
    """|<psi, psi_oracle>| against the finite-difference eigenvector of the same level."""
    from .oracle import eigenvector, problem_for

    p = problem_for(state.spec, n_points)
    y, vec = eigenvector(p, state.n)
    mask = (y > 0) if state.spec.half_line else np.ones_like(y, dtype=bool)
    a = np.zeros_like(y)
    a[mask] = state.psi_shifted(y[mask])
    na = math.sqrt(simpson(a * a, x=y))
    return float(abs(simpson(a * vec, x=y)) / na)


__all__ = ["BoundState", "NormCount", "bound_state", "bound_states", "normalize_and_count",
           "psi_v1", "psi_v2", "psi_v3", "psi_v4", "psi_v5", "psi_v6", "gram_matrix",
           "schrodinger_residual", "oracle_overlap", "WAVE_KINDS"]
