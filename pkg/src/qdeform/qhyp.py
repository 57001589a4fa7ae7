"""q-deformed hyperbolic functions.

``sinh_q x = (e^x - q e^-x)/2`` and ``cosh_q x = (e^x + q e^-x)/2``. For q > 0 they
are ordinary hyperbolic functions of the shifted coordinate ``y = x - ln sqrt(q)``,
scaled by ``sqrt(q)``. Evaluation here is done in the raw frame from ``exp(x)`` and
``exp(-x)``; the shifted-frame identities are used only as cross-checks.
"""
from __future__ import annotations

import math

import numpy as np
from dataclasses import dataclass, field
from enum import Enum

from .errors import DomainError, PoleError

_POLE_EPS = 1e-300


@dataclass(frozen=True)
class Deformation:
    q: float
    ln_sqrt_q: float = field(init=False)

    def __post_init__(self):
        if not (self.q > 0 and math.isfinite(self.q)):
            raise DomainError(f"deformation q must be a finite positive number, got {self.q!r}")
        object.__setattr__(self, "ln_sqrt_q", 0.5 * math.log(self.q))


class Frame(str, Enum):
    RAW = "raw"
    SHIFTED = "shifted"


@dataclass(frozen=True)
class Coordinate:
    """A position tagged with the frame it is expressed in."""

    x: float
    frame: Frame = Frame.RAW

    def to_shifted(self, d: Deformation) -> "Coordinate":
        if self.frame is Frame.SHIFTED:
            return self
        return Coordinate(self.x - d.ln_sqrt_q, Frame.SHIFTED)

    def to_raw(self, d: Deformation) -> "Coordinate":
        if self.frame is Frame.RAW:
            return self
        return Coordinate(self.x + d.ln_sqrt_q, Frame.RAW)


def _as_deformation(d) -> Deformation:
    return d if isinstance(d, Deformation) else Deformation(float(d))


def _exps(x):
    with np.errstate(over="raise"):
        try:
            return np.exp(x), np.exp(-x)
        except FloatingPointError as exc:
            raise DomainError("argument overflows the exponential") from exc


def _out(v):
    return float(v) if np.ndim(v) == 0 else v


def sinh_q(x, d):
    """``(e^x - q e^-x)/2``; accepts scalars or arrays."""
    d = _as_deformation(d)
    if d.q == 1.0:
        return math.sinh(x) if np.ndim(x) == 0 else np.sinh(x)
    ep, em = _exps(np.asarray(x, dtype=float))
    return _out(0.5 * (ep - d.q * em))


def cosh_q(x, d):
    d = _as_deformation(d)
    if d.q == 1.0:
        return math.cosh(x) if np.ndim(x) == 0 else np.cosh(x)
    ep, em = _exps(np.asarray(x, dtype=float))
    return _out(0.5 * (ep + d.q * em))


def tanh_q(x, d):
    d = _as_deformation(d)
    if d.q == 1.0:
        return math.tanh(x) if np.ndim(x) == 0 else np.tanh(x)
    x = np.asarray(x, dtype=float)
    # written in the shifted frame so it saturates cleanly instead of giving inf/inf
    y = x - d.ln_sqrt_q
    t = np.expm1(-2.0 * np.abs(y))
    return _out(-np.sign(y) * t / (2.0 + t))


def coth_q(x, d):
    d = _as_deformation(d)
    s = np.asarray(sinh_q(x, d))
    if np.any(np.abs(s) < _POLE_EPS):
        raise PoleError("coth_q has a pole at x = ln sqrt(q)", where=d.ln_sqrt_q)
    return _out(np.asarray(cosh_q(x, d)) / s)
