"""The q-deformed potentials V1..V8, V7', V8'.

A :class:`PotentialSpec` names a potential kind with its raw parameters, the
deformation ``q`` and the unit constants. ``evaluate`` works in the raw frame with
the deformed functions of :mod:`qdeform.qhyp`. ``reduce_to_shifted`` moves to
``y = x - ln sqrt(q)``, where every potential is an ordinary hyperbolic one with
rescaled strengths; all solvers downstream work in that frame.

Energies are in absolute units. The natural energy scale is ``kappa = hbar^2/2m``,
which is 1 for the default ``hbar = 1, m = 1/2``.
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.special import expit

from . import qhyp
from .errors import ContractError, DomainError

# the conditionally solvable kinds are exactly solvable only for this C (in units of kappa)
SOLVABLE_C = -0.75
DEFAULT_GUARD = 1e-8


class Kind(str, Enum):
    V1 = "V1"
    V2 = "V2"
    V3 = "V3"
    V4 = "V4"
    V5 = "V5"
    V6 = "V6"
    V7 = "V7"
    V7p = "V7p"
    V8 = "V8"
    V8p = "V8p"


PARAM_NAMES = {
    Kind.V1: ("nu",),
    Kind.V2: ("eta", "nu"),
    Kind.V3: ("alpha", "lambda"),
    Kind.V4: ("beta", "lambda"),
    Kind.V5: ("V0", "V1", "V2"),
    Kind.V6: ("V0", "V1", "V2"),
    Kind.V7: ("A", "B", "C"),
    Kind.V7p: ("A", "B", "C"),
    Kind.V8: ("f", "h1", "C"),
    Kind.V8p: ("f", "h1", "C"),
}

# V1 is written with nu in the potential and lambda in its solution; accept both
_ALIASES = {Kind.V1: {"lambda": "nu"}, Kind.V8: {"h": "h1"}, Kind.V8p: {"h": "h1"}}
_DEFAULTS = {Kind.V5: {"V0": 0.0}, Kind.V6: {"V0": 0.0},
             Kind.V7: {"C": SOLVABLE_C}, Kind.V7p: {"C": SOLVABLE_C},
             Kind.V8: {"C": SOLVABLE_C}, Kind.V8p: {"C": SOLVABLE_C}}

HALF_LINE = frozenset({Kind.V2, Kind.V3, Kind.V5, Kind.V8, Kind.V8p})
CONDITIONAL = frozenset({Kind.V7, Kind.V7p, Kind.V8, Kind.V8p})


class ConditionalSolvabilityWarning(UserWarning):
    """C differs from the value for which V7/V8 are exactly solvable."""


@dataclass(frozen=True)
class PotentialSpec:
    kind: Kind
    params: dict
    q: float = 1.0
    hbar: float = 1.0
    mass: float = 0.5

    def __post_init__(self):
        try:
            kind = Kind(self.kind)
        except ValueError:
            raise DomainError(f"unknown potential kind {self.kind!r}") from None
        object.__setattr__(self, "kind", kind)
        names = PARAM_NAMES[kind]
        given = {}
        for k, v in dict(self.params).items():
            k = _ALIASES.get(kind, {}).get(k, k)
            if k not in names:
                raise DomainError(f"{kind.value} has no parameter {k!r}; expected {list(names)}")
            given[k] = float(v)
        for k in names:
            if k not in given:
                if k not in _DEFAULTS.get(kind, {}):
                    raise DomainError(f"{kind.value} needs parameter {k!r}")
                given[k] = _DEFAULTS[kind][k]
        for k, v in given.items():
            if not math.isfinite(v):
                raise DomainError(f"parameter {k} must be finite")
        object.__setattr__(self, "params", {k: given[k] for k in names})
        for name in ("q", "hbar", "mass"):
            v = float(getattr(self, name))
            if not (v > 0 and math.isfinite(v)):
                raise DomainError(f"{name} must be a finite positive number, got {v!r}")
            object.__setattr__(self, name, v)

    def __getitem__(self, name):
        return self.params[name]

    @property
    def kappa(self) -> float:
        return self.hbar ** 2 / (2.0 * self.mass)

    @property
    def deformation(self) -> qhyp.Deformation:
        return qhyp.Deformation(self.q)

    @property
    def shift(self) -> float:
        return 0.5 * math.log(self.q)

    @property
    def half_line(self) -> bool:
        return self.kind in HALF_LINE

    def replace(self, **changes) -> "PotentialSpec":
        params = dict(self.params)
        params.update(changes.pop("params", {}))
        d = dict(kind=self.kind, params=params, q=self.q, hbar=self.hbar, mass=self.mass)
        d.update(changes)
        return PotentialSpec(**d)

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "q": self.q, "hbar": self.hbar, "mass": self.mass,
                **self.params}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "PotentialSpec":
        d = dict(d)
        if "kind" not in d:
            raise DomainError("potential record needs a 'kind'")
        kind = d.pop("kind")
        consts = {k: d.pop(k) for k in ("q", "hbar", "mass") if k in d}
        params = d.pop("params", {})
        params.update(d)
        return cls(kind=kind, params=params, **consts)

    @classmethod
    def from_json(cls, text: str) -> "PotentialSpec":
        return cls.from_dict(json.loads(text))


def check_conditional(spec: PotentialSpec) -> bool:
    """Warn (and return False) if a V7/V8 spec is off the solvable C."""
    if spec.kind in CONDITIONAL and abs(spec["C"] - SOLVABLE_C) > 1e-12:
        warnings.warn(f"{spec.kind.value}: C = {spec['C']} but the closed-form solution needs "
                      f"C = {SOLVABLE_C} (in units of hbar^2/2m); using C = {SOLVABLE_C}",
                      ConditionalSolvabilityWarning, stacklevel=3)
        return False
    return True


def deformed(g2: float, q: float) -> float:
    """Deformed index: returns t with t^2 = (g2 - 1/4)/q + 1/4 (g2 is the squared index).

    Raises DomainError when t^2 < 0, where the index is no longer real.
    """
    t2 = (g2 - 0.25) / q + 0.25
    if t2 < 0:
        raise DomainError(f"deformed index squared is negative ({t2:g})")
    return math.sqrt(t2)


@dataclass(frozen=True)
class ShiftedPotential:
    """A potential in the shifted frame, written with ordinary hyperbolic functions.

    ``coeffs`` holds the rescaled strengths; terms carrying ``hbar^2/2m`` are stored
    in units of ``kappa``, the bare V3 and V4 strengths alpha, beta in energy units.
    """

    kind: Kind
    coeffs: dict
    kappa: float
    half_line: bool

    def __call__(self, y):
        return _SHIFTED[self.kind](self.coeffs, self.kappa, np.asarray(y, dtype=float))

    @property
    def threshold(self) -> float:
        """Bottom of the continuum."""
        c, k = self.coeffs, self.kappa
        kind = self.kind
        if kind in (Kind.V1, Kind.V2):
            return 0.0
        if kind is Kind.V3:
            return -c["alpha"]
        if kind is Kind.V4:
            return -abs(c["beta"])
        if kind is Kind.V5:
            return k * (c["V0"] + c["V1"])
        if kind is Kind.V6:
            return k * (c["V0"] + c["V2"])
        if kind in (Kind.V7, Kind.V7p):
            right = k * (c["B"] + c["C"] - (c["A"] if kind is Kind.V7p else 0.0))
            left = -k * c["A"] if kind is Kind.V7 else 0.0
            return min(left, right)
        return k * (c["f"] + 1.0 - (c["f"] - 0.75) + c["C"] + (c["h"] if kind is Kind.V8p else 0.0))


def _v1(c, k, y):
    return -k * c["g"] / np.cosh(y) ** 2


def _v2(c, k, y):
    return k * (c["g_s"] / np.sinh(y) ** 2 - c["g_c"] / np.cosh(y) ** 2)


def _v3(c, k, y):
    return -c["alpha"] / np.tanh(y) + k * c["g_s"] / np.sinh(y) ** 2


def _v4(c, k, y):
    return c["beta"] * np.tanh(y) - k * c["g_c"] / np.cosh(y) ** 2


def _v5(c, k, y):
    s = np.sinh(y)
    return k * (c["V0"] + c["V1"] / np.tanh(y) ** 2 + c["V2"] / (np.tanh(y) * s))


def _v6(c, k, y):
    ch = np.cosh(y)
    t = np.tanh(y)
    return k * (c["V0"] + c["V1"] * t / ch + c["V2"] * t * t)


def _v7(c, k, y, primed=False):
    w = expit(2.0 * y)  # 1/(1+e^-2y)
    a = np.sqrt(w) if primed else np.sqrt(expit(-2.0 * y))  # e^-y/sqrt(1+e^-2y)
    return k * (-c["A"] * a + c["B"] * w + c["C"] * w * w)


def _v8(c, k, z, primed=False):
    w = -np.expm1(-2.0 * z)  # 1 - e^-2z
    h = c["h"] / np.sqrt(w) if primed else c["h"] / np.sqrt(np.expm1(2.0 * z))
    return k * (c["f"] + 1.0 - (c["f"] - 0.75) / w + h + c["C"] / (w * w))


_SHIFTED = {
    Kind.V1: _v1, Kind.V2: _v2, Kind.V3: _v3, Kind.V4: _v4, Kind.V5: _v5, Kind.V6: _v6,
    Kind.V7: _v7, Kind.V7p: lambda c, k, y: _v7(c, k, y, primed=True),
    Kind.V8: _v8, Kind.V8p: lambda c, k, y: _v8(c, k, y, primed=True),
}


def reduce_to_shifted(spec: PotentialSpec) -> tuple[ShiftedPotential, float]:
    """Shifted-frame description of ``spec`` and the shift ``ln sqrt(q)``."""
    p, q, kind = spec.params, spec.q, spec.kind
    sq = math.sqrt(q)
    if kind is Kind.V1:
        c = {"g": (p["nu"] ** 2 - 0.25) / q}
    elif kind is Kind.V2:
        c = {"g_s": (p["eta"] ** 2 - 0.25) / q, "g_c": (p["nu"] ** 2 - 0.25) / q}
    elif kind is Kind.V3:
        c = {"alpha": p["alpha"], "g_s": (p["lambda"] ** 2 - 0.25) / q}
    elif kind is Kind.V4:
        c = {"beta": p["beta"], "g_c": (p["lambda"] ** 2 - 0.25) / q}
    elif kind is Kind.V5:
        c = {"V0": p["V0"], "V1": p["V1"], "V2": p["V2"] / sq}
    elif kind is Kind.V6:
        c = {"V0": p["V0"], "V1": p["V1"] / sq, "V2": p["V2"]}
    elif kind is Kind.V7:
        c = {"A": p["A"] / sq, "B": p["B"], "C": p["C"]}
    elif kind is Kind.V7p:
        c = {"A": p["A"], "B": p["B"], "C": p["C"]}
    elif kind is Kind.V8:
        c = {"f": p["f"], "h": p["h1"] / sq, "C": p["C"]}
    else:
        c = {"f": p["f"], "h": p["h1"], "C": p["C"]}
    return ShiftedPotential(kind, c, spec.kappa, spec.half_line), spec.shift


def equivalent_undeformed(spec: PotentialSpec) -> PotentialSpec:
    """The q = 1 spec whose potential equals ``spec``'s in the shifted frame."""
    p, q, kind = spec.params, spec.q, spec.kind
    sq = math.sqrt(q)
    if kind is Kind.V1:
        new = {"nu": deformed(p["nu"] ** 2, q)}
    elif kind is Kind.V2:
        new = {"eta": deformed(p["eta"] ** 2, q), "nu": deformed(p["nu"] ** 2, q)}
    elif kind in (Kind.V3, Kind.V4):
        new = {"lambda": deformed(p["lambda"] ** 2, q)}
    elif kind is Kind.V5:
        new = {"V2": p["V2"] / sq}
    elif kind is Kind.V6:
        new = {"V1": p["V1"] / sq}
    elif kind is Kind.V7:
        new = {"A": p["A"] / sq}
    elif kind is Kind.V8:
        new = {"h1": p["h1"] / sq}
    else:
        new = {}
    return spec.replace(q=1.0, params=new)


def check_domain(spec: PotentialSpec, x, guard: float = 0.0):
    """Raise DomainError if any raw-frame x lies outside the kind's domain."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("coordinate must be finite")
    if spec.half_line and np.any(x <= spec.shift + guard):
        raise DomainError(f"{spec.kind.value} lives on x > ln sqrt(q) = {spec.shift:g}")


def evaluate(spec: PotentialSpec, x):
    """V(x) in the raw frame, from the deformed functions."""
    check_domain(spec, x)
    d = spec.deformation
    p, k, q = spec.params, spec.kappa, spec.q
    kind = spec.kind
    xa = np.asarray(x, dtype=float)
    if kind is Kind.V1:
        v = -k * (p["nu"] ** 2 - 0.25) / np.asarray(qhyp.cosh_q(xa, d)) ** 2
    elif kind is Kind.V2:
        v = k * ((p["eta"] ** 2 - 0.25) / np.asarray(qhyp.sinh_q(xa, d)) ** 2
                 - (p["nu"] ** 2 - 0.25) / np.asarray(qhyp.cosh_q(xa, d)) ** 2)
    elif kind is Kind.V3:
        v = (-p["alpha"] * np.asarray(qhyp.coth_q(xa, d))
             + k * (p["lambda"] ** 2 - 0.25) / np.asarray(qhyp.sinh_q(xa, d)) ** 2)
    elif kind is Kind.V4:
        v = (p["beta"] * np.asarray(qhyp.tanh_q(xa, d))
             - k * (p["lambda"] ** 2 - 0.25) / np.asarray(qhyp.cosh_q(xa, d)) ** 2)
    elif kind is Kind.V5:
        ct = np.asarray(qhyp.coth_q(xa, d))
        v = k * (p["V0"] + p["V1"] * ct ** 2 + p["V2"] * ct / np.asarray(qhyp.sinh_q(xa, d)))
    elif kind is Kind.V6:
        t = np.asarray(qhyp.tanh_q(xa, d))
        v = k * (p["V0"] + p["V1"] * t / np.asarray(qhyp.cosh_q(xa, d)) + p["V2"] * t * t)
    elif kind in (Kind.V7, Kind.V7p):
        em = np.exp(-xa)
        w = 1.0 + q * em * em
        a = 1.0 if kind is Kind.V7p else em
        v = k * (-p["A"] * a / np.sqrt(w) + p["B"] / w + p["C"] / w ** 2)
    else:
        em = np.exp(-xa)
        w = 1.0 - q * em * em
        a = 1.0 if kind is Kind.V8p else em
        v = k * (p["f"] + 1.0 - (p["f"] - 0.75) / w + p["h1"] * a / np.sqrt(w) + p["C"] / w ** 2)
    v = np.asarray(v, dtype=float)
    if not np.all(np.isfinite(v)):
        raise DomainError(f"{kind.value} is not finite at some requested point")
    return float(v) if v.ndim == 0 else v


def evaluate_shifted(spec: PotentialSpec, y):
    """V at shifted coordinate ``y = x - ln sqrt(q)``."""
    sp, _ = reduce_to_shifted(spec)
    y = np.asarray(y, dtype=float)
    if sp.half_line and np.any(y <= 0):
        raise DomainError(f"{spec.kind.value} lives on y > 0")
    v = sp(y)
    return float(v) if np.ndim(v) == 0 else v


@dataclass(frozen=True)
class EffectiveParams:
    """Derived symbols of a potential at a given energy (and level index).

    Fields that the kind does not use are None. Energies are absolute; ``B_t`` and
    ``n_t`` carry energy units (``n_t`` as sqrt(energy)) the way they enter the
    V7 cubic. ``m1``, ``m2``, ``L`` are arranged so that ``Gamma(m1 - L)`` carries
    the bound-state poles of the Green function.
    """

    kind: Kind
    lambda_t: float | None = None
    eta_t: float | None = None
    nu_t: float | None = None
    s: float | None = None
    B_t: float | None = None
    m1: complex | None = None
    m2: complex | None = None
    L: complex | None = None
    k1: complex | None = None
    k2: complex | None = None
    n_t: float | None = None
    cubic_lambda: float | None = None
    extra: dict = field(default_factory=dict)


def csqrt(z) -> complex:
    """Principal square root, with the branch for negative reals placed so that
    sqrt(-E) > 0 for E < 0 and Re sqrt >= 0 in general."""
    z = complex(z)
    r = np.sqrt(z)
    return complex(r)


def decay(E, threshold, kappa) -> complex:
    """sqrt((threshold - E)/kappa): the decay rate of a bound state below ``threshold``."""
    return csqrt((threshold - complex(E)) / kappa)


_LEVEL_KINDS = frozenset({Kind.V3, Kind.V4, Kind.V7})


def effective_params(spec: PotentialSpec, E=None, n: int | None = None) -> EffectiveParams:
    sp, _ = reduce_to_shifted(spec)
    c, kap, kind = sp.coeffs, spec.kappa, spec.kind
    if n is not None:
        if kind not in _LEVEL_KINDS:
            raise ContractError(f"{kind.value} has no level-dependent symbols")
        if n < 0 or int(n) != n:
            raise ContractError("level index must be a non-negative integer")
        n = int(n)
    out = {}
    if kind is Kind.V1:
        lt = math.sqrt(max(c["g"] + 0.25, 0.0))
        out.update(lambda_t=lt, s=2 * lt, L=lt - 0.5)
        if E is not None:
            out["m1"] = decay(E, 0.0, kap)
    elif kind is Kind.V2:
        et, nt = math.sqrt(max(c["g_s"] + 0.25, 0.0)), math.sqrt(max(c["g_c"] + 0.25, 0.0))
        out.update(eta_t=et, nu_t=nt, L=(nt - 1) / 2, k1=(1 + nt) / 2, k2=(1 + et) / 2)
        if E is not None:
            k = decay(E, 0.0, kap)
            out.update(m1=(et + k) / 2, m2=(et - k) / 2)
    elif kind is Kind.V3:
        lt = math.sqrt(max(c["g_s"] + 0.25, 0.0))
        out.update(lambda_t=lt, s=2 * lt, k2=(1 + 2 * lt) / 2)
        if E is not None:
            k = decay(E, -c["alpha"], kap)
            out.update(m1=(2 * lt + k) / 2, m2=(2 * lt - k) / 2,
                       L=-0.5 + decay(E, c["alpha"], kap) / 2)
        if n is not None:
            N = n + lt + 0.5
            out["k1"] = (1 + N + c["alpha"] / (2 * kap * N)) / 2
    elif kind is Kind.V4:
        lt = math.sqrt(max(c["g_c"] + 0.25, 0.0))
        out.update(lambda_t=lt, s=2 * lt, L=lt - 0.5, k1=(1 + 2 * lt) / 2)
        if E is not None:
            a, b = decay(E, c["beta"], kap), decay(E, -c["beta"], kap)
            out.update(m1=(a + b) / 2, m2=(b - a) / 2)
        if n is not None:
            N = lt - 0.5 - n
            out["k2"] = (1 + N - c["beta"] / (2 * kap * N)) / 2 if N != 0 else None
    elif kind is Kind.V5:
        et = csqrt(c["V1"] + c["V2"] + 0.25)
        nt = csqrt(c["V1"] - c["V2"] + 0.25)
        out.update(eta_t=et.real, nu_t=nt.real, L=(nt - 1) / 2, k1=(1 + nt) / 2, k2=(1 + et) / 2)
        if E is not None:
            k = decay(E, sp.threshold, kap)  # decay rate in y; the t = y/2 problem has 2k
            out.update(m1=et / 2 + k, m2=et / 2 - k)
    elif kind is Kind.V6:
        lam = csqrt(c["V2"] + 0.25 + 1j * c["V1"])
        out.update(lambda_t=lam.real, L=lam.real - 0.5, k1=(1 + lam) / 2,
                   k2=(1 - lam.conjugate()) / 2, extra={"lambda": lam})
        if E is not None:
            out["m1"] = decay(E, sp.threshold, kap)
    elif kind is Kind.V7:
        check_conditional(spec)
        bt = kap * c["A"]
        a = kap * (c["B"] + SOLVABLE_C)
        out.update(B_t=bt, extra={"a": a})
        if n is not None:
            nt = math.sqrt(kap) * (n + 0.5)
            out.update(n_t=nt, cubic_lambda=a + nt * nt)
        if E is not None:
            eta = decay(E, -bt, kap)
            nu = decay(E, bt, kap)
            kt = 2 * decay(E, a, kap)
            out.update(eta_t=eta.real, nu_t=nu.real, L=(nu - 1) / 2,
                       m1=(eta + kt) / 2, m2=(eta - kt) / 2, k1=(1 + nu) / 2, k2=(1 + eta) / 2)
    elif kind is Kind.V8:
        check_conditional(spec)
        out["B_t"] = kap * c["h"]
        if E is not None:
            e = complex(E) / kap
            lam = csqrt(c["f"] + 1 - e + 1j * c["h"])
            lamc = csqrt(c["f"] + 1 - e - 1j * c["h"])
            root = csqrt(0.25 - c["f"])
            out.update(L=(lam - 1) / 2, m1=-lamc / 2 + root, m2=-lamc / 2 - root,
                       k1=decay(E, sp.threshold, kap))
    else:
        raise ContractError(f"{kind.value} has no closed-form parameter set")
    return EffectiveParams(kind=kind, **out)
