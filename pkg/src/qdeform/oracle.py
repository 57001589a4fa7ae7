"""Finite-difference Schrodinger eigenvalue oracle.

The Hamiltonian ``-(hbar^2/2m) d^2/du^2 + W(u)`` is discretized with the three-point
stencil on a uniform grid with Dirichlet ends. Eigenvalues come from Sturm-count
bisection on the symmetric tridiagonal matrix, so the number of levels below any
energy is exact for the discrete problem.

A grid may carry a positive weight ``w(u)``; the problem is then the pencil
``K phi = E M phi`` with ``M = diag(w)``. This is how the V8 problem is solved on a
mapped coordinate (see :func:`problem_for`), where a uniform grid in the original
variable converges poorly against the ``-3/(16 z^2)`` wall.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numba
import numpy as np
from scipy.linalg import solve_banded

from .errors import ContractError, DomainError, NumericError
from .potentials import Kind, PotentialSpec, check_conditional, reduce_to_shifted

DEFAULT_POINTS = 6000
FULL_SPAN = 25.0
HALF_SPAN = 30.0
HALF_GUARD = 1e-4


@dataclass(frozen=True)
class GridProblem:
    """Dirichlet problem on [x_min, x_max] with ``n_points`` grid points including the ends.

    ``potential`` maps an array of interior grid coordinates to W; ``weight`` (optional)
    maps them to the positive mass weight w.
    """

    x_min: float
    x_max: float
    n_points: int
    potential: Callable
    hbar: float = 1.0
    mass: float = 0.5
    boundary: str = "dirichlet_both"
    weight: Callable | None = None

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise DomainError("grid needs x_min < x_max")
        if self.n_points < 3:
            raise DomainError("grid needs at least 3 points")
        if self.boundary != "dirichlet_both":
            raise DomainError(f"unsupported boundary {self.boundary!r}")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def kappa(self) -> float:
        return self.hbar ** 2 / (2.0 * self.mass)

    @property
    def interior(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)[1:-1]

    def refined(self, factor: int = 2) -> "GridProblem":
        """Same problem with the spacing divided by ``factor``."""
        return GridProblem(self.x_min, self.x_max, (self.n_points - 1) * factor + 1,
                           self.potential, self.hbar, self.mass, self.boundary, self.weight)

    def matrices(self):
        """Diagonal and off-diagonal of K, and the diagonal of M."""
        x = self.interior
        v = np.asarray(self.potential(x), dtype=float)
        bad = ~np.isfinite(v)
        if bad.any():
            raise DomainError(f"potential is not finite at grid point x = {x[np.argmax(bad)]:.6g}")
        c = self.kappa / self.h ** 2
        diag = 2.0 * c + v
        off = np.full(len(x) - 1, -c)
        w = np.ones_like(x) if self.weight is None else np.asarray(self.weight(x), dtype=float)
        if np.any(w <= 0) or not np.all(np.isfinite(w)):
            raise DomainError("grid weight must be positive and finite")
        return diag, off, w


@numba.njit(cache=True)
def _count_below(diag, off2, w, lam):
    # inertia of K - lam M through the LDL^T pivots
    count = 0
    d = diag[0] - lam * w[0]
    if d < 0.0:
        count += 1
    for i in range(1, diag.shape[0]):
        if d == 0.0:
            d = 1e-300
        d = diag[i] - lam * w[i] - off2[i - 1] / d
        if d < 0.0:
            count += 1
    return count


@numba.njit(cache=True)
def _bisect(diag, off2, w, index, lo, hi, tol):
    # the index-th eigenvalue (0-based) lies in [lo, hi]
    while hi - lo > tol * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if _count_below(diag, off2, w, mid) > index:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _bounds(diag, off, w):
    r = np.abs(np.concatenate(([0.0], off))) + np.abs(np.concatenate((off, [0.0])))
    lo = np.min((diag - r) / w)
    hi = np.max((diag + r) / w)
    span = hi - lo
    return lo - 1e-3 * span - 1.0, hi + 1e-3 * span + 1.0


def count_below(p: GridProblem, energy: float) -> int:
    """Number of discrete eigenvalues strictly below ``energy``."""
    diag, off, w = p.matrices()
    return int(_count_below(diag, off * off, w, float(energy)))


def lowest_eigenvalues(p: GridProblem, k: int, tol: float = 1e-12) -> np.ndarray:
    """The ``k`` smallest eigenvalues, bisected to ``tol`` (relative to max(1, |E|))."""
    if k < 1:
        raise ContractError("need k >= 1")
    diag, off, w = p.matrices()
    if k > len(diag):
        raise ContractError(f"grid has only {len(diag)} eigenvalues")
    lo, hi = _bounds(diag, off, w)
    off2 = off * off
    out = np.empty(k)
    for i in range(k):
        out[i] = _bisect(diag, off2, w, i, lo, hi, tol)
        lo = out[i] - 1e-9 * max(1.0, abs(out[i]))
    return out


def eigenvalues_below(p: GridProblem, energy: float, tol: float = 1e-12) -> np.ndarray:
    """All discrete eigenvalues below ``energy``."""
    n = count_below(p, energy)
    return lowest_eigenvalues(p, n, tol) if n else np.empty(0)


def eigenvector(p: GridProblem, index: int, energy: float | None = None,
                max_iter: int = 50) -> tuple[np.ndarray, np.ndarray]:
    """Inverse-iteration eigenvector of level ``index``.

    Returns grid coordinates (ends included) and the eigenvector, normalized so that
    ``sum(w * psi^2) * h = 1`` and positive at its first antinode.
    """
    diag, off, w = p.matrices()
    if not 0 <= index < len(diag):
        raise ContractError("eigenvector index out of range")
    lam = lowest_eigenvalues(p, index + 1)[index] if energy is None else float(energy)
    shift = lam + 1e-10 * max(1.0, abs(lam))
    ab = np.zeros((3, len(diag)))
    ab[0, 1:] = off
    ab[1] = diag - shift * w
    ab[2, :-1] = off
    v = np.random.default_rng(index).standard_normal(len(diag))
    v /= np.linalg.norm(v)
    for _ in range(max_iter):
        u = solve_banded((1, 1), ab, w * v)
        u /= math.sqrt(np.sum(w * u * u))
        if min(np.linalg.norm(u - v), np.linalg.norm(u + v)) < 1e-12:
            v = u
            break
        v = u
    else:
        raise NumericError(f"inverse iteration for level {index} did not converge")
    v = v / math.sqrt(np.sum(w * v * v) * p.h)
    a = np.abs(v)
    peaks = np.flatnonzero((a[1:-1] >= a[:-2]) & (a[1:-1] >= a[2:]) & (a[1:-1] > 1e-3 * a.max()))
    first = peaks[0] + 1 if len(peaks) else int(np.argmax(a))
    if v[first] < 0:
        v = -v
    x = np.linspace(p.x_min, p.x_max, p.n_points)
    return x, np.concatenate(([0.0], v, [0.0]))


@dataclass(frozen=True)
class Refined:
    coarse: np.ndarray
    fine: np.ndarray
    extrapolated: np.ndarray
    order: np.ndarray | None = None


def refine(p: GridProblem, k: int, estimate_order: bool = False) -> Refined:
    """Richardson extrapolation from spacings h and h/2 assuming O(h^2) error.

    With ``estimate_order`` a third solve at h/4 gives the observed order
    ``log2((E_h - E_h/2)/(E_h/2 - E_h/4))``.
    """
    e1 = lowest_eigenvalues(p, k)
    p2 = p.refined(2)
    e2 = lowest_eigenvalues(p2, k)
    ext = e2 + (e2 - e1) / 3.0
    order = None
    if estimate_order:
        e4 = lowest_eigenvalues(p2.refined(2), k)
        with np.errstate(divide="ignore", invalid="ignore"):
            order = np.log2((e1 - e2) / (e2 - e4))
    return Refined(e1, e2, ext, order)


# --- problems built from potential specs -------------------------------------------------

def _v8_mapped(spec: PotentialSpec):
    """Potential and weight of V8 on u with e^z = cosh u; the wall z = 0 sits at u = 0.

    With z = g(u), psi(z) = sqrt(g') phi(u) turns -psi'' + V psi = E psi into
    -phi'' + [g'^2 V - (1/2){g, u}] phi = E g'^2 phi, and g' = tanh u.
    """
    sp, _ = reduce_to_shifted(spec)
    kap = spec.kappa

    def potential(u):
        g1 = np.tanh(u)
        # g'^2 V written out so the 1/z^2-type terms cancel analytically
        c = sp.coeffs
        w = g1 * g1  # 1 - e^-2z
        h = c["h"] / np.sinh(u) if spec.kind is Kind.V8 else c["h"] / g1
        base = kap * (w * (c["f"] + 1.0) - (c["f"] - 0.75) + w * h + c["C"] / w)
        schw = kap * (0.25 / np.cosh(u) ** 2 + 0.75 / np.sinh(u) ** 2)
        return base + schw

    def weight(u):
        return np.tanh(u) ** 2

    return potential, weight


def problem_for(spec: PotentialSpec, n_points: int = DEFAULT_POINTS, span: float | None = None,
                guard: float = HALF_GUARD) -> GridProblem:
    """Grid problem for a potential, in the shifted frame.

    Full-line kinds use [-span, span]; half-line kinds [guard, span]. V8 and V8'
    are solved on the mapped coordinate u (e^z = cosh u) over [0, span].
    """
    sp, _ = reduce_to_shifted(spec)
    if spec.kind in (Kind.V8, Kind.V8p):
        if spec.kind is Kind.V8:
            check_conditional(spec)
        pot, wt = _v8_mapped(spec)
        return GridProblem(0.0, span or HALF_SPAN, n_points, pot, spec.hbar, spec.mass, weight=wt)
    if sp.half_line:
        return GridProblem(guard, span or HALF_SPAN, n_points, sp, spec.hbar, spec.mass)
    s = span or FULL_SPAN
    return GridProblem(-s, s, n_points, sp, spec.hbar, spec.mass)


def threshold(spec: PotentialSpec) -> float:
    return reduce_to_shifted(spec)[0].threshold


def bound_levels(spec: PotentialSpec, n_points: int = DEFAULT_POINTS, span: float | None = None,
                 margin: float = 0.0) -> np.ndarray:
    """Oracle eigenvalues below the continuum threshold (minus ``margin``)."""
    return eigenvalues_below(problem_for(spec, n_points, span), threshold(spec) - margin)
