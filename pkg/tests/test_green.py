import warnings

import numpy as np
import pytest

from qdeform.catalog import catalog
from qdeform.errors import ContractError, DomainError, PoleError
from qdeform.green import (default_window, green, green_eval, inverse_green, pole_scan,
                           probe_points, scan_table)
from qdeform.potentials import Kind, PotentialSpec, effective_params, evaluate
from qdeform.spectra import spectrum

GREEN_KINDS = (Kind.V1, Kind.V2, Kind.V3, Kind.V4, Kind.V5, Kind.V6, Kind.V7, Kind.V8)


def _points(spec):
    s = spec.shift
    return (s + 0.4, s + 1.3) if spec.half_line else (s - 0.7, s + 0.9)


def _energy(spec):
    """A real energy between levels (or below the lowest one)."""
    E = spectrum(spec).energies
    return E[0] - 0.37 if len(E) else -1.0


@pytest.mark.parametrize("point", [catalog(k)[0] for k in GREEN_KINDS], ids=lambda p: p.label)
def test_symmetry(point):
    spec = point.spec
    a, b = _points(spec)
    E = _energy(spec)
    assert green(spec, a, b, E) == pytest.approx(green(spec, b, a, E), rel=1e-12)


@pytest.mark.parametrize("point", [catalog(k)[0] for k in GREEN_KINDS], ids=lambda p: p.label)
def test_solves_schrodinger_and_jump(point):
    """(-kappa d^2/dx^2 + V - E) G = 0 off the diagonal, and dG/dx jumps by -1/kappa."""
    spec = point.spec
    a, b = _points(spec)
    E = _energy(spec)
    k = spec.kappa
    h = 1e-3
    for x in (a - 0.15 if not spec.half_line else a - 0.1, b + 0.3):
        g = [green(spec, x + j * h, a + 0.05, E).real for j in (-2, -1, 0, 1, 2)]
        d2 = (-g[0] + 16 * g[1] - 30 * g[2] + 16 * g[3] - g[4]) / (12 * h * h)
        res = -k * d2 + (evaluate(spec, x) - E) * g[2]
        assert abs(res) < 1e-6 * max(1.0, abs(k * d2), abs((evaluate(spec, x) - E) * g[2]))
    x0 = b
    right = (green(spec, x0 + 1e-6, x0, E) - green(spec, x0, x0, E)).real / 1e-6
    left = (green(spec, x0, x0, E) - green(spec, x0 - 1e-6, x0, E)).real / 1e-6
    assert right - left == pytest.approx(-1.0 / k, rel=1e-4)


@pytest.mark.parametrize("point", [catalog(k)[0] for k in GREEN_KINDS], ids=lambda p: p.label)
def test_continuity_on_diagonal(point):
    spec = point.spec
    _, b = _points(spec)
    E = _energy(spec)
    g0 = green(spec, b, b, E)
    assert green(spec, b + 1e-9, b, E) == pytest.approx(g0, rel=1e-7)
    assert green(spec, b - 1e-9, b, E) == pytest.approx(g0, rel=1e-7)


def test_v1_inverse_green_crosses_zero_at_levels():
    spec = PotentialSpec(Kind.V1, {"lambda": 2.5})
    for level in (-4.0, -1.0):
        lo, hi = inverse_green(spec, 0.2, level - 1e-3), inverse_green(spec, 0.2, level + 1e-3)
        assert lo * hi < 0
    assert pole_scan(spec) == pytest.approx([-4.0, -1.0], abs=1e-9)


def test_pole_error_carries_level():
    spec = PotentialSpec(Kind.V1, {"lambda": 2.5})
    with pytest.raises(PoleError) as info:
        green(spec, 0.1, 0.3, -1.0)
    assert info.value.where == -1.0


@pytest.mark.parametrize("point", [p for p in catalog() if p.kind in (Kind.V2, Kind.V8)],
                         ids=lambda p: p.label)
def test_pole_scan_matches_spectrum(point):
    E = spectrum(point.spec).energies
    assert pole_scan(point.spec) == pytest.approx(E, abs=1e-8)


def test_pole_scan_empty_window():
    spec = PotentialSpec(Kind.V1, {"lambda": 2.5})
    assert pole_scan(spec, (-3.5, -1.5)) == []
    assert pole_scan(spec, (-1.0, -2.0)) == []


@pytest.mark.parametrize("point", [p for p in catalog() if p.kind not in (Kind.V7, Kind.V8)],
                         ids=lambda p: p.label)
def test_gamma_prefactor_poles(point):
    for lv in spectrum(point.spec).levels:
        ep = effective_params(point.spec, E=lv.energy)
        assert complex(ep.m1 - ep.L) == pytest.approx(-lv.n, abs=1e-9)


def test_v8_vanishes_at_wall():
    spec = catalog(Kind.V8)[0].spec
    E = spectrum(spec).energies[0] + 0.5
    ref = abs(green(spec, 1.0, 1.0, E))
    vals = [abs(green(spec, d, 1.0, E)) / ref for d in (1e-2, 1e-4, 1e-6, 1e-8)]
    assert vals == sorted(vals, reverse=True)
    assert green(spec, 0.0, 1.0, E) == 0


def test_contract_and_domain_errors():
    with pytest.raises(ContractError):
        green(PotentialSpec(Kind.V7p, {"A": 5.0, "B": -3.0}), 0.0, 1.0, -1.0)
    with pytest.raises(DomainError):
        green(PotentialSpec(Kind.V2, {"eta": 1.5, "nu": 7.5}), -0.5, 1.0, -1.0)
    with pytest.raises(DomainError):
        green(PotentialSpec(Kind.V8, {"f": 12.0, "h1": 3.0}), -0.5, 1.0, -1.0)


def test_green_eval_ordering():
    spec = PotentialSpec(Kind.V1, {"lambda": 2.5})
    ge = green_eval(spec, 1.5, -0.5, -2.0)
    assert ge.ordered == (-0.5, 1.5)
    assert ge.value == green(spec, -0.5, 1.5, -2.0)


def test_complex_energy_off_axis():
    spec = PotentialSpec(Kind.V1, {"lambda": 2.5})
    g = green(spec, 0.3, 0.3, -1.0 + 1e-3j)
    # near a pole the resolvent is dominated by psi_1(x)^2 / (E_1 - E)
    assert abs(g) > 10


def test_default_window_and_probes():
    spec = catalog(Kind.V3)[0].spec
    lo, hi = default_window(spec)
    E = spectrum(spec).energies
    assert lo < E[0] and E[-1] < hi
    assert len(probe_points(spec)) == 3
    assert all(x > spec.shift for x in probe_points(spec))


def test_scan_table():
    spec = PotentialSpec(Kind.V1, {"lambda": 2.5})
    lines = scan_table(spec, 0.2, (-5.0, -0.5), 10).splitlines()
    assert lines[0] == "E,re_invG,im_invG" and len(lines) == 11
    E = [float(line.split(",")[0]) for line in lines[1:]]
    assert E[0] == -5.0 and E[-1] == -0.5


def test_v7_green_is_off_conditional_with_warning():
    spec = PotentialSpec(Kind.V7, {"A": 10.0, "B": -7.0, "C": 0.5})
    with warnings.catch_warnings(record=True) as rec:
        warnings.simplefilter("always")
        green(spec, 0.0, 0.5, -20.0)
    assert rec
