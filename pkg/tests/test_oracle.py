import math

import numpy as np
import pytest

from qdeform.catalog import catalog
from qdeform.errors import ContractError, DomainError
from qdeform.oracle import (GridProblem, count_below, eigenvalues_below, eigenvector,
                            lowest_eigenvalues, problem_for, refine, threshold)
from qdeform.potentials import Kind, PotentialSpec
from qdeform.spectra import numeric_spectrum, spectrum


def box(n_points=2001):
    return GridProblem(0.0, math.pi, n_points, lambda x: np.zeros_like(x))


def sech_well(n_points=4000):
    return GridProblem(-20.0, 20.0, n_points, lambda x: -6.0 / np.cosh(x) ** 2)


def nodes(v):
    a = np.abs(v)
    s = np.sign(v[a > 1e-6 * a.max()])
    return int(np.sum(s[1:] != s[:-1]))


def test_particle_in_a_box():
    E = lowest_eigenvalues(box(), 4)
    h = math.pi / 2000
    # exact eigenvalues of the three-point Laplacian
    exact = [(2 - 2 * math.cos(n * h)) / h ** 2 for n in range(1, 5)]
    assert E == pytest.approx(exact, rel=1e-9)
    assert E == pytest.approx([1.0, 4.0, 9.0, 16.0], rel=1e-5)


def test_sech_well():
    # the three-point scheme is O(h^2): about 4e-5 at h = 0.01, removed by extrapolation
    assert lowest_eigenvalues(sech_well(), 2) == pytest.approx([-4.0, -1.0], abs=5e-5)
    assert eigenvalues_below(sech_well(), 0.0) == pytest.approx([-4.0, -1.0], abs=5e-5)
    assert refine(sech_well(), 2).extrapolated == pytest.approx([-4.0, -1.0], abs=1e-7)


def test_harmonic_oscillator():
    p = GridProblem(-12.0, 12.0, 16001, lambda x: x * x)
    assert lowest_eigenvalues(p, 4) == pytest.approx([1.0, 3.0, 5.0, 7.0], abs=1e-5)


def test_sturm_counts_and_ordering():
    p = sech_well()
    E = lowest_eigenvalues(p, 6)
    assert np.all(np.diff(E) > 0)
    for i, e in enumerate(E):
        assert count_below(p, e - 1e-9) == i
        assert count_below(p, e + 1e-9) == i + 1


def test_eigenvectors():
    x, v = eigenvector(box(), 0)
    assert nodes(v) == 0 and v[len(v) // 2] > 0
    assert np.max(np.abs(v - np.sin(x) * math.sqrt(2 / math.pi))) < 1e-5
    p = sech_well()
    vs = [eigenvector(p, i)[1] for i in range(3)]
    assert nodes(vs[1]) == 1
    G = np.array([[np.sum(a * b) * p.h for b in vs] for a in vs])
    assert np.max(np.abs(G - np.eye(3))) < 1e-10


def test_eigenvector_index_range():
    with pytest.raises(ContractError):
        eigenvector(box(11), 9)


def test_richardson_box():
    r = refine(box(401), 1, estimate_order=True)
    assert abs(r.extrapolated[0] - 1.0) * 10 < abs(r.coarse[0] - 1.0)
    assert 1.9 <= r.order[0] <= 2.1


def test_richardson_sech_well():
    r = refine(sech_well(), 2, estimate_order=True)
    assert abs(r.extrapolated[0] + 4.0) < 1e-7
    assert np.all((1.9 <= r.order) & (r.order <= 2.1))


def test_truncation_raises_levels():
    # same spacing, smaller box: Dirichlet truncation can only push levels up
    small = GridProblem(-4.0, 4.0, 801, lambda x: -6.0 / np.cosh(x) ** 2)
    large = GridProblem(-8.0, 8.0, 1601, lambda x: -6.0 / np.cosh(x) ** 2)
    assert np.all(lowest_eigenvalues(small, 2) > lowest_eigenvalues(large, 2))


def test_discretization_approaches_from_below():
    # the three-point Laplacian underestimates kinetic energy, so raw levels sit below
    r = refine(sech_well(2000), 2)
    assert np.all(r.coarse < r.fine) and np.all(r.fine < [-4.0, -1.0])


@pytest.mark.parametrize("point", [p for p in catalog() if p.kind in (Kind.V1, Kind.V4, Kind.V6)],
                         ids=lambda p: p.label)
def test_domain_extension_stability(point):
    spec = point.spec
    k = len(spectrum(spec))
    a = lowest_eigenvalues(problem_for(spec, 8001, 30.0), k)
    b = lowest_eigenvalues(problem_for(spec, 16001, 60.0), k)
    # same spacing, twice the half-width
    assert np.max(np.abs(a - b)) < 1e-9


def test_non_finite_potential():
    p = GridProblem(-1.0, 1.0, 11, lambda x: np.where(x == 0, np.inf, 0.0))
    with pytest.raises(DomainError):
        lowest_eigenvalues(p, 1)


def test_grid_validation():
    with pytest.raises(DomainError):
        GridProblem(1.0, 0.0, 10, np.zeros_like)
    with pytest.raises(DomainError):
        GridProblem(0.0, 1.0, 2, np.zeros_like)
    with pytest.raises(DomainError):
        GridProblem(0.0, 1.0, 10, np.zeros_like, boundary="periodic")
    with pytest.raises(ContractError):
        lowest_eigenvalues(box(11), 0)


def test_problem_for_frames():
    p = problem_for(PotentialSpec(Kind.V3, {"alpha": 20.0, "lambda": 1.5}, q=4.0))
    assert p.x_min > 0 and p.x_max == 30.0
    p = problem_for(PotentialSpec(Kind.V1, {"nu": 2.5}), span=10.0)
    assert (p.x_min, p.x_max) == (-10.0, 10.0)
    p = problem_for(PotentialSpec(Kind.V8, {"f": 12.0, "h1": 3.0}))
    assert p.x_min == 0.0 and p.weight is not None


def test_primed_variants_have_oracle_spectra():
    for spec in (PotentialSpec(Kind.V7p, {"A": 40.0, "B": 30.0}),
                 PotentialSpec(Kind.V8p, {"f": 12.0, "h1": 2.0})):
        sp = numeric_spectrum(spec, 8000, 30.0)
        assert len(sp) >= 1
        assert np.all(sp.energies < threshold(spec))
