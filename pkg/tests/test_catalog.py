import numpy as np
import pytest

from qdeform.catalog import CATALOG, catalog
from qdeform.oracle import threshold
from qdeform.potentials import Kind
from qdeform.spectra import spectrum


def test_at_least_three_points_per_kind():
    for kind in (Kind.V1, Kind.V2, Kind.V3, Kind.V4, Kind.V5, Kind.V6, Kind.V7, Kind.V8):
        assert len(catalog(kind)) >= 3
    assert catalog() == list(CATALOG)
    assert catalog("V3") == catalog(Kind.V3)


@pytest.mark.parametrize("point", CATALOG, ids=lambda p: p.label)
def test_points_have_levels_clear_of_threshold(point):
    E = spectrum(point.spec).energies
    assert len(E) >= 1
    assert np.all(E <= threshold(point.spec) - 1e-3)


def test_labels_are_unique():
    labels = [p.label for p in CATALOG]
    assert len(labels) == len(set(labels))
