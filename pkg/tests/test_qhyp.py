import math

import numpy as np
import pytest

from qdeform import qhyp
from qdeform.errors import DomainError, PoleError

QS = (1e-3, 1e-2, 0.5, 1.0, 2.0, 1e2, 1e3)


@pytest.mark.parametrize("q", QS)
def test_pythagorean_identity_where_representable(q):
    # |y| <= 4 keeps cosh_q^2 within a few thousand times q, so the difference keeps 12 digits
    y = np.linspace(-4.0, 4.0, 801)
    x = y + 0.5 * math.log(q)
    c, s = qhyp.cosh_q(x, q), qhyp.sinh_q(x, q)
    assert np.max(np.abs(c * c - s * s - q) / q) < 1e-12


@pytest.mark.parametrize("q", QS)
def test_pythagorean_identity_relative_to_terms(q):
    x = np.linspace(-10.0, 10.0, 2001)
    c, s = qhyp.cosh_q(x, q), qhyp.sinh_q(x, q)
    assert np.max(np.abs(c * c - s * s - q) / (c * c + s * s)) < 1e-15


@pytest.mark.parametrize("q", (1e-2, 0.5, 2.0, 1e2))
def test_derivative_identities(q):
    h = 1e-5
    y = np.linspace(-5.0, 5.0, 401)
    y = y[np.abs(y) > 0.05]
    x = y + 0.5 * math.log(q)
    cases = (
        (qhyp.cosh_q, qhyp.sinh_q(x, q)),
        (qhyp.sinh_q, qhyp.cosh_q(x, q)),
        (qhyp.tanh_q, q / qhyp.cosh_q(x, q) ** 2),
        (qhyp.coth_q, -q / qhyp.sinh_q(x, q) ** 2),
    )
    for f, exact in cases:
        fd = (f(x + h, q) - f(x - h, q)) / (2 * h)
        assert np.max(np.abs(fd - exact) / np.abs(exact)) < 1e-6


@pytest.mark.parametrize("q", (1e-3, 0.5, 2.0, 1e3))
def test_shift_identities(q):
    x = np.linspace(-8.0, 8.0, 321)
    y = x - 0.5 * math.log(q)
    sq = math.sqrt(q)
    assert np.allclose(qhyp.sinh_q(x, q), sq * np.sinh(y), rtol=1e-13, atol=1e-13 * sq)
    assert np.allclose(qhyp.cosh_q(x, q), sq * np.cosh(y), rtol=1e-13, atol=0)
    assert np.allclose(qhyp.tanh_q(x, q), np.tanh(y), rtol=1e-13, atol=1e-15)


def test_undeformed_limit_is_exact():
    for x in (-3.7, -0.1, 0.0, 0.25, 5.5):
        assert qhyp.sinh_q(x, 1.0) == math.sinh(x)
        assert qhyp.cosh_q(x, 1.0) == math.cosh(x)
        assert qhyp.tanh_q(x, 1.0) == math.tanh(x)
        if x != 0.0:
            assert qhyp.coth_q(x, 1.0) == math.cosh(x) / math.sinh(x)


def test_coth_pole_raises():
    with pytest.raises(PoleError):
        qhyp.coth_q(0.5 * math.log(4.0), 4.0)
    with pytest.raises(PoleError):
        qhyp.coth_q(0.0, 1.0)


def test_invalid_deformation():
    for q in (0.0, -1.0, math.inf, math.nan):
        with pytest.raises(DomainError):
            qhyp.sinh_q(1.0, q)


def test_array_and_scalar_forms_agree():
    x = np.array([-1.0, 0.3, 2.0])
    for f in (qhyp.sinh_q, qhyp.cosh_q, qhyp.tanh_q, qhyp.coth_q):
        arr = f(x, 3.0)
        assert [f(float(v), 3.0) for v in x] == pytest.approx(arr.tolist(), rel=1e-15)


def test_coordinate_frames_round_trip():
    d = qhyp.Deformation(4.0)
    c = qhyp.Coordinate(1.5)
    s = c.to_shifted(d)
    assert s.frame is qhyp.Frame.SHIFTED
    assert s.x == pytest.approx(1.5 - math.log(2.0), abs=1e-15)
    assert s.to_raw(d).x == pytest.approx(1.5, abs=1e-15)
