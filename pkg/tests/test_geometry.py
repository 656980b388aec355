import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nliouville.errors import DomainError
from nliouville.geometry import (
    ConformalMetric,
    ScalarField,
    christoffel,
    christoffel_fd,
    g_hessian,
    g_hessian_fd,
    radial_field,
    ricci,
    ricci_fd,
)

points = st.lists(st.floats(0.3, 2.0), min_size=3, max_size=3).map(np.array)
signs = st.lists(st.sampled_from([-1.0, 1.0]), min_size=3, max_size=3).map(np.array)


@settings(max_examples=30, deadline=None)
@given(points, signs, st.floats(-0.9, 2.0))
def test_christoffel_dual_route(x, s, alpha):
    metric = ConformalMetric(3, alpha)
    x = x * s
    assert np.allclose(christoffel(metric, x), christoffel_fd(metric, x), atol=1e-6)


@settings(max_examples=20, deadline=None)
@given(points, st.floats(-0.9, 2.0), st.sampled_from([2, 3]))
def test_ricci_dual_route(x, alpha, n):
    metric = ConformalMetric(n, alpha)
    x = x[:n]
    assert np.allclose(ricci(metric, x).matrix, ricci_fd(metric, x).matrix, atol=1e-5)


def test_two_dimensional_metric_is_flat():
    metric = ConformalMetric(2, 1.5)
    assert np.allclose(ricci(metric, np.array([0.4, -0.9])).matrix, 0.0, atol=1e-14)


def test_metric_singular_at_origin():
    with pytest.raises(DomainError):
        ConformalMetric(3, 0.5).components(np.zeros(3))
    with pytest.raises(DomainError):
        ConformalMetric(1, 0.0)


def test_radial_field_lift():
    f = radial_field(lambda r: (r**2, 2 * r, 2 + 0 * r), 3)
    x = np.array([0.3, -0.4, 1.2])
    assert f.value(x) == pytest.approx(np.dot(x, x))
    assert np.allclose(f.gradient(x), 2 * x)
    assert np.allclose(f.hessian(x), 2 * np.eye(3))


def test_g_hessian_dual_route():
    metric = ConformalMetric(3, 0.7)
    f = radial_field(lambda r: (np.sin(r), np.cos(r), -np.sin(r)), 3)
    x = np.array([0.5, 0.8, -0.3])
    assert np.allclose(g_hessian(metric, f, x), g_hessian_fd(metric, f.value, x), atol=1e-5)


def test_field_addition():
    a = radial_field(lambda r: (r, 1 + 0 * r, 0 * r), 2)
    b = radial_field(lambda r: (r**2, 2 * r, 2 + 0 * r), 2)
    x = np.array([0.6, 0.8])
    assert (a + b).value(x) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        a + radial_field(lambda r: (r, r, r), 3)
    assert isinstance(a + b, ScalarField)
