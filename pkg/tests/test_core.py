import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nliouville.core import c_n, linear_grid, log_grid, make_problem, unit_ball_volume
from nliouville.errors import DomainError


def test_c_n_two_dimensions():
    # c_2 omega_2 = 8 pi, the classical total mass for alpha = 0
    assert c_n(2) * unit_ball_volume(2) == pytest.approx(8 * math.pi, rel=1e-15)


def test_unit_ball_volumes():
    assert unit_ball_volume(2) == pytest.approx(math.pi)
    assert unit_ball_volume(3) == pytest.approx(4 * math.pi / 3)
    assert unit_ball_volume(4) == pytest.approx(math.pi**2 / 2)


@pytest.mark.parametrize("n, alpha", [(1, 0.0), (2, -1.0), (3, -2.0), (2.5, 0.0), (2, math.nan), (True, 0.0)])
def test_make_problem_rejects_bad_input(n, alpha):
    with pytest.raises(DomainError):
        make_problem(n, alpha)


@given(st.integers(2, 8), st.floats(-0.99, 5.0))
def test_problem_constants(n, alpha):
    p = make_problem(n, alpha)
    assert p.exponent == pytest.approx(n * (alpha + 1) / (n - 1))
    assert p.constants.slope == pytest.approx(n * p.exponent)
    assert p.total_mass == pytest.approx(c_n(n) * unit_ball_volume(n) * (alpha + 1) ** (n - 1))
    assert p.constants.sphere_area == pytest.approx(n * p.constants.omega_n)


def test_log_grid_defaults():
    g = log_grid()
    assert g.points.size == 400
    assert g.points[0] == pytest.approx(1e-4)
    assert g.points[-1] == pytest.approx(1e4)
    assert np.all(np.diff(np.log(g.points)) > 0)
    assert np.allclose(np.diff(np.log(g.points)), np.log(g.points[1] / g.points[0]))


@pytest.mark.parametrize("args", [(0.0, 1.0, 10), (1.0, 0.5, 10), (1e-3, 1.0, 1)])
def test_grids_reject_bad_ranges(args):
    with pytest.raises(DomainError):
        log_grid(*args)


def test_linear_grid():
    g = linear_grid(1.0, 2.0, 11)
    assert np.allclose(np.diff(g.points), 0.1)
