import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nliouville.core import log_grid
from nliouville.errors import DomainError
from nliouville.solutions import (
    PlanarSolution,
    check_asymptotics,
    eval_radial,
    is_natural,
    radial_nlap,
    radial_residual,
    radial_solution,
    radial_source,
    residual_planar,
    richardson_residual,
)

R = log_grid().points


@pytest.mark.parametrize("n", [2, 3, 4, 6])
@pytest.mark.parametrize("alpha", [-0.9, -0.5, 0.0, 0.5, 2.0])
def test_radial_residual_on_grid(n, alpha):
    sol = radial_solution(n, alpha, 3.0)
    assert np.max(radial_residual(sol, R)) < 1e-9


def test_radial_two_dimensional_closed_form():
    # N = 2, alpha = 0: u = log(8 lam / (1 + lam r^2)^2)
    sol = radial_solution(2, 0.0, 2.0)
    u = eval_radial(sol, R)[0]
    assert np.allclose(u, np.log(16 / (1 + 2 * R**2) ** 2), rtol=1e-14, atol=1e-13)


def test_radial_profile_derivatives_against_differences():
    sol = radial_solution(3, 0.5, 1.5)
    r = np.linspace(0.2, 3.0, 15)
    h = 1e-5
    u, u1, u2 = sol.profile(r)
    assert np.allclose(u1, (sol.profile(r + h)[0] - sol.profile(r - h)[0]) / (2 * h), rtol=1e-8, atol=1e-9)
    assert np.allclose(u2, (sol.profile(r + h)[1] - sol.profile(r - h)[1]) / (2 * h), rtol=1e-7, atol=1e-8)


def test_nlap_matches_source():
    sol = radial_solution(4, 1.0, 0.5)
    r = np.logspace(-2, 2, 30)
    assert np.allclose(-radial_nlap(sol, r), radial_source(sol, r), rtol=1e-10)


def test_asymptotics_approach_zero():
    sol = radial_solution(2, 1.0, 1.0)
    log_d, slope_d = check_asymptotics(sol, 1e6)
    assert abs(log_d) < 1e-10
    assert slope_d < 1e-10
    with pytest.raises(DomainError):
        check_asymptotics(sol, 1.0)


def test_radial_rejects_bad_lambda():
    with pytest.raises(DomainError):
        radial_solution(2, 0.0, -1.0)


def test_is_natural():
    assert is_natural(0.0) and is_natural(3.0)
    assert not is_natural(0.5) and not is_natural(-0.5)


def test_planar_matches_radial_when_unshifted():
    # planar lambda^2 plays the role of the radial lambda
    sol = PlanarSolution(1.5, 0j, 0.5)
    rad = radial_solution(2, 0.5, 1.5**2)
    r = np.array([0.3, 1.0, 4.0])
    assert np.allclose(sol(r * np.exp(0.7j)), eval_radial(rad, r)[0], rtol=1e-13)


def test_planar_shift_requires_natural_alpha():
    with pytest.raises(DomainError):
        PlanarSolution(1.0, 1.0, 0.5)
    with pytest.raises(DomainError):
        PlanarSolution(-1.0, 0j, 0.0)


@settings(max_examples=25, deadline=None)
@given(
    st.sampled_from([0, 1, 2]),
    st.floats(0.3, 3.0),
    st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False),
    st.floats(0.2, 3.0),
    st.floats(0.0, 2 * math.pi),
)
def test_planar_residual_property(alpha, lam, c, rho, theta):
    sol = PlanarSolution(lam, c, alpha)
    res = richardson_residual(sol, rho * np.exp(1j * theta))
    assert res.value < 1e-8 + 10 * res.error_estimate


def test_planar_analytic_derivatives_against_differences():
    sol = PlanarSolution(1.0, 0.5 - 0.2j, 2)
    z = 0.6 + 0.3j
    h = 1e-6
    _, grad, hess = sol.derivatives(z)
    assert grad[0] == pytest.approx((sol(z + h) - sol(z - h)) / (2 * h), rel=1e-7)
    assert grad[1] == pytest.approx((sol(z + 1j * h) - sol(z - 1j * h)) / (2 * h), rel=1e-7)
    gx = lambda w: sol.derivatives(w)[1][0]
    assert hess[0, 0] == pytest.approx((gx(z + h) - gx(z - h)) / (2 * h), rel=1e-6)
    assert hess[0, 1] == pytest.approx((gx(z + 1j * h) - gx(z - 1j * h)) / (2 * h), rel=1e-6)


def test_plain_residual_is_second_order():
    sol = PlanarSolution(1.0, 0.5 + 0.5j, 1)
    z = 0.8 + 0.4j
    r1 = residual_planar(sol, z, 4e-3).value
    r2 = residual_planar(sol, z, 2e-3).value
    assert r1 / r2 == pytest.approx(4.0, rel=0.05)


def test_planar_residual_rejects_origin():
    with pytest.raises(DomainError):
        richardson_residual(PlanarSolution(), 0j)


@pytest.mark.parametrize("n, alpha, lam", [(2, 0.0, 1.0), (4, -0.9, 0.5), (3, 0.5, 3.0)])
def test_slope_defect_closed_form(n, alpha, lam):
    # |r u' + slope| = N gamma / (1 + lam r^gamma) exactly, so it decays only like r^-gamma
    sol = radial_solution(n, alpha, lam)
    g = sol.problem.exponent
    r = 1e6
    assert check_asymptotics(sol, r)[1] == pytest.approx(n * g / (1 + lam * r**g), rel=1e-6)
