import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nliouville.errors import DomainError
from nliouville.holo2d import fd_invariant, holomorphic_invariant, origin_gradient_decay
from nliouville.solutions import PlanarSolution

zs = st.builds(lambda r, t: r * np.exp(1j * t), st.floats(0.2, 3.0), st.floats(0.0, 6.28))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([0, 1, 2, 0.5, 1.5]), st.floats(0.3, 3.0), zs)
def test_invariant_vanishes_analytic(alpha, lam, z):
    c = 0.5 + 0.5j if float(alpha).is_integer() else 0j
    sol = PlanarSolution(lam, c, alpha)
    assert abs(holomorphic_invariant(sol, z).invariant_value) < 1e-7


@pytest.mark.parametrize("alpha", [0, 1, 2, 0.5, 1.5])
def test_invariant_vanishes_finite_difference(alpha):
    c = 0.5 + 0.5j if float(alpha).is_integer() else 0j
    sol = PlanarSolution(1.0, c, alpha)
    for z in (0.7 + 0.2j, -1.1 + 0.5j, 2j):
        res = holomorphic_invariant(sol, z, method="finite-difference")
        assert abs(res.invariant_value) < 1e-7


def test_fd_invariant_is_second_order():
    sol = PlanarSolution(1.0, 0.3j, 1)
    z = 0.8 + 0.3j
    e1, e2 = abs(fd_invariant(sol, z, 2e-2)), abs(fd_invariant(sol, z, 1e-2))
    assert e1 / e2 == pytest.approx(4.0, rel=0.1)


def test_invariant_detects_wrong_alpha():
    sol = PlanarSolution(1.0, 0j, 1.0)
    wrong = PlanarSolution(1.0, 0j, 1.5)
    _, grad, hess = sol.derivatives(0.7 + 0.2j)
    assert abs(holomorphic_invariant(sol, 0.7 + 0.2j).invariant_value) < 1e-10
    # evaluate the solution for alpha = 1 against the alpha = 1.5 invariant
    from nliouville.holo2d import _invariant

    val = _invariant(wrong.alpha, 0.7 + 0.2j, grad[0], grad[1], hess[0, 0], hess[0, 1], hess[1, 1])
    assert abs(val) > 1e-2


@pytest.mark.parametrize("alpha", [0, 1, 2, 0.5, 1.5])
def test_gradient_decay_exponent(alpha):
    c = 0.5 + 0.5j if float(alpha).is_integer() else 0j
    sol = PlanarSolution(1.0, c, alpha)
    assert origin_gradient_decay(sol, np.logspace(-3, -1, 20)) >= alpha - 0.05


def test_holo_guards():
    sol = PlanarSolution()
    with pytest.raises(DomainError):
        holomorphic_invariant(sol, 0j)
    with pytest.raises(DomainError):
        holomorphic_invariant(sol, 1.0, method="spline")
    with pytest.raises(DomainError):
        origin_gradient_decay(sol, [0.01, 0.5])
    with pytest.raises(DomainError):
        origin_gradient_decay(PlanarSolution(1.0, 0j, -0.5), [0.01, 0.05])
