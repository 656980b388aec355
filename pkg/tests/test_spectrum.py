import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nliouville.errors import BracketError, DomainError
from nliouville.spectrum import (
    KernelFunction,
    ModeODE,
    SLProblem,
    alpha_k,
    bar_eta0,
    bar_eta1,
    closed_form_eigenvalue,
    degeneracy_catalog,
    fd_eigenvalue,
    indicial_root,
    kernel_residual,
    kernel_residual_fd,
    mode_ode_residual,
    morse_count,
    multiplicity,
    s_threshold,
    sl_solve_beta,
    sl_solve_lambda,
)
from nliouville.spectrum.closed_form import degenerate_mode, kernel_dimension, spectral_report
from nliouville.spectrum.harmonics import harmonic_basis
from nliouville.spectrum.modes import bar_eta0_zero, power_ratio

R = np.logspace(-3, 3, 60)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_bounded_mode_solutions(n):
    assert np.max(np.abs(mode_ode_residual(ModeODE.with_beta(n, 0.0), lambda r: bar_eta0(n, r), R))) < 1e-9
    eta1 = lambda r: bar_eta1(n, r)
    scale = np.abs(eta1(R)[0]) / R**2
    assert np.max(np.abs(mode_ode_residual(ModeODE.with_beta(n, 1.0), eta1, R)) / scale) < 1e-9


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sl_form_agrees_with_mode_form(n):
    eta = lambda r: bar_eta1(n, r)
    assert np.max(np.abs(SLProblem(n, 1.0, 1.0).residual(eta, R))) < 1e-8


@pytest.mark.parametrize("n", [2, 3, 4])
def test_zero_of_bar_eta0(n):
    assert bar_eta0(n, bar_eta0_zero(n))[0] == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_shooting_finds_admissible_betas(n):
    lo = -0.1 if n >= 3 else -0.5
    assert sl_solve_beta(n, (lo, 0.5)) == pytest.approx(0.0, abs=1e-9)
    assert sl_solve_beta(n, (0.5, 1.5)) == pytest.approx(1.0, abs=1e-9)


def test_shooting_bracket_errors():
    with pytest.raises(BracketError):
        sl_solve_beta(2, (1.5, 3.0))
    with pytest.raises(DomainError):
        sl_solve_beta(2, (1.0, 0.5))


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0])
@pytest.mark.parametrize("k", [0, 1, 2])
def test_closed_form_mode_solves_eigenproblem(n, alpha, k):
    a, b, lam = closed_form_eigenvalue(n, alpha, k)
    mode = ModeODE(n, alpha, k, lam=lam)
    f = lambda r: power_ratio(n, a, b, r)
    scale = np.abs(f(R)[0]) / R**2
    assert np.max(np.abs(mode_ode_residual(mode, f, R)) / scale) < 1e-9
    assert a == pytest.approx(indicial_root(n, mode.beta), abs=1e-12)


@pytest.mark.parametrize("n, alpha, k", [(2, 0.0, 1), (2, 0.5, 2), (3, 0.0, 0), (3, 1.0, 2), (4, -0.5, 1)])
def test_eigenvalue_three_routes(n, alpha, k):
    exact = closed_form_eigenvalue(n, alpha, k)[2]
    assert sl_solve_lambda(n, alpha, k) == pytest.approx(exact, rel=1e-8, abs=1e-9)
    assert fd_eigenvalue(n, alpha, k) == pytest.approx(exact, rel=1e-4, abs=1e-8)


def test_radial_mode_eigenvalue_is_zero():
    # k = 0 gives b = 0 and Lambda = 0
    assert closed_form_eigenvalue(3, 0.7, 0)[2] == pytest.approx(0.0, abs=1e-15)


def test_excited_eigenvalue_above_ground_state():
    assert sl_solve_lambda(2, 0.0, 0, index=1) > sl_solve_lambda(2, 0.0, 0, index=0) + 0.1


def test_degeneracy_values():
    assert alpha_k(3, 1) == pytest.approx(0.0, abs=1e-15)
    assert alpha_k(3, 2) == pytest.approx(math.sqrt(3) - 1)
    assert alpha_k(2, 3) == pytest.approx(2.0)
    assert [multiplicity(3, k) for k in (1, 2, 3)] == [3, 5, 7]
    assert [multiplicity(4, k) for k in (1, 2, 3)] == [4, 9, 16]
    assert [multiplicity(2, k) for k in (1, 2, 5)] == [2, 2, 2]


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(1, 8))
def test_lambda_equals_one_at_degeneracy(n, k):
    assert closed_form_eigenvalue(n, alpha_k(n, k), k)[2] == pytest.approx(1.0, rel=1e-12)
    assert s_threshold(n, alpha_k(n, k)) == pytest.approx(k, rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.floats(-0.95, 6.0))
def test_morse_count_matches_eigenvalues(n, alpha):
    s, total = morse_count(n, alpha)
    skip = degenerate_mode(n, alpha)
    expected = sum(multiplicity(n, k) for k in range(math.ceil(s) + 3)
                   if closed_form_eigenvalue(n, alpha, k)[2] < 1 and k != skip)
    assert total == expected


def test_morse_tie_excluded():
    s, total = morse_count(2, 1.0)
    assert s == pytest.approx(2.0)
    assert degenerate_mode(2, 1.0) == 2
    assert total == 1 + 2
    assert kernel_dimension(2, 1.0) == 1 + 2
    assert kernel_dimension(2, 0.0) == 1 + 2


def test_catalog():
    cat = degeneracy_catalog(3, 1.5, 5)
    assert cat.ks == [1, 2, 3]
    assert cat.mult == [3, 5, 7]
    assert np.allclose(cat.lambda_k, 1.0)
    assert cat.translation == [True, False, False]
    rep = spectral_report(3, 0.2, 3)
    assert rep.ks == [0, 1, 2, 3]
    assert len(rep.rows()) == 4


@pytest.mark.parametrize("n, k", [(2, 1), (2, 4), (3, 1), (3, 2), (3, 4)])
def test_harmonic_basis(n, k, rng):
    basis = harmonic_basis(n, k)
    assert len(basis) == multiplicity(n, k)
    x = rng.normal(size=(30, n))
    for p in basis:
        assert np.allclose(np.trace(p.hessian(x), axis1=-2, axis2=-1), 0.0, atol=1e-10)
        # homogeneous of degree k
        assert np.allclose(p.value(2 * x), 2**k * p.value(x))
    # linearly independent
    assert np.linalg.matrix_rank(np.array([p.value(x) for p in basis])) == len(basis)
    with pytest.raises(DomainError):
        harmonic_basis(4, 1)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_kernel_functions_dual_route(n, k, rng):
    alpha = alpha_k(n, k)
    x = rng.normal(size=(10, n))
    for idx in range(multiplicity(n, k)):
        fn = KernelFunction("Z_alpha_i", n, alpha, k, idx)
        assert kernel_residual(n, alpha, fn, x) < 1e-9
        assert kernel_residual_fd(n, alpha, fn, x) < 1e-5
    for fn in [KernelFunction("Z_alpha", n, alpha)] + [KernelFunction("Zcal_i", n, 0.0, index=i) for i in range(n)]:
        a = fn.alpha
        assert kernel_residual(n, a, fn, x) < 1e-9


def test_kernel_function_off_degeneracy_fails(rng):
    alpha = alpha_k(3, 2) + 0.1
    fn = KernelFunction("Z_alpha_i", 3, alpha, 2, 0)
    assert kernel_residual(3, alpha, fn, rng.normal(size=(10, 3))) > 1e-3


def test_kernel_function_guards():
    with pytest.raises(DomainError):
        KernelFunction("Z_alpha", 4)
    with pytest.raises(DomainError):
        KernelFunction("Z_alpha_i", 2, 0.0, None)
    with pytest.raises(DomainError):
        KernelFunction("nonsense", 2)
    with pytest.raises(DomainError):
        kernel_residual(2, 0.0, KernelFunction("Z_alpha", 2), np.zeros((1, 2)))
