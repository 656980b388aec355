"""Total weighted mass of the radial family and its quantized value."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .core import Problem
from .errors import DomainError
from .quadrature import adaptive_gk
from .solutions import RadialSolution


@dataclass(frozen=True)
class MassResult:
    numeric: float
    exact: float
    rel_err: float
    error_estimate: float = 0.0


def _result(numeric, exact, err=0.0):
    return MassResult(numeric, exact, abs(numeric - exact) / exact, err)


def _substituted_integrand(sol: RadialSolution):
    """Integrand in s = lam r^gamma, folded onto [0, 1].

    r^(N-1+N alpha) e^u dr = r^(N(alpha+1)) e^u / (gamma s) ds, and the
    tail s > 1 is mapped back to (0, 1] through s -> 1/s.
    """
    p = sol.problem
    g, lam = p.exponent, sol.lam
    power = p.n * (p.alpha + 1)

    def density(s):
        # log r = log(s/lam)/gamma keeps the evaluation free of overflow
        log_r = (np.log(s) - math.log(lam)) / g
        return np.exp(power * log_r + sol(np.exp(log_r)) - np.log(g * s))

    def folded(t):
        # Gauss-Kronrod nodes are interior, so t > 0 here
        t = np.asarray(t, dtype=float)
        return density(t) + density(1.0 / t) / t**2

    return folded


def mass(sol: RadialSolution, tol: float = 1e-12) -> MassResult:
    """N omega_N int_0^inf r^(N-1+N alpha) e^u dr by adaptive Gauss-Kronrod."""
    if not tol > 0:
        raise DomainError("tolerance must be positive")
    p = sol.problem
    value, err = adaptive_gk(_substituted_integrand(sol), 0.0, 1.0, tol=tol)
    numeric = p.constants.sphere_area * value
    return _result(numeric, p.total_mass, p.constants.sphere_area * err)


def mass_raw(sol: RadialSolution, tol: float = 1e-12) -> MassResult:
    """Independent route: QUADPACK on the raw radial variable.

    [0, 1] uses the algebraic weight r^(N-1+N alpha); the tail is mapped by
    t = 1/r, where the integrand becomes t^(gamma-1) times a smooth factor.
    """
    p = sol.problem
    n, g = p.n, p.exponent
    head_power = n - 1 + n * p.alpha

    def head(r):
        return math.exp(sol(r))

    def tail(t):
        # r^(N-1+Na) e^u(r) r^2 with r = 1/t, divided by the weight t^(gamma-1)
        return math.exp(sol.log_amplitude - n * math.log(t**g + sol.lam))

    opts = dict(epsabs=0.0, epsrel=tol, limit=200)
    h, he = integrate.quad(head, 0.0, 1.0, weight="alg", wvar=(head_power, 0.0), **opts)
    t, te = integrate.quad(tail, 0.0, 1.0, weight="alg", wvar=(g - 1, 0.0), **opts)
    numeric = p.constants.sphere_area * (h + t)
    return _result(numeric, p.total_mass, p.constants.sphere_area * (he + te))


def mass_independent_of_lambda(problem: Problem, lambdas, tol: float = 1e-12) -> float:
    """Largest relative spread |mass(lam) - mass(1)| / mass(1) over ``lambdas``."""
    lambdas = list(lambdas)
    if not lambdas or any(not lam > 0 for lam in lambdas):
        raise DomainError("all lambdas must be positive")
    ref = mass(RadialSolution(problem, 1.0), tol).numeric
    return max(abs(mass(RadialSolution(problem, lam), tol).numeric - ref) / ref
               for lam in lambdas)
