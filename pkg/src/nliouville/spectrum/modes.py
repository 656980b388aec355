"""Radial mode equation of the linearized operator.

After separating phi = psi_k(r) Y_k and rescaling r -> r^(1/(alpha+1)), each
spherical mode satisfies

    eta'' + (1 + a0/(1+s)) eta'/r - beta eta/r^2 + Lam K s/(r^2 (1+s)^2) eta = 0

with s = r^(N/(N-1)), a0 = N(N-2)/(N-1), K = N^3/(N-1)^2 and
beta = mu_k / ((N-1)(alpha+1)^2), mu_k = k(N-2+k).  Lam = 1 is the kernel
equation; general Lam is the weighted eigenproblem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..core import c_n
from ..errors import DomainError


def mode_coefficients(n: int):
    """Return ``(a0, K, gamma)`` for the mode equation in dimension ``n``."""
    if n < 2:
        raise DomainError("dimension must be at least 2")
    return n * (n - 2) / (n - 1), n**3 / (n - 1) ** 2, n / (n - 1)


def eigen_mu(n: int, k: int) -> int:
    """Eigenvalue k(N-2+k) of the sphere Laplacian on degree-k harmonics."""
    if k < 0:
        raise DomainError("mode index must be non-negative")
    return k * (n - 2 + k)


@dataclass(frozen=True)
class ModeODE:
    """One mode equation; ``beta`` may be given directly to override k and alpha."""

    n: int
    alpha: float = 0.0
    k: int = 0
    beta_override: Optional[float] = None
    lam: float = 1.0

    def __post_init__(self):
        if self.n < 2:
            raise DomainError("dimension must be at least 2")
        if not self.alpha > -1:
            raise DomainError("alpha must exceed -1")
        if self.k < 0:
            raise DomainError("mode index must be non-negative")

    @classmethod
    def with_beta(cls, n: int, beta: float, lam: float = 1.0) -> "ModeODE":
        return cls(n, 0.0, 0, float(beta), lam)

    @property
    def mu_k(self) -> int:
        return eigen_mu(self.n, self.k)

    @property
    def beta(self) -> float:
        if self.beta_override is not None:
            return self.beta_override
        return self.mu_k / ((self.n - 1) * (self.alpha + 1) ** 2)


def mode_ode_residual(mode: ModeODE, eta: Callable, r):
    """Left-hand side of the mode equation for ``eta(r) -> (eta, eta', eta'')``."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("the mode equation is posed for r > 0")
    a0, big_k, g = mode_coefficients(mode.n)
    s = r**g
    e0, e1, e2 = eta(r)
    return (e2 + (1 + a0 / (1 + s)) * e1 / r - mode.beta * e0 / r**2
            + mode.lam * big_k * s / (r**2 * (1 + s) ** 2) * e0)


def power_ratio(n: int, a: float, b: float, r):
    """f = r^a / (1 + r^(N/(N-1)))^b with its first two derivatives.

    With w = s/(1+s), the log-derivative is L = (a - b g w)/r and
    L' = -(a - b g w)/r^2 - b g^2 w (1-w)/r^2, so f' = f L, f'' = f (L^2 + L').
    """
    r = np.asarray(r, dtype=float)
    g = n / (n - 1)
    s = r**g
    w = s / (1 + s)
    f = r**a / (1 + s) ** b
    log_d = (a - b * g * w) / r
    log_d1 = -(a - b * g * w) / r**2 - b * g * g * w * (1 - w) / r**2
    return f, f * log_d, f * (log_d**2 + log_d1)


def bar_eta0(n: int, r):
    """(N-1-s)/(1+s): bounded solution for beta = 0."""
    r = np.asarray(r, dtype=float)
    g = n / (n - 1)
    s = r**g
    s1 = g * s / r
    s2 = g * (g - 1) * s / r**2
    # (N-1-s)/(1+s) = N/(1+s) - 1
    f = n / (1 + s) - 1
    f1 = -n * s1 / (1 + s) ** 2
    f2 = -n * (s2 * (1 + s) - 2 * s1**2) / (1 + s) ** 3
    return f, f1, f2


def bar_eta1(n: int, r):
    """r^(1/(N-1))/(1+s): bounded solution for beta = 1."""
    return power_ratio(n, 1 / (n - 1), 1.0, r)


def bar_eta0_zero(n: int) -> float:
    return (n - 1) ** ((n - 1) / n)


def indicial_root(n: int, beta: float) -> float:
    """Non-negative Frobenius exponent of the mode equation at r = 0."""
    if beta < 0:
        raise DomainError("beta must be non-negative")
    a0 = n * (n - 2) / (n - 1)
    return -a0 / 2 + math.sqrt(a0 * a0 / 4 + beta)


@dataclass(frozen=True)
class SLProblem:
    """Sturm-Liouville data -(P eta')' + Lam Q eta = -beta w eta for one mode.

    P = r^(N-1) |U~'|^(N-2), Q = -e^U~ r^(N-1)/(N-1), w = r^(N-3) |U~'|^(N-2),
    with U~ = log(c_N / (1+s)^N).
    """

    n: int
    beta: float = 0.0
    lam: float = 1.0

    def _du(self, r):
        g = self.n / (self.n - 1)
        s = r**g
        return self.n * g * s / (r * (1 + s)), s

    def p_fn(self, r):
        r = np.asarray(r, dtype=float)
        du, _ = self._du(r)
        return r ** (self.n - 1) * du ** (self.n - 2)

    def p_prime(self, r):
        r = np.asarray(r, dtype=float)
        n, g = self.n, self.n / (self.n - 1)
        s = r**g
        # d log P / dr = (1 + (N-2) g / (1+s)) / r
        return self.p_fn(r) * (1 + (n - 2) * g / (1 + s)) / r

    def q_fn(self, r):
        r = np.asarray(r, dtype=float)
        _, s = self._du(r)
        return -c_n(self.n) / (1 + s) ** self.n * r ** (self.n - 1) / (self.n - 1)

    def w_fn(self, r):
        r = np.asarray(r, dtype=float)
        du, _ = self._du(r)
        return r ** (self.n - 3) * du ** (self.n - 2)

    def residual(self, eta: Callable, r):
        """-(P eta')' + Lam Q eta + beta w eta, divided by w r^2 to match the mode form."""
        r = np.asarray(r, dtype=float)
        e0, e1, e2 = eta(r)
        lhs = (-(self.p_fn(r) * e2 + self.p_prime(r) * e1) + self.lam * self.q_fn(r) * e0
               + self.beta * self.w_fn(r) * e0)
        return lhs / (self.w_fn(r) * r**2)
