"""Closed-form solution families and their residual/asymptotic checks.

Radial family (any N)::

    U(r) = log[c_N (a+1)^N lam^(N-1) / (1 + lam r^gamma)^N],  gamma = N(a+1)/(N-1)

Planar family (N = 2)::

    u(z) = log[8 (a+1)^2 lam^2 / (1 + lam^2 |z^(a+1) + c|^2)^2]

with c = 0 unless a is a non-negative integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Problem, make_problem
from .errors import DomainError
from .geometry import ScalarField, radial_field


@dataclass(frozen=True)
class RadialSolution:
    problem: Problem
    lam: float = 1.0

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise DomainError(f"lambda must be positive, got {self.lam!r}")
        object.__setattr__(self, "lam", float(self.lam))

    @property
    def n(self) -> int:
        return self.problem.n

    @property
    def alpha(self) -> float:
        return self.problem.alpha

    @property
    def log_amplitude(self) -> float:
        p = self.problem
        return (math.log(p.constants.c_n) + p.n * math.log1p(p.alpha)
                + (p.n - 1) * math.log(self.lam))

    def profile(self, r):
        """Return ``(u, u', u'')`` at radii ``r``."""
        r = np.asarray(r, dtype=float)
        n, g, lam = self.n, self.problem.exponent, self.lam
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            t = lam * r**g
            u = self.log_amplitude - n * np.log1p(t)
            # w = t/(1+t) written to survive t -> inf
            w = 1.0 / (1.0 + 1.0 / t)
            w = np.where(t == 0, 0.0, w)
            u1 = -n * g * w / r
            u2 = n * g * w * ((1 - g) + g * w) / r**2
            u1 = np.where(r == 0, -n * g * lam * r ** (g - 1) if g != 1 else -n * lam, u1)
            u2 = np.where(r == 0, _u2_origin(n, g, lam), u2)
        return u, u1, u2

    def __call__(self, r):
        return self.profile(r)[0]

    def field(self) -> ScalarField:
        return radial_field(self.profile, self.n)

    @property
    def asymptotic_constant(self) -> float:
        """Limit of u(r) + slope log r as r -> infinity."""
        return self.log_amplitude - self.n * math.log(self.lam)


def _u2_origin(n, g, lam):
    if g > 2:
        return 0.0
    if g == 2:
        return -n * g * (g - 1) * lam
    if g == 1:
        return n * lam**2
    return -math.inf if g > 1 else math.inf


def radial_solution(n: int, alpha: float, lam: float = 1.0) -> RadialSolution:
    return RadialSolution(make_problem(n, alpha), lam)


def eval_radial(sol: RadialSolution, r):
    """Exact ``(u, u', u'')``; at r = 0 derivatives are their (possibly infinite) limits."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("radius must be non-negative")
    return sol.profile(r)


def radial_nlap(sol: RadialSolution, r):
    """Radial N-Laplacian (N-1)|u'|^(N-2) (u'' + u'/r) in closed form."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("the radial N-Laplacian needs r > 0")
    n = sol.n
    _, u1, u2 = sol.profile(r)
    return (n - 1) * np.abs(u1) ** (n - 2) * (u2 + u1 / r)


def radial_source(sol: RadialSolution, r):
    """Right-hand side r^(N alpha) e^u, evaluated through logarithms."""
    r = np.asarray(r, dtype=float)
    u = sol(r)
    return np.exp(sol.n * sol.alpha * np.log(r) + u)


def radial_residual(sol: RadialSolution, r):
    """Relative residual |Delta_N u + r^(N alpha) e^u| / (1 + r^(N alpha) e^u)."""
    src = radial_source(sol, r)
    return np.abs(radial_nlap(sol, r) + src) / (1 + src)


def check_asymptotics(sol: RadialSolution, r_large: float):
    """Return ``(log_defect, slope_defect)`` at ``r_large`` (>= 10).

    ``log_defect`` is u + slope log r minus its limit, ``slope_defect`` is
    |r u'(r) + slope|; both vanish as r grows.
    """
    if not r_large >= 10:
        raise DomainError("asymptotic checks need r_large >= 10")
    slope = sol.problem.constants.slope
    u, u1, _ = sol.profile(np.float64(r_large))
    log_defect = float(u + slope * math.log(r_large) - sol.asymptotic_constant)
    slope_defect = float(abs(r_large * u1 + slope))
    return log_defect, slope_defect


def is_natural(alpha: float) -> bool:
    return alpha >= 0 and float(alpha).is_integer()


@dataclass(frozen=True)
class PlanarSolution:
    lam: float = 1.0
    c: complex = 0j
    alpha: float = 0.0

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise DomainError(f"lambda must be positive, got {self.lam!r}")
        if not self.alpha > -1:
            raise DomainError(f"alpha must exceed -1, got {self.alpha!r}")
        c = complex(self.c)
        if c != 0 and not is_natural(self.alpha):
            raise DomainError("a nonzero shift c requires alpha to be a non-negative integer")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def problem(self) -> Problem:
        return make_problem(2, self.alpha)

    @property
    def log_amplitude(self) -> float:
        return math.log(8.0) + 2 * math.log1p(self.alpha) + 2 * math.log(self.lam)

    def _w(self, z):
        """w = z^(a+1) + c with its first two complex derivatives."""
        a = self.alpha
        z = np.asarray(z, dtype=complex)
        if is_natural(a):
            m = int(a)
            w = z ** (m + 1) + self.c
            w1 = (m + 1) * z**m
            w2 = (m + 1) * m * z ** (m - 1) if m >= 1 else np.zeros_like(z)
        else:
            # principal branch; only |w| and products like conj(w) w' are used
            with np.errstate(divide="ignore", invalid="ignore"):
                za = np.power(z, a)
                w = z * za
                w1 = (a + 1) * za
                w2 = (a + 1) * a * za / z
        return w, w1, w2

    def modulus_sq(self, z):
        """|w|^2 with gradient (2,) and Hessian (2, 2) stacked on the last axes."""
        w, w1, w2 = self._w(z)
        m = np.abs(w) ** 2
        p1 = np.conj(w) * w1
        p2 = np.conj(w) * w2
        a1 = np.abs(w1) ** 2
        grad = np.stack([2 * p1.real, -2 * p1.imag], axis=-1)
        hxx = 2 * a1 + 2 * p2.real
        hyy = 2 * a1 - 2 * p2.real
        hxy = -2 * p2.imag
        hess = np.stack([np.stack([hxx, hxy], -1), np.stack([hxy, hyy], -1)], -2)
        return m, grad, hess

    def __call__(self, z):
        m, _, _ = self.modulus_sq(z)
        return self.log_amplitude - 2 * np.log1p(self.lam**2 * m)

    def derivatives(self, z):
        """Return ``(u, grad u, Hess u)`` at complex points ``z``."""
        m, gm, hm = self.modulus_sq(z)
        l2 = self.lam**2
        d = 1 + l2 * m
        u = self.log_amplitude - 2 * np.log1p(l2 * m)
        grad = -2 * l2 * gm / d[..., None]
        hess = (-2 * l2 * hm / d[..., None, None]
                + 2 * l2**2 * gm[..., :, None] * gm[..., None, :] / (d**2)[..., None, None])
        return u, grad, hess

    def field(self) -> ScalarField:
        def to_z(x):
            x = np.asarray(x, dtype=float)
            return x[..., 0] + 1j * x[..., 1]

        return ScalarField(
            lambda x: self(to_z(x)),
            lambda x: self.derivatives(to_z(x))[1],
            lambda x: self.derivatives(to_z(x))[2],
            2,
        )

    def source(self, z):
        """|z|^(2 alpha) e^u."""
        z = np.asarray(z, dtype=complex)
        return np.exp(2 * self.alpha * np.log(np.abs(z)) + self(z))


@dataclass(frozen=True)
class Residual:
    value: float
    location: complex
    step: float
    error_estimate: float


def _five_point(sol: PlanarSolution, z: complex, h: float) -> float:
    lap = (sol(z + h) + sol(z - h) + sol(z + 1j * h) + sol(z - 1j * h) - 4 * sol(z)) / h**2
    return float(lap + sol.source(z))


def residual_planar(sol: PlanarSolution, z: complex, h: float = 1e-3) -> Residual:
    """|Delta u + |z|^(2a) e^u| with a 5-point Laplacian of step ``h``.

    The discretisation error is estimated from the step-doubled value,
    assuming O(h^2) behaviour.
    """
    z = complex(z)
    if z == 0:
        raise DomainError("the planar residual is not evaluated at the origin")
    if not h > 0:
        raise DomainError("step must be positive")
    r1 = _five_point(sol, z, h)
    r2 = _five_point(sol, z, 2 * h)
    return Residual(abs(r1), z, h, abs(r2 - r1) / 3)


def richardson_residual(sol: PlanarSolution, z: complex, h: float = 2e-3) -> Residual:
    """Richardson-extrapolated 5-point residual, (4 R(h/2) - R(h))/3.

    The error estimate compares this with the same extrapolation one
    halving further down.
    """
    z = complex(z)
    if z == 0:
        raise DomainError("the planar residual is not evaluated at the origin")
    if not h > 0:
        raise DomainError("step must be positive")
    r = [_five_point(sol, z, h / 2**j) for j in range(3)]
    coarse = (4 * r[1] - r[0]) / 3
    fine = (4 * r[2] - r[1]) / 3
    return Residual(abs(coarse), z, h, abs(fine - coarse))
