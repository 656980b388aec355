"""Conformal metric g = |x|^(2 alpha) delta on R^N minus the origin.

Only the concrete objects the P-function needs are provided: Christoffel
symbols, the Ricci tensor, and the g-Hessian of a scalar field.  Finite
difference versions are kept next to the closed forms as oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError

FD_TOL = 1e-7


def fd_step(x) -> float:
    return 1e-5 * (1.0 + float(np.linalg.norm(x)))


@dataclass(frozen=True)
class ScalarField:
    """A scalar function with its gradient and Hessian.

    Each callable takes points of shape ``(..., N)`` and returns arrays of
    shape ``(...)``, ``(..., N)`` and ``(..., N, N)`` respectively.
    """

    value: Callable[[np.ndarray], np.ndarray]
    gradient: Callable[[np.ndarray], np.ndarray]
    hessian: Callable[[np.ndarray], np.ndarray]
    n: int

    def __add__(self, other: "ScalarField") -> "ScalarField":
        if other.n != self.n:
            raise DomainError("cannot add fields of different dimension")
        return ScalarField(
            lambda x: self.value(x) + other.value(x),
            lambda x: self.gradient(x) + other.gradient(x),
            lambda x: self.hessian(x) + other.hessian(x),
            self.n,
        )


def radial_field(profile, n: int) -> ScalarField:
    """Lift ``profile(r) -> (f, f', f'')`` to a field on R^N."""

    def value(x):
        return profile(np.linalg.norm(x, axis=-1))[0]

    def gradient(x):
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x, axis=-1)
        _, f1, _ = profile(r)
        return (f1 / r)[..., None] * x

    def hessian(x):
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x, axis=-1)
        _, f1, f2 = profile(r)
        xh = x / r[..., None]
        outer = xh[..., :, None] * xh[..., None, :]
        eye = np.eye(n)
        return f2[..., None, None] * outer + (f1 / r)[..., None, None] * (eye - outer)

    return ScalarField(value, gradient, hessian, n)


def _as_point(x, n=None):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or (n is not None and x.size != n):
        raise DomainError(f"expected a point in R^{n}, got shape {x.shape}")
    if not np.any(x):
        raise DomainError("the conformal metric is singular at the origin")
    return x


@dataclass(frozen=True)
class ConformalMetric:
    n: int
    alpha: float

    def __post_init__(self):
        if self.n < 2:
            raise DomainError("dimension must be at least 2")

    def components(self, x) -> np.ndarray:
        x = _as_point(x, self.n)
        return np.dot(x, x) ** self.alpha * np.eye(self.n)

    def conformal_factor_gradient(self, x) -> np.ndarray:
        """Gradient of phi = alpha log|x|, where g = e^(2 phi) delta."""
        x = _as_point(x, self.n)
        return self.alpha * x / np.dot(x, x)

    def norm(self, x, vector) -> float:
        """g-length of a tangent vector given in coordinate components."""
        x = _as_point(x, self.n)
        return np.linalg.norm(x) ** self.alpha * np.linalg.norm(vector)


@dataclass(frozen=True)
class RicciValue:
    matrix: np.ndarray

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def christoffel(metric: ConformalMetric, x) -> np.ndarray:
    """Array ``G`` with ``G[i, k, j]`` the symbol Gamma^i_{kj}."""
    x = _as_point(x, metric.n)
    eye = np.eye(metric.n)
    # Gamma^i_{kj} = alpha |x|^-2 (x_k d_ij + x_j d_ik - x_i d_kj)
    g = (np.einsum("k,ij->ikj", x, eye) + np.einsum("j,ik->ikj", x, eye)
         - np.einsum("i,kj->ikj", x, eye))
    return metric.alpha / np.dot(x, x) * g


def christoffel_fd(metric: ConformalMetric, x, h=None) -> np.ndarray:
    """Christoffel symbols from central differences of the metric components."""
    x = _as_point(x, metric.n)
    n = metric.n
    h = fd_step(x) if h is None else h
    dg = np.empty((n, n, n))  # dg[l, i, j] = d_l g_ij
    for l in range(n):
        e = np.zeros(n)
        e[l] = h
        dg[l] = (metric.components(x + e) - metric.components(x - e)) / (2 * h)
    ginv = np.linalg.inv(metric.components(x))
    # Gamma^i_{kj} = g^{il}/2 (d_k g_lj + d_j g_lk - d_l g_kj)
    lower = (np.einsum("klj->lkj", dg) + np.einsum("jlk->lkj", dg) - dg)
    return 0.5 * np.einsum("il,lkj->ikj", ginv, lower)


def ricci(metric: ConformalMetric, x) -> RicciValue:
    x = _as_point(x, metric.n)
    n, a = metric.n, metric.alpha
    r2 = np.dot(x, x)
    proj = np.eye(n) - np.outer(x, x) / r2
    return RicciValue((n - 2) * (1 - (a + 1) ** 2) / r2 * proj)


def ricci_fd(metric: ConformalMetric, x, h=None) -> RicciValue:
    """Ricci tensor of e^(2 phi) delta from finite differences of phi."""
    x = _as_point(x, metric.n)
    n = metric.n
    h = fd_step(x) if h is None else h

    def phi(y):
        return metric.alpha * 0.5 * np.log(np.dot(y, y))

    grad = np.empty(n)
    hess = np.empty((n, n))
    eye = np.eye(n) * h
    f0 = phi(x)
    for i in range(n):
        grad[i] = (phi(x + eye[i]) - phi(x - eye[i])) / (2 * h)
        hess[i, i] = (phi(x + eye[i]) - 2 * f0 + phi(x - eye[i])) / h**2
        for j in range(i + 1, n):
            hess[i, j] = hess[j, i] = (
                phi(x + eye[i] + eye[j]) - phi(x + eye[i] - eye[j])
                - phi(x - eye[i] + eye[j]) + phi(x - eye[i] - eye[j])
            ) / (4 * h * h)
    lap = np.trace(hess)
    ric = (-(n - 2) * (hess - np.outer(grad, grad))
           - (lap + (n - 2) * np.dot(grad, grad)) * np.eye(n))
    return RicciValue(ric)


def g_hessian(metric: ConformalMetric, field: ScalarField, x) -> np.ndarray:
    """Coordinate components of the covariant Hessian of ``field`` at ``x``.

    For g = e^(2 phi) delta this is D^2 f + (grad phi . grad f) Id
    - (dphi (x) df + df (x) dphi).
    """
    x = _as_point(x, metric.n)
    dphi = metric.conformal_factor_gradient(x)
    df = np.asarray(field.gradient(x), dtype=float)
    d2f = np.asarray(field.hessian(x), dtype=float)
    cross = np.outer(dphi, df)
    return d2f + np.dot(dphi, df) * np.eye(metric.n) - cross - cross.T


def g_hessian_fd(metric: ConformalMetric, f: Callable, x, h=None) -> np.ndarray:
    """Covariant Hessian d_i d_j f - Gamma^l_{ij} d_l f with FD partials of ``f``."""
    x = _as_point(x, metric.n)
    n = metric.n
    h = fd_step(x) if h is None else h
    eye = np.eye(n) * h
    f0 = f(x)
    grad = np.array([(f(x + eye[i]) - f(x - eye[i])) / (2 * h) for i in range(n)])
    hess = np.empty((n, n))
    for i in range(n):
        hess[i, i] = (f(x + eye[i]) - 2 * f0 + f(x - eye[i])) / h**2
        for j in range(i + 1, n):
            hess[i, j] = hess[j, i] = (
                f(x + eye[i] + eye[j]) - f(x + eye[i] - eye[j])
                - f(x - eye[i] + eye[j]) + f(x - eye[i] - eye[j])
            ) / (4 * h * h)
    gam = christoffel(metric, x)
    return hess - np.einsum("lij,l->ij", gam, grad)
