"""Explicit kernel elements of the linearized operator at U_alpha.

Z_alpha comes from scaling, Z_{alpha,i} from a degenerate mode k, and the
translation modes Zcal_i exist at alpha = 0.  Each is a radial factor times a
harmonic polynomial, so gradients and Hessians are in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import DomainError
from ..geometry import ScalarField, fd_step, radial_field
from ..solutions import radial_solution
from .harmonics import harmonic_basis

KINDS = ("Z_alpha", "Z_alpha_i", "Zcal_i")


def _ratio(a: float, b: float, g: float):
    """Profile r -> r^a/(1 + r^g)^b with two derivatives."""

    def profile(r):
        r = np.asarray(r, dtype=float)
        s = r**g
        w = s / (1 + s)
        f = r**a / (1 + s) ** b
        ld = (a - b * g * w) / r
        ld1 = -(a - b * g * w) / r**2 - b * g * g * w * (1 - w) / r**2
        return f, f * ld, f * (ld * ld + ld1)

    return profile


def _product(radial: ScalarField, poly) -> ScalarField:
    def value(x):
        return radial.value(x) * poly.value(x)

    def gradient(x):
        return radial.gradient(x) * poly.value(x)[..., None] + radial.value(x)[..., None] * poly.gradient(x)

    def hessian(x):
        gr, gp = radial.gradient(x), poly.gradient(x)
        cross = gr[..., :, None] * gp[..., None, :]
        return (radial.hessian(x) * poly.value(x)[..., None, None] + cross
                + np.swapaxes(cross, -1, -2) + radial.value(x)[..., None, None] * poly.hessian(x))

    return ScalarField(value, gradient, hessian, radial.n)


@dataclass(frozen=True)
class KernelFunction:
    """A candidate kernel element.

    ``alpha`` is the weight the function is built for; ``k`` and ``index``
    select the harmonic factor for Z_alpha_i (``index`` alone for Zcal_i).
    """

    kind: str
    n: int
    alpha: float = 0.0
    k: Optional[int] = None
    index: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown kernel function kind {self.kind!r}")
        if self.n not in (2, 3):
            raise DomainError("full-space kernel functions are provided for N = 2 and N = 3 only")
        if self.kind == "Z_alpha_i" and (self.k is None or self.k < 1):
            raise DomainError("Z_alpha_i needs a mode index k >= 1")
        if self.kind == "Zcal_i" and not 0 <= self.index < self.n:
            raise DomainError("translation index out of range")

    def field(self) -> ScalarField:
        n, a = self.n, self.alpha
        g = n * (a + 1) / (n - 1)
        if self.kind == "Z_alpha":
            # (N-1-s)/(1+s) = N/(1+s) - 1
            base = _ratio(0.0, 1.0, g)

            def profile(r):
                f, f1, f2 = base(r)
                return n * f - 1, n * f1, n * f2

            return radial_field(profile, n)
        if self.kind == "Z_alpha_i":
            basis = harmonic_basis(n, self.k)
            if not 0 <= self.index < len(basis):
                raise DomainError("harmonic index out of range")
            radial = radial_field(_ratio((a + 1) / (n - 1) - self.k, 1.0, g), n)
            return _product(radial, basis[self.index])
        base = _ratio(1 / (n - 1) - 1, 1.0, n / (n - 1))
        c = n * n / (n - 1)

        def profile(r):
            return tuple(c * v for v in base(r))

        coord = harmonic_basis(n, 1)[self.index]
        return _product(radial_field(profile, n), coord)


def _points(points, n):
    pts = np.asarray(points, dtype=float).reshape(-1, n)
    if np.any(np.linalg.norm(pts, axis=1) == 0):
        raise DomainError("kernel residuals are evaluated away from the origin")
    return pts


def strong_form(n: int, alpha: float, field: ScalarField, x):
    """|x|^2 Lap phi + N(N-2)(a+1) x.grad phi/(1+s) + (N-2) x.D^2 phi.x + N^3 (a+1)^2 s phi / ((N-1)(1+s)^2)."""
    x = np.asarray(x, dtype=float)
    r2 = np.sum(x * x, axis=-1)
    s = r2 ** (n * (alpha + 1) / (2 * (n - 1)))
    phi, grad, hess = field.value(x), field.gradient(x), field.hessian(x)
    lap = np.trace(hess, axis1=-2, axis2=-1)
    radial_second = np.einsum("...i,...ij,...j->...", x, hess, x)
    return (r2 * lap + n * (n - 2) * (alpha + 1) * np.sum(x * grad, axis=-1) / (1 + s)
            + (n - 2) * radial_second + n**3 * (alpha + 1) ** 2 / (n - 1) * s * phi / (1 + s) ** 2)


def kernel_residual(n: int, alpha: float, fn: KernelFunction, points) -> float:
    """Largest strong-form defect of the linearized equation at ``points``."""
    if fn.n != n:
        raise DomainError("kernel function dimension does not match")
    pts = _points(points, n)
    return float(np.max(np.abs(strong_form(n, alpha, fn.field(), pts))))


def kernel_residual_fd(n: int, alpha: float, fn: KernelFunction, points, h: Optional[float] = None) -> float:
    """Divergence-form defect -div(A(grad U) grad phi) - |x|^(N alpha) e^U phi.

    The flux uses closed-form gradients; its divergence is taken by central
    differences.  The defect is divided by |grad U|^(N-2)/|x|^2 so that it is
    on the scale of the strong form.
    """
    if fn.n != n:
        raise DomainError("kernel function dimension does not match")
    pts = _points(points, n)
    sol = radial_solution(n, alpha)
    u = sol.field()
    phi = fn.field()

    def flux(y):
        du = u.gradient(y)
        s = np.linalg.norm(du)
        mat = s ** (n - 2) * np.eye(n)
        if n > 2:
            mat = mat + (n - 2) * s ** (n - 4) * np.outer(du, du)
        return mat @ phi.gradient(y)

    worst = 0.0
    for x in pts:
        step = fd_step(x) if h is None else h
        eye = np.eye(n) * step
        div = sum((flux(x + eye[i])[i] - flux(x - eye[i])[i]) / (2 * step) for i in range(n))
        r = np.linalg.norm(x)
        src = r ** (n * alpha) * np.exp(u.value(x)) * phi.value(x)
        scale = r**2 / np.linalg.norm(u.gradient(x)) ** (n - 2)
        worst = max(worst, abs(-div - src) * scale)
    return float(worst)
