"""Complex-analytic checks for the planar family.

For a planar solution the quadratic differential u_zz - u_z^2/2 - alpha u_z/z
vanishes identically.  u is not holomorphic, so the Wirtinger derivatives are
assembled from real partials:

    u_z  = (u_x - i u_y)/2,   u_zz = (u_xx - 2i u_xy - u_yy)/4.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .solutions import PlanarSolution


@dataclass(frozen=True)
class ComplexDiagnostic:
    z: complex
    invariant_value: complex
    method: str
    error_estimate: float = 0.0


def _invariant(alpha, z, ux, uy, uxx, uxy, uyy):
    uz = 0.5 * (ux - 1j * uy)
    uzz = 0.25 * (uxx - 2j * uxy - uyy)
    return uzz - 0.5 * uz * uz - alpha * uz / z


def _fd_partials(sol: PlanarSolution, z: complex, h: float):
    f0 = sol(z)
    fx_p, fx_m = sol(z + h), sol(z - h)
    fy_p, fy_m = sol(z + 1j * h), sol(z - 1j * h)
    ux = (fx_p - fx_m) / (2 * h)
    uy = (fy_p - fy_m) / (2 * h)
    uxx = (fx_p - 2 * f0 + fx_m) / h**2
    uyy = (fy_p - 2 * f0 + fy_m) / h**2
    uxy = (sol(z + h + 1j * h) - sol(z + h - 1j * h) - sol(z - h + 1j * h)
           + sol(z - h - 1j * h)) / (4 * h * h)
    return ux, uy, uxx, uxy, uyy


def holomorphic_invariant(sol: PlanarSolution, z: complex, h: float = 1e-2,
                          method: str = "analytic") -> ComplexDiagnostic:
    """u_zz - u_z^2/2 - alpha u_z/z at ``z``.

    ``method="analytic"`` uses the closed-form real derivatives.
    ``method="finite-difference"`` uses central differences at steps h and h/2,
    combined by Richardson extrapolation.  Its error estimate is the size
    of the extrapolation correction.
    """
    z = complex(z)
    if z == 0:
        raise DomainError("the invariant is singular at z = 0")
    if method == "analytic":
        _, grad, hess = sol.derivatives(z)
        val = _invariant(sol.alpha, z, grad[0], grad[1], hess[0, 0], hess[0, 1], hess[1, 1])
        return ComplexDiagnostic(z, complex(val), method)
    if method != "finite-difference":
        raise DomainError(f"unknown method {method!r}")
    if not h > 0:
        raise DomainError("step must be positive")
    coarse = _invariant(sol.alpha, z, *_fd_partials(sol, z, h))
    fine = _invariant(sol.alpha, z, *_fd_partials(sol, z, h / 2))
    extrap = (4 * fine - coarse) / 3
    return ComplexDiagnostic(z, complex(extrap), method, float(abs(extrap - fine)))


def fd_invariant(sol: PlanarSolution, z: complex, h: float) -> complex:
    """Plain central-difference invariant at a single step (no extrapolation)."""
    z = complex(z)
    if z == 0:
        raise DomainError("the invariant is singular at z = 0")
    return complex(_invariant(sol.alpha, z, *_fd_partials(sol, z, h)))


def origin_gradient_decay(sol: PlanarSolution, radii, angles: int = 16) -> float:
    """Least-squares slope of log max_theta |grad u| against log r.

    The maximum over ``angles`` directions is used so that the fit bounds
    the gradient rather than sampling one ray.
    """
    if sol.alpha < 0:
        raise DomainError("the decay estimate assumes alpha >= 0")
    radii = np.asarray(radii, dtype=float)
    if radii.ndim != 1 or radii.size < 2:
        raise DomainError("need at least two radii")
    if np.any(radii <= 0) or np.any(radii > 0.1):
        raise DomainError("radii must lie in (0, 0.1]")
    theta = 2 * np.pi * np.arange(angles) / angles
    z = radii[:, None] * np.exp(1j * theta)[None, :]
    _, grad, _ = sol.derivatives(z)
    size = np.max(np.linalg.norm(grad, axis=-1), axis=1)
    slope, _ = np.polyfit(np.log(radii), np.log(size), 1)
    return float(slope)
