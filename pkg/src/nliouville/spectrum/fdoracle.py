"""Finite-volume oracle for the weighted mode eigenproblem.

In t = log r the mode problem is the symmetric pencil

    -(p eta_t)_t + beta p eta = Lam q eta,
    p = (s/(1+s))^(N-2),  q = p K s/(1+s)^2,  s = e^(N t/(N-1)),

discretised on a uniform t grid with natural boundary conditions and
solved by shift-invert Lanczos.  It shares nothing with the shooting
solver beyond the equation itself.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import diags
from scipy.sparse.linalg import eigsh

from ..errors import DomainError
from .modes import eigen_mu, mode_coefficients


def fd_eigenvalue(n: int, alpha: float, k: int, t_max: float = 12.0, points: int = 4000,
                  shift: float = -0.3) -> float:
    """Lowest eigenvalue Lam_{k,0}; agrees with shooting to about 1e-4."""
    if not alpha > -1:
        raise DomainError("alpha must exceed -1")
    if points < 10 or not t_max > 0:
        raise DomainError("grid too small")
    _, big_k, g = mode_coefficients(n)
    beta = eigen_mu(n, k) / ((n - 1) * (alpha + 1) ** 2)
    t = np.linspace(-t_max, t_max, points)
    h = t[1] - t[0]

    def p_of(tt):
        s = np.exp(g * tt)
        return (s / (1 + s)) ** (n - 2)

    p_mid = p_of(0.5 * (t[1:] + t[:-1]))
    s = np.exp(g * t)
    q = p_of(t) * big_k * s / (1 + s) ** 2
    main = np.zeros(points)
    main[:-1] += p_mid
    main[1:] += p_mid
    stiff = diags([main / h**2 + beta * p_of(t), -p_mid / h**2, -p_mid / h**2], [0, 1, -1]).tocsc()
    mass = diags(q).tocsc()
    vals = eigsh(stiff, k=1, M=mass, sigma=shift, which="LM", return_eigenvectors=False)
    return float(vals.min())
