"""Closed-form spectral data: eigenvalues, degeneracy values, multiplicities, Morse count."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from ..errors import DomainError
from .modes import eigen_mu

TIE_TOL = 1e-12


def _check(n, alpha=None, k=None):
    if n < 2:
        raise DomainError("dimension must be at least 2")
    if alpha is not None and not alpha > -1:
        raise DomainError("alpha must exceed -1")
    if k is not None and k < 0:
        raise DomainError("mode index must be non-negative")


def closed_form_eigenvalue(n: int, alpha: float, k: int):
    """Return ``(a_k, b_k, Lambda_k)``.

    r^a_k / (1 + r^(N/(N-1)))^b_k solves the weighted mode eigenproblem with
    Lam = Lambda_k = b_k (N + b_k - 1)/N and has no zeros, so it is the ground state.
    """
    _check(n, alpha, k)
    x = 4 * (n - 1) * eigen_mu(n, k) / (alpha + 1) ** 2
    root = math.sqrt(n * n * (n - 2) ** 2 + x)
    a = (root - n * (n - 2)) / (2 * (n - 1))
    b = (root + math.sqrt(x) - n * (n - 2)) / (2 * n)
    return a, b, b * (n + b - 1) / n


def alpha_k(n: int, k: int) -> float:
    """Weight exponent at which mode k joins the kernel."""
    _check(n, k=k)
    return math.sqrt((k * k + (n - 2) * k) / (n - 1)) - 1


def multiplicity(n: int, k: int) -> int:
    """Dimension of degree-k harmonic polynomials in N variables."""
    _check(n, k=k)
    # homogeneous polynomials of degree k minus those of degree k - 2
    lower = math.comb(n + k - 3, k - 2) if k >= 2 else 0
    return math.comb(n + k - 1, k) - lower


def s_threshold(n: int, alpha: float) -> float:
    _check(n, alpha)
    return (2 - n + math.sqrt((n - 2) ** 2 + 4 * (n - 1) * (alpha + 1) ** 2)) / 2


def degenerate_mode(n: int, alpha: float, tol: float = TIE_TOL) -> Optional[int]:
    """The k >= 1 with |alpha - alpha_k| <= tol, if any."""
    _check(n, alpha)
    # alpha_k is increasing, so only the integers around S can match
    s = s_threshold(n, alpha)
    for k in {max(1, math.floor(s)), max(1, math.ceil(s))}:
        if abs(alpha - alpha_k(n, k)) <= tol:
            return k
    return None


def morse_count(n: int, alpha: float, tol: float = TIE_TOL):
    """Return ``(S, total)`` with total = sum of M(k) over k < S.

    A degenerate mode (alpha within ``tol`` of alpha_k) has Lambda_k = 1 and is
    not counted.
    """
    s = s_threshold(n, alpha)
    skip = degenerate_mode(n, alpha, tol)
    total = sum(multiplicity(n, k) for k in range(math.ceil(s)) if k < s and k != skip)
    return s, total


def kernel_dimension(n: int, alpha: float, tol: float = TIE_TOL) -> int:
    k = degenerate_mode(n, alpha, tol)
    return 1 if k is None else 1 + multiplicity(n, k)


@dataclass(frozen=True)
class SpectralReport:
    n: int
    alpha: Optional[float]
    ks: list = field(default_factory=list)
    alpha_k: list = field(default_factory=list)
    mult: list = field(default_factory=list)
    lambda_k: list = field(default_factory=list)
    kernel_dim: list = field(default_factory=list)
    translation: list = field(default_factory=list)
    s_threshold: float = 0.0
    morse_total: int = 0

    def rows(self):
        keys = ("k", "alpha_k", "multiplicity", "lambda_k", "kernel_dim", "translation")
        return [dict(zip(keys, vals)) for vals in zip(
            self.ks, self.alpha_k, self.mult, self.lambda_k, self.kernel_dim, self.translation)]


def degeneracy_catalog(n: int, alpha_max: float, k_max: int) -> SpectralReport:
    """All degeneracy values alpha_k <= alpha_max for 1 <= k <= k_max.

    ``lambda_k`` holds Lambda_k evaluated at alpha = alpha_k (always 1),
    ``kernel_dim`` is 1 + M(k), and ``translation`` marks k = 1, where
    alpha_1 = 0 and the kernel modes are the translations.  The Morse data
    refer to alpha_max.
    """
    _check(n, alpha_max)
    if k_max < 1:
        raise DomainError("k_max must be at least 1")
    ks = [k for k in range(1, k_max + 1) if alpha_k(n, k) <= alpha_max]
    s, total = morse_count(n, alpha_max)
    return SpectralReport(
        n=n,
        alpha=None,
        ks=ks,
        alpha_k=[alpha_k(n, k) for k in ks],
        mult=[multiplicity(n, k) for k in ks],
        lambda_k=[closed_form_eigenvalue(n, alpha_k(n, k), k)[2] for k in ks],
        kernel_dim=[1 + multiplicity(n, k) for k in ks],
        translation=[k == 1 for k in ks],
        s_threshold=s,
        morse_total=total,
    )


def spectral_report(n: int, alpha: float, k_max: int) -> SpectralReport:
    """Per-mode data at a fixed alpha for 0 <= k <= k_max."""
    _check(n, alpha)
    if k_max < 0:
        raise DomainError("k_max must be non-negative")
    ks = list(range(k_max + 1))
    s, total = morse_count(n, alpha)
    deg = degenerate_mode(n, alpha)
    return SpectralReport(
        n=n,
        alpha=alpha,
        ks=ks,
        alpha_k=[alpha_k(n, k) for k in ks],
        mult=[multiplicity(n, k) for k in ks],
        lambda_k=[closed_form_eigenvalue(n, alpha, k)[2] for k in ks],
        # kernel contribution of each mode; the entries sum to the kernel dimension
        kernel_dim=[1 if k == 0 else multiplicity(n, k) if k == deg else 0 for k in ks],
        translation=[k == 1 and deg == 1 for k in ks],
        s_threshold=s,
        morse_total=total,
    )
