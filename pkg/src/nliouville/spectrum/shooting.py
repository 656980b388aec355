"""Double shooting for the mode equation in the Pruefer angle.

In t = log r the mode equation reads eta_tt + A eta_t + V eta = 0 with
A = a0/(1+s), V = Lam K s/(1+s)^2 - beta, s = e^(g t).  The angle
theta = atan2(eta, eta_t) obeys

    theta' = cos^2 theta + A sin theta cos theta + V sin^2 theta,

which never blows up.  It is started from the bounded Frobenius branch
at r = 1e-6 and from the decaying branch at r = 1e6, both integrated to
r = 1.  Matching the angles modulo pi is the same as a vanishing
Wronskian there.  The mismatch M = theta_L - theta_R decreases
continuously through integer multiples of pi.  Each crossing is an
eigenvalue.
"""

from __future__ import annotations

import math

from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from ..errors import BracketError, ConvergenceError, DomainError
from .modes import eigen_mu, mode_coefficients

R_MIN = 1e-6
R_MAX = 1e6
_ODE_OPTS = dict(rtol=1e-12, atol=1e-13, method="DOP853")


def _angle_rhs(t, theta, a0, big_k, g, lam, beta):
    s = math.exp(g * t)
    a = a0 / (1 + s)
    v = lam * big_k * s / (1 + s) ** 2 - beta
    c, sn = math.cos(theta[0]), math.sin(theta[0])
    return [c * c + a * sn * c + v * sn * sn]


def left_series(n: int, lam: float, beta: float, m: float, order: int = 2):
    """Coefficients c_j of eta = r^m sum c_j s^j about r = 0 (c_0 = 1)."""
    a0, big_k, g = mode_coefficients(n)
    c = [1.0]
    for j in range(1, order + 1):
        acc = sum(c[j - i] * (a0 * (-1) ** i * (m + (j - i) * g) + lam * big_k * (-1) ** (i - 1) * i)
                  for i in range(1, j + 1))
        c.append(-acc / ((m + j * g) ** 2 + a0 * (m + j * g) - beta))
    return c


def right_series(n: int, lam: float, beta: float, kappa: float, order: int = 1):
    """Coefficients d_j of eta = r^(-kappa) sum d_j s^(-j) about r = infinity."""
    a0, big_k, g = mode_coefficients(n)
    d = [1.0]
    for j in range(1, order + 1):
        acc = sum(d[j - i] * (a0 * (-1) ** (i - 1) * (-kappa - (j - i) * g)
                              + lam * big_k * (-1) ** (i - 1) * i)
                  for i in range(1, j + 1))
        d.append(-acc / ((kappa + j * g) ** 2 - beta))
    return d


def mismatch(n: int, lam: float, kappa: float, r_min: float = R_MIN, r_max: float = R_MAX) -> float:
    """Pruefer mismatch theta_L(0) - theta_R(0) for beta = kappa^2.

    The signed decay rate ``kappa`` continues the mismatch smoothly through
    beta = 0.  For N = 2 the left exponent is kappa as well.
    """
    a0, big_k, g = mode_coefficients(n)
    beta = kappa * kappa
    t_min, t_max = math.log(r_min), math.log(r_max)
    m = kappa if n == 2 else -a0 / 2 + math.sqrt(a0 * a0 / 4 + beta)

    s = math.exp(g * t_min)
    c = left_series(n, lam, beta, m)
    eta = sum(cj * s**j for j, cj in enumerate(c))
    deta = sum(cj * (m + j * g) * s**j for j, cj in enumerate(c))
    theta_l = math.atan2(eta, deta) % math.pi

    sig = math.exp(-g * t_max)
    d = right_series(n, lam, beta, kappa)
    eta = sum(dj * sig**j for j, dj in enumerate(d))
    deta = sum(dj * (-kappa - j * g) * sig**j for j, dj in enumerate(d))
    theta_r = math.atan2(eta, deta) % math.pi
    if theta_r == 0:
        theta_r = math.pi

    args = (a0, big_k, g, lam, beta)
    left = solve_ivp(_angle_rhs, (t_min, 0.0), [theta_l], args=args, **_ODE_OPTS)
    right = solve_ivp(_angle_rhs, (t_max, 0.0), [theta_r], args=args, **_ODE_OPTS)
    if not (left.success and right.success):
        raise ConvergenceError("angle integration failed", ())
    return float(left.y[0, -1] - right.y[0, -1])


def _signed_root(beta: float) -> float:
    return math.copysign(math.sqrt(abs(beta)), beta)


def _root(f, lo, hi, tol):
    try:
        x, info = brentq(f, lo, hi, xtol=tol, rtol=1e-15, maxiter=200, full_output=True)
    except RuntimeError as exc:
        raise ConvergenceError(str(exc), (lo, hi)) from exc
    if not info.converged:
        raise ConvergenceError("root search did not converge", (lo, x, hi))
    return x


def sl_solve_beta(n: int, bracket, tol: float = 1e-10, lam: float = 1.0) -> float:
    """Value of beta in ``bracket`` with a solution bounded at both ends.

    The bracket is searched in the signed root kappa = sign(beta) sqrt|beta|.
    BracketError is raised if the mismatch crosses no multiple of pi.
    """
    lo, hi = (float(b) for b in bracket)
    if not lo < hi:
        raise DomainError("bracket must be increasing")
    if not tol > 0:
        raise DomainError("tolerance must be positive")
    k_lo, k_hi = _signed_root(lo), _signed_root(hi)
    m_lo, m_hi = mismatch(n, lam, k_lo), mismatch(n, lam, k_hi)
    # mismatch decreases in kappa; find the multiples of pi it passes
    j_hi = math.ceil(m_hi / math.pi)
    j_lo = math.floor(m_lo / math.pi)
    if j_hi > j_lo:
        raise BracketError(f"no eigenvalue in beta bracket ({lo}, {hi}): mismatch/pi in "
                           f"({m_hi / math.pi:.6f}, {m_lo / math.pi:.6f})")
    j = j_hi
    kappa = _root(lambda k: mismatch(n, lam, k) - j * math.pi, k_lo, k_hi, tol * 1e-2)
    return math.copysign(kappa * kappa, kappa)


def sl_solve_lambda(n: int, alpha: float, k: int, index: int = 0, tol: float = 1e-10) -> float:
    """Eigenvalue Lam_{k,index} of the weighted mode problem by shooting.

    The ``index``-th eigenvalue is where the mismatch reaches index * pi;
    the mismatch increases with Lam.
    """
    if not alpha > -1:
        raise DomainError("alpha must exceed -1")
    if index < 0:
        raise DomainError("index must be non-negative")
    if not tol > 0:
        raise DomainError("tolerance must be positive")
    kappa = math.sqrt(eigen_mu(n, k) / ((n - 1) * (alpha + 1) ** 2))

    def f(lam):
        return mismatch(n, lam, kappa) - index * math.pi

    lo, hi = -0.5, 1.0
    for _ in range(60):
        if f(lo) < 0:
            break
        lo *= 2
    else:
        raise BracketError("could not bracket the eigenvalue from below")
    for _ in range(60):
        if f(hi) > 0:
            break
        hi *= 2
    else:
        raise BracketError("could not bracket the eigenvalue from above")
    return _root(f, lo, hi, tol)
