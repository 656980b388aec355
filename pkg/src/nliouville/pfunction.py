"""P-function of a solution in the conformal metric g = |x|^(2 alpha) delta.

With v = e^(-u/N) the P-function is taken in its algebraic form

    P = [(N-1) |grad_g v|_g^N + N^(1-N)] / v,   |grad_g v|_g = |x|^(-alpha) |grad v|,

which needs only first derivatives.  On the explicit families it is a
constant P0, and the trace-free tensor E = W - (P/N) Id vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import Problem, RadialGrid
from .errors import CriticalPointError, DomainError
from .geometry import ConformalMetric, ScalarField, fd_step, g_hessian, g_hessian_fd, radial_field
from .solutions import PlanarSolution, RadialSolution

CRITICAL_GRADIENT = 1e-12


@dataclass(frozen=True)
class PProfile:
    """Conformal quantities built on a field u with closed-form derivatives.

    ``weighted_grad`` optionally returns |x|^(-alpha) |grad u| in a form that
    stays finite at the origin; without it the origin is rejected.
    """

    problem: Problem
    field: ScalarField
    sol: Optional[object] = None
    weighted_grad: Optional[Callable[[np.ndarray], np.ndarray]] = None

    @property
    def n(self) -> int:
        return self.problem.n

    def v(self, x):
        return np.exp(-self.field.value(_points(x, self.n)) / self.n)

    def grad_g_norm(self, x):
        x = _points(x, self.n)
        a = self.problem.alpha
        r = np.linalg.norm(x, axis=-1)
        at_origin = r == 0
        if np.any(at_origin) and (a < 0 or self.weighted_grad is None):
            raise DomainError("P is not defined at the origin for this profile")
        v = self.v(x)
        if self.weighted_grad is not None:
            wg = self.weighted_grad(x)
        else:
            wg = r ** (-a) * np.linalg.norm(self.field.gradient(x), axis=-1)
        return v * wg / self.n

    def p(self, x):
        n = self.n
        return ((n - 1) * self.grad_g_norm(x) ** n + float(n) ** (1 - n)) / self.v(x)

    def v_field(self) -> ScalarField:
        """v = e^(-u/N) as a field with exact gradient and Hessian."""
        n, f = self.n, self.field

        def grad(x):
            return -(self.v(x) / n)[..., None] * f.gradient(x)

        def hess(x):
            du = f.gradient(x)
            outer = du[..., :, None] * du[..., None, :]
            return self.v(x)[..., None, None] * (outer / n**2 - f.hessian(x) / n)

        return ScalarField(self.v, grad, hess, n)


def _points(x, n):
    x = np.asarray(x)
    if np.iscomplexobj(x):
        if n != 2:
            raise DomainError("complex points are only meaningful in the plane")
        x = np.stack([x.real, x.imag], axis=-1)
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != n:
        raise DomainError(f"points must have trailing dimension {n}, got {x.shape}")
    return x


def profile_from_radial(sol: RadialSolution) -> PProfile:
    p = sol.problem
    g, lam, a = p.exponent, sol.lam, p.alpha

    def weighted_grad(x):
        # |u'| r^(-alpha) = N gamma lam r^(gamma-1-alpha) / (1 + lam r^gamma)
        r = np.linalg.norm(x, axis=-1)
        return p.n * g * lam * r ** (g - 1 - a) / (1 + lam * r**g)

    return PProfile(p, sol.field(), sol, weighted_grad)


def profile_from_planar(sol: PlanarSolution) -> PProfile:
    l2 = sol.lam**2

    def weighted_grad(x):
        # |grad u| = 4 lam^2 |w| |w'| / (1 + lam^2 |w|^2) and |w'| = (a+1)|z|^a
        w = sol._w(x[..., 0] + 1j * x[..., 1])[0]
        mw = np.abs(w)
        return 4 * l2 * (sol.alpha + 1) * mw / (1 + l2 * mw**2)

    return PProfile(sol.problem, sol.field(), sol, weighted_grad)


def profile_from_field(problem: Problem, field: ScalarField) -> PProfile:
    """Profile of an arbitrary field u (no closed-form origin extension)."""
    if field.n != problem.n:
        raise DomainError("field dimension does not match the problem")
    return PProfile(problem, field)


def perturbed_profile(profile: PProfile, eps: float = 0.01) -> PProfile:
    """The field u + eps sin|x|, which no longer solves the equation."""

    def bump(r):
        return eps * np.sin(r), eps * np.cos(r), -eps * np.sin(r)

    return profile_from_field(profile.problem, profile.field + radial_field(bump, profile.n))


def p_value(profile: PProfile, x):
    """P at ``x`` (points of shape (..., N), or complex numbers when N = 2)."""
    return profile.p(x)


def _sample_points(profile: PProfile, samples):
    if isinstance(samples, RadialGrid):
        direction = np.ones(profile.n) / math.sqrt(profile.n)
        return samples.points[:, None] * direction
    pts = _points(samples, profile.n)
    return pts.reshape(-1, profile.n)


def constancy_certificate(profile: PProfile, samples):
    """Return ``(p0, max_dev)``: the mean of P and the largest deviation from it.

    ``samples`` is a RadialGrid (evaluated along the diagonal ray) or a point
    cloud.
    """
    p = profile.p(_sample_points(profile, samples))
    p0 = float(np.mean(p))
    return p0, float(np.max(np.abs(p - p0)))


def _default_family(problem: Problem, family):
    family = family or ("planar" if problem.n == 2 else "radial")
    if family not in ("planar", "radial"):
        raise DomainError(f"unknown family {family!r}")
    if family == "planar" and problem.n != 2:
        raise DomainError("the planar family exists only for N = 2")
    return family


def lambda_from_p0(problem: Problem, p0: float, family: Optional[str] = None) -> float:
    """Scale parameter of the family member whose P-function equals ``p0``.

    For N = 2 the planar parametrisation is the default; its lambda squared
    is the radial one.
    """
    if not p0 > 0:
        raise DomainError("P0 must be positive")
    n, a = problem.n, problem.alpha
    if _default_family(problem, family) == "planar":
        return p0 / (math.sqrt(2) * (a + 1))
    q = n / (n - 1)
    return p0**q * n ** (n - 1) * (n - 1) / (n * (a + 1)) ** q


def p0_from_lambda(problem: Problem, lam: float, family: Optional[str] = None) -> float:
    """Inverse of :func:`lambda_from_p0`."""
    if not lam > 0:
        raise DomainError("lambda must be positive")
    n, a = problem.n, problem.alpha
    if _default_family(problem, family) == "planar":
        return lam * math.sqrt(2) * (a + 1)
    q = n / (n - 1)
    return (lam * (n * (a + 1)) ** q / (n ** (n - 1) * (n - 1))) ** (1 / q)


def endpoint_v(problem: Problem, p0: float, x):
    """v = e^(-u/N) of the radial member with constant P0, written through P0."""
    if not p0 > 0:
        raise DomainError("P0 must be positive")
    n, a = problem.n, problem.alpha
    r = np.linalg.norm(_points(x, n), axis=-1)
    coef = p0 ** (1 / (n - 1)) * (n - 1) / (n * (a + 1)) ** (n / (n - 1))
    return coef * r**problem.exponent + 1 / (p0 * n ** (n - 1))


@dataclass(frozen=True)
class ETensorCheck:
    w_matrix: np.ndarray
    e_matrix: np.ndarray
    frob_norm_e: float
    p: float
    trace_defect: float
    frob_norm_e_fd: float
    divergence_p: float


def _flux_matrix(grad_v, n):
    """The matrix |dv|^(N-2) Id + (N-2) |dv|^(N-4) dv (x) dv."""
    s = np.linalg.norm(grad_v)
    a = s ** (n - 2) * np.eye(n)
    if n > 2:
        a = a + (n - 2) * s ** (n - 4) * np.outer(grad_v, grad_v)
    return a


def e_tensor(profile: PProfile, x, h: float = 1e-4) -> ETensorCheck:
    """Assemble W = |x|^(-N alpha) A(v) H_g(v) and E = W - (P/N) Id at ``x``.

    The closed-form g-Hessian is the primary route; ``frob_norm_e_fd``
    repeats the assembly with a finite-difference covariant Hessian of step
    ``h``, and ``divergence_p`` evaluates P as |x|^(-N alpha) div(|dv|^(N-2) dv)
    by central differences of the closed-form flux.
    """
    n, a = profile.n, profile.problem.alpha
    x = _points(x, n)
    if x.ndim != 1:
        raise DomainError("e_tensor takes a single point")
    r = float(np.linalg.norm(x))
    if r == 0:
        raise DomainError("the conformal metric is singular at the origin")
    if not h > 0:
        raise DomainError("step must be positive")
    vf = profile.v_field()
    dv = vf.gradient(x)
    if np.linalg.norm(dv) < CRITICAL_GRADIENT:
        raise CriticalPointError(f"grad v vanishes at {x}")
    metric = ConformalMetric(n, a)
    weight = r ** (-n * a)
    flux = _flux_matrix(dv, n)
    w = weight * flux @ g_hessian(metric, vf, x)
    p = float(profile.p(x))
    e = w - p / n * np.eye(n)
    w_fd = weight * flux @ g_hessian_fd(metric, vf.value, x, h)
    e_fd = w_fd - p / n * np.eye(n)

    def flux_vec(y):
        d = vf.gradient(y)
        return np.linalg.norm(d) ** (n - 2) * d

    eye = np.eye(n) * h
    div = sum((flux_vec(x + eye[i])[i] - flux_vec(x - eye[i])[i]) / (2 * h) for i in range(n))
    return ETensorCheck(w, e, float(np.linalg.norm(e)), p, abs(float(np.trace(w)) - p),
                        float(np.linalg.norm(e_fd)), weight * div)


@dataclass(frozen=True)
class SubharmonicityProbe:
    lhs: float
    rhs: float
    rhs_general: float
    step: float


def subharmonicity_probe_2d(profile: PProfile, x, h: float = 1e-3) -> SubharmonicityProbe:
    """Compare Delta_g P with 2 v^-1 |H_g(v) - (P/2) g|_g^2 at ``x`` (N = 2).

    ``lhs`` is the 5-point Laplacian of P times |x|^(-2 alpha).  ``rhs`` is the
    right-hand side valid on solutions.  ``rhs_general`` holds for any v,
    with f = Delta_g v:

        v Delta_g P = 2|H_g - (f/2) g|^2 + f^2 + 2 <dv, d(f - P)>_g - P f,

    which reduces to ``rhs`` when f = P.  Gradients of f use central
    differences with step ``h``, so lhs - rhs_general is O(h^2).
    """
    if profile.n != 2:
        raise DomainError("the subharmonicity probe is two-dimensional")
    x = _points(x, 2)
    if x.ndim != 1 or not np.any(x):
        raise DomainError("probe point must be a single nonzero point")
    if not h > 0:
        raise DomainError("step must be positive")
    a = profile.problem.alpha
    metric = ConformalMetric(2, a)
    vf = profile.v_field()

    def conf(y):
        return np.dot(y, y) ** a

    def f_of(y):
        return np.trace(vf.hessian(y)) / conf(y)

    e1, e2 = np.array([h, 0.0]), np.array([0.0, h])
    p = profile.p
    lap = (p(x + e1) + p(x - e1) + p(x + e2) + p(x - e2) - 4 * p(x)) / h**2
    lhs = float(lap / conf(x))

    v = float(vf.value(x))
    hg = g_hessian(metric, vf, x)
    p0 = float(p(x))
    # |T|_g^2 = |x|^(-4 alpha) |T|_F^2 for a (0,2)-tensor T
    rhs = 2 / v * np.sum((hg - p0 / 2 * conf(x) * np.eye(2)) ** 2) / conf(x) ** 2

    f = f_of(x)
    grad_fp = np.array([
        (f_of(x + e) - p(x + e) - f_of(x - e) + p(x - e)) / (2 * h) for e in (e1, e2)
    ])
    dv = vf.gradient(x)
    trace_free = np.sum((hg - f / 2 * conf(x) * np.eye(2)) ** 2) / conf(x) ** 2
    general = (2 * trace_free + f**2 + 2 * np.dot(dv, grad_fp) / conf(x) - p0 * f) / v
    return SubharmonicityProbe(lhs, float(rhs), float(general), h)
