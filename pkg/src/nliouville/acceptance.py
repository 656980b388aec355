"""Acceptance checks shared by ``verify-all`` and the test suite.

Each criterion returns a :class:`CriterionResult` whose rows carry the
computed value, the reference, the tolerance and the verdict.  Random
probes use fixed seeds so every run is byte-identical.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List

import numpy as np
from scipy.optimize import brentq

from .core import log_grid, make_problem
from .errors import BracketError
from .holo2d import holomorphic_invariant, origin_gradient_decay
from .pfunction import (
    constancy_certificate,
    e_tensor,
    lambda_from_p0,
    profile_from_planar,
    profile_from_radial,
)
from .quantization import mass, mass_raw
from .report import CheckRow, bound, check
from .solutions import (
    PlanarSolution,
    check_asymptotics,
    radial_residual,
    radial_solution,
    richardson_residual,
)
from .spectrum import (
    KernelFunction,
    ModeODE,
    alpha_k,
    bar_eta0,
    bar_eta1,
    closed_form_eigenvalue,
    fd_eigenvalue,
    kernel_residual,
    kernel_residual_fd,
    mode_ode_residual,
    morse_count,
    multiplicity,
    sl_solve_beta,
    sl_solve_lambda,
)
from .spectrum.harmonics import harmonic_basis
from .spectrum.modes import bar_eta0_zero

DIMENSIONS = (2, 3, 4)
ALPHAS = (-0.9, -0.5, 0.0, 0.5, 2.0)
LAMBDAS = (0.5, 1.0, 3.0)
PLANAR_ALPHAS = (0.0, 1.0, 2.0, 0.5, 1.5)
WORKERS_ENV = "NLIOUVILLE_WORKERS"


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    rows: List[CheckRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        failed = [r.name for r in self.rows if not r.passed]
        tail = f" (failed: {', '.join(failed)})" if failed else ""
        return f"[{verdict}] criterion {self.number}: {self.title}{tail}"


def radial_lattice():
    return [(n, a, lam) for n in DIMENSIONS for a in ALPHAS for lam in LAMBDAS]


def planar_lattice():
    """Planar members: c != 0 only where alpha is a non-negative integer."""
    out = []
    for a in PLANAR_ALPHAS:
        for lam in LAMBDAS:
            out.append(PlanarSolution(lam, 0j, a))
            if float(a).is_integer():
                out.append(PlanarSolution(lam, 0.5 + 0.5j, a))
    return out


def _annulus(rng, count, r_lo, r_hi, n=2):
    radii = np.exp(rng.uniform(math.log(r_lo), math.log(r_hi), count))
    if n == 2:
        return radii * np.exp(2j * np.pi * rng.uniform(size=count))
    dirs = rng.normal(size=(count, n))
    return radii[:, None] * dirs / np.linalg.norm(dirs, axis=1, keepdims=True)


def criterion_quantization() -> CriterionResult:
    worst = worst_raw = 0.0
    for n, a, lam in radial_lattice():
        sol = radial_solution(n, a, lam)
        worst = max(worst, mass(sol).rel_err)
        worst_raw = max(worst_raw, mass_raw(sol).rel_err)
    m2 = mass(radial_solution(2, 0.0, 1.0)).numeric
    return CriterionResult(1, "quantization of the total weighted mass", [
        bound("mass rel. error, substituted quadrature (lattice max)", worst, 1e-8, "quantization"),
        bound("mass rel. error, raw-variable oracle (lattice max)", worst_raw, 1e-8, "quantization"),
        check("mass N=2 alpha=0", m2, 25.1327412, 1e-7, "quantization", relative=True),
    ])


def criterion_residual() -> CriterionResult:
    grid = log_grid(1e-3, 1e3, 400).points
    worst = max(float(np.max(radial_residual(radial_solution(n, a, lam), grid)))
                for n, a, lam in radial_lattice())
    rng = np.random.default_rng(20240101)
    planar = 0.0
    for a in (0.0, 1.0, 2.0):
        sol = PlanarSolution(1.0, 0.5 + 0.5j, a)
        for z in _annulus(rng, 20, 0.2, 2.0):
            planar = max(planar, richardson_residual(sol, z).value)
    return CriterionResult(2, "exact-solution residuals", [
        bound("radial N-Laplacian rel. residual (lattice max)", worst, 1e-9, "radial family"),
        bound("planar Richardson residual (60 probes)", planar, 1e-8, "planar family"),
    ])


def criterion_pfunction() -> CriterionResult:
    grid = log_grid()
    worst = worst_rt = 0.0
    for n, a, lam in radial_lattice():
        prof = profile_from_radial(radial_solution(n, a, lam))
        p0, dev = constancy_certificate(prof, grid)
        worst = max(worst, dev / p0)
        fam = "radial"
        back = lambda_from_p0(prof.problem, p0, fam)
        if n == 2:
            # planar dictionary: lambda_planar^2 = lambda_radial
            back = lambda_from_p0(prof.problem, p0, "planar") ** 2
        worst_rt = max(worst_rt, abs(back - lam) / lam)
    rng = np.random.default_rng(314159)
    worst_planar = worst_rt_planar = 0.0
    for sol in planar_lattice():
        if sol.c == 0:
            continue
        p0, dev = constancy_certificate(profile_from_planar(sol), _annulus(rng, 100, 0.1, 10.0))
        worst_planar = max(worst_planar, dev / p0)
        worst_rt_planar = max(worst_rt_planar, abs(lambda_from_p0(sol.problem, p0) - sol.lam) / sol.lam)
    p_flat = float(profile_from_radial(radial_solution(2, 0.0, 1.0)).p(np.array([0.7, 0.0])))
    return CriterionResult(3, "P-function constancy and the lambda <-> P0 dictionary", [
        bound("radial max |P - P0| / P0 (lattice, 400-pt grid)", worst, 1e-9, "P-function constancy"),
        bound("planar max |P - P0| / P0 (100 annulus pts)", worst_planar, 1e-9, "P-function constancy"),
        check("P0 for N=2 alpha=0 lambda=1", p_flat, math.sqrt(2), 1e-12, "P-function constancy"),
        bound("lambda round trip, radial members", worst_rt, 1e-8, "lambda-P0 dictionary"),
        bound("lambda round trip, planar members", worst_rt_planar, 1e-8, "lambda-P0 dictionary"),
    ])


def criterion_etensor() -> CriterionResult:
    rng = np.random.default_rng(271828)
    worst = worst_trace = 0.0
    for n, a, lam in radial_lattice():
        prof = profile_from_radial(radial_solution(n, a, lam))
        for x in _annulus(rng, 30, 0.2, 5.0, n):
            res = e_tensor(prof, x)
            worst = max(worst, res.frob_norm_e)
            worst_trace = max(worst_trace, res.trace_defect)
    for sol in planar_lattice():
        prof = profile_from_planar(sol)
        for z in _annulus(rng, 30, 0.2, 5.0):
            res = e_tensor(prof, [z.real, z.imag])
            worst = max(worst, res.frob_norm_e)
            worst_trace = max(worst_trace, res.trace_defect)
    return CriterionResult(4, "vanishing of the trace-free tensor E", [
        bound("max ||E||_F (30 probes per member)", worst, 1e-6, "E = 0"),
        bound("max |Tr W - P|", worst_trace, 1e-7, "E = 0"),
    ])


def criterion_modes() -> CriterionResult:
    r = log_grid(1e-3, 1e3, 400).points
    rows = []
    res0 = res1 = 0.0
    for n in DIMENSIONS:
        res0 = max(res0, float(np.max(np.abs(mode_ode_residual(ModeODE.with_beta(n, 0.0), lambda t: bar_eta0(n, t), r)))))
        res1 = max(res1, float(np.max(np.abs(mode_ode_residual(ModeODE.with_beta(n, 1.0), lambda t: bar_eta1(n, t), r)))))
    rows.append(bound("bar eta_0 mode residual, beta=0", res0, 1e-10, "bounded mode solutions"))
    rows.append(bound("bar eta_1 mode residual, beta=1", res1, 1e-10, "bounded mode solutions"))
    for n in DIMENSIONS:
        lower = (-0.5, 0.5) if n == 2 else (-0.1, 0.5)
        rows.append(check(f"shooting beta_0, N={n}", sl_solve_beta(n, lower), 0.0, 1e-6, "bounded mode solutions"))
        rows.append(check(f"shooting beta_1, N={n}", sl_solve_beta(n, (0.5, 1.5)), 1.0, 1e-6, "bounded mode solutions"))
        try:
            sl_solve_beta(n, (0.1, 0.9))
            found = 1.0
        except BracketError:
            found = 0.0
        rows.append(check(f"eigenvalue found in beta (0.1, 0.9), N={n}", found, 0.0, 0.0, "bounded mode solutions"))
        root = brentq(lambda t: bar_eta0(n, t)[0], 1e-2, 1e2, xtol=1e-15, rtol=1e-15)
        rows.append(check(f"zero of bar eta_0, N={n}", root, bar_eta0_zero(n), 1e-10, "bounded mode solutions"))
    return CriterionResult(5, "closed-form mode solutions and the admissible beta values", rows)


def criterion_eigenvalues() -> CriterionResult:
    worst = 0.0
    for n in DIMENSIONS:
        for a in (-0.5, 0.0, 0.5, 1.0):
            for k in range(6):
                worst = max(worst, abs(sl_solve_lambda(n, a, k) - closed_form_eigenvalue(n, a, k)[2]))
    at_deg = at_deg_shoot = 0.0
    for n in DIMENSIONS:
        for k in (1, 2, 3):
            ak = alpha_k(n, k)
            at_deg = max(at_deg, abs(closed_form_eigenvalue(n, ak, k)[2] - 1))
            at_deg_shoot = max(at_deg_shoot, abs(sl_solve_lambda(n, ak, k) - 1))
    fd = max(abs(fd_eigenvalue(n, a, k) - closed_form_eigenvalue(n, a, k)[2])
             for n, a, k in [(2, 0.0, 2), (3, 0.5, 3), (4, -0.5, 1)])
    rows = [
        bound("max |shooting - closed form| (k<=5, N=2..4, 4 alphas)", worst, 1e-6, "ground-state eigenvalues"),
        bound("max |Lambda_k - 1| at alpha = alpha_k, closed form", at_deg, 1e-8, "ground-state eigenvalues"),
        bound("max |Lambda_k - 1| at alpha = alpha_k, shooting", at_deg_shoot, 1e-8, "ground-state eigenvalues"),
        bound("finite-volume oracle vs closed form", fd, 1e-4, "ground-state eigenvalues"),
    ]
    for k, ref in zip(range(3), (0.0, 1.0, 3.0)):
        rows.append(check(f"Lambda_{k} for N=2 alpha=0", sl_solve_lambda(2, 0.0, k), ref, 1e-6,
                          "ground-state eigenvalues"))
    return CriterionResult(6, "eigenvalue cross-validation", rows)


def criterion_catalog() -> CriterionResult:
    rows = []
    worst_a2 = max(abs(alpha_k(2, k) - (k - 1)) for k in range(1, 9))
    rows.append(bound("N=2: max |alpha_k - (k-1)|, k=1..8", worst_a2, 1e-12, "degeneracy values"))
    rows.append(check("N=2: multiplicities equal 2", float(all(multiplicity(2, k) == 2 for k in range(1, 9))),
                      1.0, 0.0, "kernel dimension"))
    rows.append(check("N=3: alpha_2", alpha_k(3, 2), math.sqrt(3) - 1, 1e-12, "degeneracy values"))
    rows.append(check("N=3: multiplicities equal 2k+1",
                      float(all(multiplicity(3, k) == 2 * k + 1 for k in range(9))), 1.0, 0.0,
                      "kernel dimension"))
    rows.append(check("N=3: harmonic basis sizes equal M(k)",
                      float(all(len(harmonic_basis(3, k)) == multiplicity(3, k) for k in range(5))), 1.0, 0.0,
                      "kernel dimension"))
    rng = np.random.default_rng(161803)
    worst = worst_fd = 0.0
    for n in (2, 3):
        pts = _annulus(rng, 40, 0.2, 5.0, n)
        if n == 2:
            pts = np.stack([pts.real, pts.imag], axis=-1)
        funcs = [(a, KernelFunction("Z_alpha", n, a)) for a in (-0.3, 0.0, 0.5, 2.0)]
        for k in range(1, 5 if n == 3 else 4):
            ak = alpha_k(n, k)
            funcs += [(ak, KernelFunction("Z_alpha_i", n, ak, k, i)) for i in range(multiplicity(n, k))]
        funcs += [(0.0, KernelFunction("Zcal_i", n, 0.0, None, i)) for i in range(n)]
        for a, fn in funcs:
            worst = max(worst, kernel_residual(n, a, fn, pts))
            worst_fd = max(worst_fd, kernel_residual_fd(n, a, fn, pts[:8]))
    rows.append(bound("kernel functions, strong-form residual (N=2,3)", worst, 1e-8, "kernel of the linearization"))
    rows.append(bound("kernel functions, divergence-form FD residual", worst_fd, 1e-5, "kernel of the linearization"))
    return CriterionResult(7, "degeneracy catalog and kernel functions", rows)


def morse_sweep(n: int, k: int, half_width: int = 5, step: float = 0.01):
    """Morse totals on alpha_k + j*step for |j| <= half_width."""
    ak = alpha_k(n, k)
    alphas = [ak + j * step for j in range(-half_width, half_width + 1)]
    return alphas, [morse_count(n, a)[1] for a in alphas]


def shooting_morse_total(n: int, alpha: float, k_max: int = 6) -> int:
    """sum of M(k) over modes whose ground-state eigenvalue, by shooting, is below 1."""
    return sum(multiplicity(n, k) for k in range(k_max + 1) if sl_solve_lambda(n, alpha, k) < 1 - 1e-9)


def criterion_morse() -> CriterionResult:
    rows = []
    ones = [morse_count(n, 0.0)[1] for n in range(2, 11)]
    rows.append(check("total at alpha=0 for N=2..10 all equal 1", float(all(t == 1 for t in ones)), 1.0, 0.0,
                      "Morse count"))
    for n in (2, 3):
        for k in (1, 2):
            alphas, totals = morse_sweep(n, k)
            jumps = [b - a for a, b in zip(totals, totals[1:])]
            monotone = all(j >= 0 for j in jumps)
            rows.append(check(f"N={n}: jump across alpha_{k}", float(totals[-1] - totals[0]),
                              float(multiplicity(n, k)), 0.0, "Morse count"))
            rows.append(check(f"N={n}: sweep around alpha_{k} is monotone with a single jump",
                              float(monotone and sum(1 for j in jumps if j) == 1), 1.0, 0.0, "Morse count"))
    for n, a in ((2, 1.5), (3, 1.0)):
        rows.append(check(f"shooting count vs closed form, N={n} alpha={a}", float(shooting_morse_total(n, a)),
                          float(morse_count(n, a)[1]), 0.0, "Morse count"))
    return CriterionResult(8, "Morse count", rows)


def criterion_holomorphic() -> CriterionResult:
    rng = np.random.default_rng(141421)
    worst = worst_fd = 0.0
    decay_margin = math.inf
    for sol in planar_lattice():
        for z in _annulus(rng, 50, 0.1, 10.0):
            worst = max(worst, abs(holomorphic_invariant(sol, z).invariant_value))
        for z in 3 * np.exp(2j * np.pi * np.arange(8) / 8):
            worst_fd = max(worst_fd, abs(holomorphic_invariant(sol, z, method="finite-difference").invariant_value))
        exponent = origin_gradient_decay(sol, np.logspace(-3, -1, 20))
        decay_margin = min(decay_margin, exponent - (sol.alpha - 0.05))
    return CriterionResult(9, "holomorphic invariant and gradient decay at the origin", [
        bound("max |u_zz - u_z^2/2 - alpha u_z/z| (50 probes per member)", worst, 1e-7, "holomorphic invariant"),
        bound("finite-difference invariant, |z|=3, 8 angles", worst_fd, 1e-7, "holomorphic invariant"),
        CheckRow("min (decay exponent - (alpha - 0.05))", decay_margin, 0.0, 0.0, decay_margin >= 0,
                 "gradient decay"),
    ])


def criterion_asymptotics() -> CriterionResult:
    rows = []
    worst = 0.0
    failing = 0
    for n, a, lam in radial_lattice():
        _, slope_defect = check_asymptotics(radial_solution(n, a, lam), 1e6)
        worst = max(worst, slope_defect)
        failing += slope_defect >= 1e-10
    rows.append(bound("max |r u'(r) + slope| at r=1e6 (lattice)", worst, 1e-10, "gradient asymptotics"))
    rows.append(check("lattice members above tolerance", float(failing), 0.0, 0.0, "gradient asymptotics"))
    return CriterionResult(10, "asymptotic slope of the radial family", rows)


CRITERIA: List[Callable[[], CriterionResult]] = [
    criterion_quantization,
    criterion_residual,
    criterion_pfunction,
    criterion_etensor,
    criterion_modes,
    criterion_eigenvalues,
    criterion_catalog,
    criterion_morse,
    criterion_holomorphic,
    criterion_asymptotics,
]


def worker_count() -> int:
    """Pool size from the environment; 1 (serial) when unset or invalid."""
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run(index: int) -> CriterionResult:
    return CRITERIA[index]()


def run_all(workers: int | None = None) -> List[CriterionResult]:
    """Run every criterion; results come back in criterion order."""
    workers = worker_count() if workers is None else workers
    if workers <= 1:
        return [fn() for fn in CRITERIA]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run, range(len(CRITERIA))))
