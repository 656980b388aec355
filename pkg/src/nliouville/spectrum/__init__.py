"""Linearized operator at the radial solution: modes, eigenvalues, kernel."""

from .closed_form import (
    SpectralReport,
    alpha_k,
    closed_form_eigenvalue,
    degeneracy_catalog,
    morse_count,
    multiplicity,
    s_threshold,
)
from .fdoracle import fd_eigenvalue
from .kernel import KernelFunction, kernel_residual, kernel_residual_fd
from .modes import ModeODE, SLProblem, bar_eta0, bar_eta1, indicial_root, mode_ode_residual
from .shooting import sl_solve_beta, sl_solve_lambda

__all__ = [
    "KernelFunction",
    "ModeODE",
    "SLProblem",
    "SpectralReport",
    "alpha_k",
    "bar_eta0",
    "bar_eta1",
    "closed_form_eigenvalue",
    "degeneracy_catalog",
    "fd_eigenvalue",
    "indicial_root",
    "kernel_residual",
    "kernel_residual_fd",
    "mode_ode_residual",
    "morse_count",
    "multiplicity",
    "s_threshold",
    "sl_solve_beta",
    "sl_solve_lambda",
]
