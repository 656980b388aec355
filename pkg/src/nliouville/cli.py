"""Command-line entry point: ``nliouville <command> [options]``.

Exit codes: 0 success, 1 a numeric check failed, 2 usage error.  Settings
are resolved as defaults, then an optional key=value config file, then
explicit flags.  ``NLIOUVILLE_WORKERS`` sets the worker-pool size for
``verify-all``.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, fields, replace
from typing import List, Optional

import numpy as np

from . import acceptance
from .core import DEFAULT_POINTS, DEFAULT_R_MAX, DEFAULT_R_MIN, log_grid, make_problem
from .errors import LiouvilleError
from .holo2d import holomorphic_invariant, origin_gradient_decay
from .pfunction import (
    constancy_certificate,
    e_tensor,
    lambda_from_p0,
    profile_from_planar,
    profile_from_radial,
)
from .quantization import mass, mass_raw
from .report import FORMATS, CheckRow, bound, check, emit_checks, emit_profile
from .solutions import PlanarSolution, radial_residual, radial_solution, richardson_residual
from .spectrum import alpha_k, closed_form_eigenvalue, degeneracy_catalog, morse_count, sl_solve_lambda
from .spectrum.closed_form import kernel_dimension

COMMANDS = ("eval", "residual", "mass", "pfun", "spectrum", "morse", "holo", "verify-all")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int = 2
    alpha: float = 0.0
    lam: float = 1.0
    c_re: float = 0.0
    c_im: float = 0.0
    k_max: int = 5
    r_min: float = DEFAULT_R_MIN
    r_max: float = DEFAULT_R_MAX
    points: int = DEFAULT_POINTS
    format: str = "table"
    output: Optional[str] = None

    @property
    def c(self) -> complex:
        return complex(self.c_re, self.c_im)


# config-file keys and flag destinations share these names
_KEYS = {f.name: f.type for f in fields(RunConfig) if f.name != "command"}
_ALIASES = {"lambda": "lam", "k-max": "k_max", "c-re": "c_re", "c-im": "c_im",
            "r-min": "r_min", "r-max": "r_max"}
_CASTS = {"n": int, "k_max": int, "points": int, "alpha": float, "lam": float, "c_re": float,
          "c_im": float, "r_min": float, "r_max": float, "format": str, "output": str}


def read_config(path: str) -> dict:
    """Parse ``key = value`` lines; '#' starts a comment."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = _ALIASES.get(key, key.replace("-", "_"))
        if key not in _CASTS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = _CASTS[key](value)
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nliouville", description="Numerical checks for the weighted N-Laplacian Liouville equation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, dest="n", default=None)
        p.add_argument("--alpha", type=float, default=None)
        p.add_argument("--lambda", type=float, dest="lam", default=None)
        p.add_argument("--c-re", type=float, dest="c_re", default=None)
        p.add_argument("--c-im", type=float, dest="c_im", default=None)
        p.add_argument("--k-max", type=int, dest="k_max", default=None)
        p.add_argument("--r-min", type=float, dest="r_min", default=None)
        p.add_argument("--r-max", type=float, dest="r_max", default=None)
        p.add_argument("--points", type=int, default=None)
        p.add_argument("--format", choices=FORMATS, default=None)
        p.add_argument("--output", default=None, help="output path (default: stdout)")
        p.add_argument("--config", default=None, help="key=value file overriding defaults")
    return parser


def parse_config(argv: List[str]) -> RunConfig:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.command)
    if args.config:
        cfg = replace(cfg, **read_config(args.config))
    explicit = {k: v for k, v in vars(args).items() if k in _KEYS and v is not None}
    cfg = replace(cfg, **explicit)
    if cfg.format not in FORMATS:
        raise UsageError(f"unknown format {cfg.format!r}")
    if cfg.c != 0 and cfg.n != 2:
        raise UsageError("a shift c is only accepted when n = 2")
    if cfg.command == "holo" and cfg.n != 2:
        raise UsageError("holo is a two-dimensional check; use --n 2")
    make_problem(cfg.n, cfg.alpha)
    return cfg


def _planar(cfg: RunConfig) -> PlanarSolution:
    # planar lambda squared is the radial lambda
    return PlanarSolution(math.sqrt(cfg.lam), cfg.c, cfg.alpha)


def _grid(cfg: RunConfig):
    return log_grid(cfg.r_min, cfg.r_max, cfg.points).points


def cmd_eval(cfg: RunConfig):
    r = _grid(cfg)
    if cfg.c != 0:
        sol = _planar(cfg)
        prof = profile_from_planar(sol)
        u, grad, _ = sol.derivatives(r.astype(complex))
        cols = {"x": r, "u": u, "grad_norm": np.linalg.norm(grad, axis=-1),
                "P": prof.p(np.stack([r, np.zeros_like(r)], axis=-1))}
    else:
        sol = radial_solution(cfg.n, cfg.alpha, cfg.lam)
        prof = profile_from_radial(sol)
        u, u1, u2 = sol.profile(r)
        x = np.zeros((r.size, cfg.n))
        x[:, 0] = r
        cols = {"r": r, "u": u, "du_dr": u1, "d2u_dr2": u2, "P": prof.p(x)}
    emit_profile(cols, cfg.output or sys.stdout, cfg.format)
    return []


def cmd_residual(cfg: RunConfig) -> List[CheckRow]:
    sol = radial_solution(cfg.n, cfg.alpha, cfg.lam)
    rows = [bound("radial N-Laplacian rel. residual (grid max)",
                  float(np.max(radial_residual(sol, _grid(cfg)))), 1e-9, "radial family")]
    if cfg.n == 2:
        planar = _planar(cfg)
        worst = max(richardson_residual(planar, z).value for z in (1.0, 0.5 + 0.5j, -0.3 + 1.2j, 2j))
        rows.append(bound("planar Richardson residual (4 probes)", worst, 1e-8, "planar family"))
    return rows


def cmd_mass(cfg: RunConfig) -> List[CheckRow]:
    sol = radial_solution(cfg.n, cfg.alpha, cfg.lam)
    m = mass(sol)
    raw = mass_raw(sol)
    return [
        check("mass, substituted quadrature", m.numeric, m.exact, 1e-8, "quantization", relative=True),
        check("mass, raw-variable oracle", raw.numeric, raw.exact, 1e-8, "quantization", relative=True),
    ]


def cmd_pfun(cfg: RunConfig) -> List[CheckRow]:
    if cfg.c != 0:
        sol = _planar(cfg)
        prof = profile_from_planar(sol)
        rng = np.random.default_rng(0)
        samples = np.exp(rng.uniform(math.log(0.1), math.log(10), 100)) * np.exp(2j * np.pi * rng.uniform(size=100))
        p0, dev = constancy_certificate(prof, samples)
        lam_back = lambda_from_p0(prof.problem, p0) ** 2
        probe = np.array([0.7, 0.4])
    else:
        prof = profile_from_radial(radial_solution(cfg.n, cfg.alpha, cfg.lam))
        p0, dev = constancy_certificate(prof, log_grid(cfg.r_min, cfg.r_max, cfg.points))
        lam_back = lambda_from_p0(prof.problem, p0, "radial")
        probe = np.full(cfg.n, 1 / math.sqrt(cfg.n))
    et = e_tensor(prof, probe)
    return [
        CheckRow("P0 (mean of P)", p0, p0, 0.0, True, "P-function constancy"),
        bound("max |P - P0| / P0", dev / p0, 1e-9, "P-function constancy"),
        check("lambda from P0", lam_back, cfg.lam, 1e-8, "lambda-P0 dictionary", relative=True),
        bound("||E||_F at probe", et.frob_norm_e, 1e-6, "E = 0"),
    ]


def cmd_spectrum(cfg: RunConfig):
    if cfg.k_max < 1:
        raise UsageError("--k-max must be at least 1")
    cat = degeneracy_catalog(cfg.n, alpha_k(cfg.n, cfg.k_max), cfg.k_max)
    cols = {
        "k": cat.ks,
        "alpha_k": cat.alpha_k,
        "multiplicity": cat.mult,
        "kernel_dim": cat.kernel_dim,
        "lambda_k": [closed_form_eigenvalue(cfg.n, cfg.alpha, k)[2] for k in cat.ks],
        "lambda_k_shooting": [sl_solve_lambda(cfg.n, cfg.alpha, k) for k in cat.ks],
    }
    emit_profile(cols, cfg.output or sys.stdout, cfg.format)
    return []


def cmd_morse(cfg: RunConfig):
    s, total = morse_count(cfg.n, cfg.alpha)
    cols = {"n": [cfg.n], "alpha": [cfg.alpha], "s_threshold": [s], "morse_total": [total],
            "kernel_dim": [kernel_dimension(cfg.n, cfg.alpha)]}
    emit_profile(cols, cfg.output or sys.stdout, cfg.format)
    return []


def cmd_holo(cfg: RunConfig) -> List[CheckRow]:
    sol = _planar(cfg)
    probes = [0.7 + 0.2j, 1.0, -0.5 + 1.5j, 3j, 2.5 - 1.0j]
    worst = max(abs(holomorphic_invariant(sol, z).invariant_value) for z in probes)
    worst_fd = max(abs(holomorphic_invariant(sol, z, method="finite-difference").invariant_value) for z in probes)
    rows = [
        bound("holomorphic invariant, analytic (5 probes)", worst, 1e-7, "holomorphic invariant"),
        bound("holomorphic invariant, finite differences (5 probes)", worst_fd, 1e-7, "holomorphic invariant"),
    ]
    if cfg.alpha >= 0:
        exponent = origin_gradient_decay(sol, np.logspace(-3, -1, 20))
        rows.append(CheckRow("gradient decay exponent at the origin", exponent, cfg.alpha - 0.05, 0.0,
                             exponent >= cfg.alpha - 0.05, "gradient decay"))
    return rows


def cmd_verify_all(cfg: RunConfig) -> List[CheckRow]:
    rows = []
    for res in acceptance.run_all():
        print(res.summary(), file=sys.stderr)
        rows.extend(replace(r, name=f"[{res.number}] {r.name}") for r in res.rows)
    return rows


HANDLERS = {
    "eval": cmd_eval,
    "residual": cmd_residual,
    "mass": cmd_mass,
    "pfun": cmd_pfun,
    "spectrum": cmd_spectrum,
    "morse": cmd_morse,
    "holo": cmd_holo,
    "verify-all": cmd_verify_all,
}


def run(cfg: RunConfig) -> int:
    try:
        rows = HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"nliouville: error: {exc}", file=sys.stderr)
        return 2
    except LiouvilleError as exc:
        if isinstance(exc, ValueError):
            print(f"nliouville: error: {exc}", file=sys.stderr)
            return 2
        raise
    if rows:
        emit_checks(rows, cfg.output or sys.stdout, cfg.format)
        failed = [r for r in rows if not r.passed]
        for r in failed:
            print(f"nliouville: check failed: {r.name} ({r.anchor})", file=sys.stderr)
        return 1 if failed else 0
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except (UsageError, LiouvilleError) as exc:
        print(f"nliouville: error: {exc}", file=sys.stderr)
        return 2
    try:
        return run(cfg)
    except OSError as exc:
        print(f"nliouville: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
