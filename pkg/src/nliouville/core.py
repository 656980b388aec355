"""Problem parameters, derived constants and radial grids."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

DEFAULT_R_MIN = 1e-4
DEFAULT_R_MAX = 1e4
DEFAULT_POINTS = 400


def c_n(n: int) -> float:
    """Normalising constant N (N^2/(N-1))^(N-1) of the radial profile."""
    return n * (n * n / (n - 1)) ** (n - 1)


def unit_ball_volume(n: int) -> float:
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


@dataclass(frozen=True)
class Constants:
    c_n: float
    omega_n: float
    sphere_area: float
    slope: float


@dataclass(frozen=True)
class Problem:
    """Dimension ``n >= 2`` and weight exponent ``alpha > -1``."""

    n: int
    alpha: float
    constants: Constants = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 2:
            raise DomainError(f"dimension must be an integer >= 2, got {self.n!r}")
        if not math.isfinite(self.alpha) or self.alpha <= -1:
            raise DomainError(f"alpha must exceed -1, got {self.alpha!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "alpha", float(self.alpha))
        omega = unit_ball_volume(self.n)
        object.__setattr__(
            self,
            "constants",
            Constants(
                c_n=c_n(self.n),
                omega_n=omega,
                sphere_area=self.n * omega,
                slope=self.n**2 * (self.alpha + 1) / (self.n - 1),
            ),
        )

    @property
    def exponent(self) -> float:
        """Power N(alpha+1)/(N-1) of |x| inside the radial profile."""
        return self.n * (self.alpha + 1) / (self.n - 1)

    @property
    def total_mass(self) -> float:
        """Quantized weighted mass c_N omega_N (alpha+1)^(N-1)."""
        c = self.constants
        return c.c_n * c.omega_n * (self.alpha + 1) ** (self.n - 1)


def make_problem(n: int, alpha: float) -> Problem:
    return Problem(n, alpha)


@dataclass(frozen=True)
class RadialGrid:
    points: np.ndarray
    scale: str

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 1 or pts.size < 2:
            raise DomainError("a grid needs at least two radii")
        if np.any(pts <= 0) or np.any(np.diff(pts) <= 0):
            raise DomainError("grid radii must be positive and strictly increasing")
        if self.scale not in ("linear", "logarithmic"):
            raise DomainError(f"unknown grid scale {self.scale!r}")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.size

    def __iter__(self):
        return iter(self.points)


def _check_range(r_min, r_max, count):
    if not (0 < r_min < r_max) or not math.isfinite(r_max):
        raise DomainError(f"need 0 < r_min < r_max, got ({r_min}, {r_max})")
    if int(count) != count or count < 2:
        raise DomainError(f"need an integer count >= 2, got {count}")


def log_grid(r_min: float = DEFAULT_R_MIN, r_max: float = DEFAULT_R_MAX,
             count: int = DEFAULT_POINTS) -> RadialGrid:
    _check_range(r_min, r_max, count)
    pts = np.logspace(math.log10(r_min), math.log10(r_max), int(count))
    # pin the endpoints exactly; logspace can be off by an ulp
    pts[0], pts[-1] = r_min, r_max
    return RadialGrid(pts, "logarithmic")


def linear_grid(r_min: float, r_max: float, count: int) -> RadialGrid:
    _check_range(r_min, r_max, count)
    return RadialGrid(np.linspace(r_min, r_max, int(count)), "linear")
