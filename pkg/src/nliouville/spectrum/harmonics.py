"""Bases of homogeneous harmonic polynomials in two and three variables.

Polynomials are stored as dense power-basis coefficient arrays and
evaluated with numpy.polynomial, so gradients and Hessians are exact.

N = 2 uses Re z^k, Im z^k.  For N = 3 each basis element is the unique
harmonic polynomial sum_j z^j p_j(x, y) whose z-degree <= 1 part is a single
monomial x^a y^b or x^a y^b z.  The higher p_j follow from
p_{j+2} = -Lap_xy p_j / ((j+2)(j+1)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from ..errors import DomainError


@dataclass(frozen=True)
class HarmonicPolynomial:
    coeffs: np.ndarray  # coeffs[i, j(, l)] multiplies x^i y^j (z^l)
    degree: int
    label: str

    @property
    def n(self) -> int:
        return self.coeffs.ndim

    def _eval(self, c, x):
        x = np.asarray(x, dtype=float)
        if self.n == 2:
            return npoly.polyval2d(x[..., 0], x[..., 1], c)
        return npoly.polyval3d(x[..., 0], x[..., 1], x[..., 2], c)

    def value(self, x):
        return self._eval(self.coeffs, x)

    def gradient(self, x):
        return np.stack([self._eval(npoly.polyder(self.coeffs, axis=i), x)
                         for i in range(self.n)], axis=-1)

    def hessian(self, x):
        rows = []
        for i in range(self.n):
            di = npoly.polyder(self.coeffs, axis=i)
            rows.append(np.stack([self._eval(npoly.polyder(di, axis=j), x)
                                  for j in range(self.n)], axis=-1))
        return np.stack(rows, axis=-2)


def _planar_basis(k: int):
    if k == 0:
        return [HarmonicPolynomial(np.ones((1, 1)), 0, "1")]
    re = np.zeros((k + 1, k + 1))
    im = np.zeros((k + 1, k + 1))
    for j in range(k + 1):
        unit = 1j**j
        re[k - j, j] = math.comb(k, j) * unit.real
        im[k - j, j] = math.comb(k, j) * unit.imag
    return [HarmonicPolynomial(re, k, f"Re z^{k}"), HarmonicPolynomial(im, k, f"Im z^{k}")]


def _lap_xy(p):
    out = np.zeros_like(p)
    dxx = npoly.polyder(p, 2, axis=0)
    dyy = npoly.polyder(p, 2, axis=1)
    out[: dxx.shape[0], : dxx.shape[1]] += dxx
    out[: dyy.shape[0], : dyy.shape[1]] += dyy
    return out


def _spatial_basis(k: int):
    basis = []
    for zpow in (0, 1):
        d = k - zpow
        if d < 0:
            continue
        for a in range(d, -1, -1):
            b = d - a
            c = np.zeros((k + 1, k + 1, k + 1))
            layer = np.zeros((k + 1, k + 1))
            layer[a, b] = 1.0
            j = zpow
            while j <= k and np.any(layer):
                c[:, :, j] = layer
                layer = -_lap_xy(layer) / ((j + 2) * (j + 1))
                j += 2
            label = f"x^{a} y^{b}" + (" z" if zpow else "")
            basis.append(HarmonicPolynomial(c, k, label))
    return basis


def harmonic_basis(n: int, k: int):
    """Basis of degree-k homogeneous harmonic polynomials in ``n`` variables."""
    if k < 0:
        raise DomainError("degree must be non-negative")
    if n == 2:
        return _planar_basis(k)
    if n == 3:
        return _spatial_basis(k)
    raise DomainError("explicit harmonic bases are only provided for N = 2 and N = 3")
